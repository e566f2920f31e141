"""Session caches for the expensive oracles, shared between test modules."""

from functools import lru_cache

from hstverify.bessel_period import BesselPeriodResult, compute_B0_alpha
from hstverify.inner_product import InResult, compute_In

ORACLE_PREC = 64


@lru_cache(maxsize=None)
def b0_result(n: int, alpha: int) -> BesselPeriodResult:
    return compute_B0_alpha(n, alpha, prec=ORACLE_PREC)


@lru_cache(maxsize=None)
def in_result(n: int, prec: int = 128, method: str = "semianalytic") -> InResult:
    return compute_In(n, prec, method=method)

# criterion number -> one-line outcome, printed at the end of the session
ACCEPTANCE: dict = {}
