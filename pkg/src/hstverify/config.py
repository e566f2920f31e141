"""Run configuration: working precision and the per-task tolerance table."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict

PREC_ENV_VAR = "HSTVERIFY_PREC"


def default_precision() -> int:
    """Default working precision in bits; ``HSTVERIFY_PREC`` overrides 128."""
    raw = os.environ.get(PREC_ENV_VAR)
    if raw is None or raw.strip() == "":
        return 128
    value = int(raw)
    if value < 53:
        raise ValueError(f"{PREC_ENV_VAR} must be at least 53, got {value}")
    return value


# relative tolerances; 0 means exact equality
TOLERANCES: Dict[str, float] = {
    "appendix-i0": 1e-20,
    "in": 1e-15,
    "a-integral": 1e-20,
    "pluriharmonic": 0.0,
    "pairb0-diagonal": 1e-15,
    "pairb0-offdiagonal": 1e-20,
    "bessel-period-oracle": 1e-10,
    "bessel-period-exact": 0.0,
    "comb": 0.0,
    "theorem-polynomial": 0.0,
    "mellin-oracle": 1e-15,
    "hypgeom": 1e-15,
    "z-infty": 0.0,
    "assembly": 0.0,
}


@dataclass(frozen=True)
class InConfig:
    """Settings for the inner-product integral.

    ``cutoff_bits`` sets the lower end ``2^-cutoff_bits`` of the a-integral;
    ``None`` picks ``prec // 2 + 16``.
    """

    n: int = 0
    prec: int = field(default_factory=default_precision)
    cutoff_bits: int | None = None
    guard_bits: int = 40

    def cutoff(self) -> int:
        return self.cutoff_bits if self.cutoff_bits is not None else self.prec // 2 + 16


@dataclass(frozen=True)
class OracleConfig:
    """Precision used by quadrature oracles (lower than the closed forms)."""

    prec: int = 128
    theta_nodes: int = 0  # 0 means choose from n
