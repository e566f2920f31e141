import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from hstverify.cli import main
from hstverify.report import FIELD_NAMES, from_json, load_schema
from hstverify.tasks import build_tasks, run_tasks

CONTEXTS = Path(__file__).resolve().parent.parent / "scripts" / "contexts"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_comb_full_grid(capsys):
    code, out, _ = run(capsys, "verify", "comb", "--max", "30", "--format", "json")
    records = json.loads(out)
    assert code == 0 and len(records) == 961
    jsonschema.validate(records, load_schema())
    assert [r["task_id"] for r in records] == sorted(r["task_id"] for r in records)


def test_odd_n_is_a_usage_error(capsys):
    code, out, err = run(capsys, "verify", "in", "--n", "1")
    assert code == 2 and out == "" and "n must be even" in err


@pytest.mark.parametrize("argv", [["frobnicate"], ["verify", "nothing"], ["verify", "in"], []])
def test_bad_invocations_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hstverify", "verify", "in", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "n must be even" in proc.stderr


def test_csv_columns(capsys):
    code, out, _ = run(capsys, "verify", "hypgeom", "--format", "csv", "--prec", "96")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == FIELD_NAMES
    assert FIELD_NAMES == ["task_id", "paper_anchor", "computed", "expected", "abs_error", "rel_error",
                           "precision_bits", "elapsed_ms", "status", "tolerance"]
    assert all(len(r) == len(FIELD_NAMES) for r in rows)


def test_text_format_lists_tolerances(capsys):
    code, out, _ = run(capsys, "verify", "pluriharmonic", "--n", "2")
    assert code == 0 and "pass" in out and "tolerance" in out.lower()


def test_results_independent_of_worker_count():
    specs = build_tasks("pairb0", n=2, prec=96)
    serial = [r.without_timing() for r in run_tasks(specs, workers=1)]
    parallel = [r.without_timing() for r in run_tasks(specs, workers=3)]
    assert serial == parallel


def test_report_round_trip(capsys, tmp_path):
    src = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "assembly", "--format", "json", "--out", str(src))
    assert code == 0
    code, out, _ = run(capsys, "report", "--from", str(src), "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["task_id"] for r in rows] == [r.task_id for r in from_json(src.read_text())]


def test_report_from_missing_file(capsys, tmp_path):
    assert run(capsys, "report", "--from", str(tmp_path / "absent.json"))[0] == 2


def test_failing_suite_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "printed-forms", "--format", "json", "--prec", "64")
    records = json.loads(out)
    assert code == 1 and records and all(r["status"] == "fail" for r in records)


@pytest.mark.parametrize("name", ["n0_N5_D3.json", "n0_N5_D3_vanishing.json"])
@pytest.mark.parametrize("kind", ["inner-product", "bessel"])
def test_assemble_sample_contexts(capsys, name, kind):
    code, out, _ = run(capsys, "assemble", kind, "--ctx", str(CONTEXTS / name), "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), load_schema())


def test_vanishing_context_gives_zero(capsys):
    _, out, _ = run(capsys, "assemble", "inner-product", "--ctx", str(CONTEXTS / "n0_N5_D3_vanishing.json"),
                    "--format", "json")
    classical = next(r for r in json.loads(out) if r["task_id"].endswith("/classical"))
    assert classical["computed"] == "0"


def test_assemble_n2_context_reports_chain_failure(capsys):
    code, out, _ = run(capsys, "assemble", "inner-product", "--ctx", str(CONTEXTS / "n2_N35_D3.json"),
                       "--format", "json")
    failed = [r["task_id"] for r in json.loads(out) if r["status"] == "fail"]
    assert code == 1 and failed == ["assemble/inner-product/classical-chain"]


def test_assemble_bad_context(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 0, "N": 3, "Delta_F": 3, "splitting": {"3": "split"}}))
    code, _, err = run(capsys, "assemble", "inner-product", "--ctx", str(bad))
    assert code == 2 and "error:" in err
    bad.write_text("{not json")
    assert run(capsys, "assemble", "bessel", "--ctx", str(bad))[0] == 2
