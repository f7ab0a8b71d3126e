"""The sixteen acceptance criteria, one test each.

Criteria 1 to 15 read the rows of a single ``run_verify`` pass; criterion 16
also runs the installed command line twice and compares the bytes.  Each test
records a ``criterion N: PASS|FAIL`` line that the terminal summary prints.
"""
import shutil
import subprocess
import sys

import pytest

from gfreg import run_verify

CRITERIA = {
    1: ("frame validity", ("frame.moments", "frame.lp_identity")),
    2: ("reconstruction", ("frame.reconstruction",)),
    3: ("delta calibration", ("calibration.delta",)),
    4: ("classification", ("calibration.class",)),
    5: ("convexity", ("calibration.convexity",)),
    6: ("scaling shift", ("calibration.shift",)),
    7: ("zygmund exponents", ("zygmund.exponent",)),
    8: ("membership agreement", ("zygmund.membership",)),
    9: ("hoermann regimes", ("zygmund.hoermann",)),
    10: ("product estimate", ("zygmund.product",)),
    11: ("smoothness dichotomy", ("tauberian.smooth",)),
    12: ("fourier decay", ("tauberian.fourier",)),
    13: ("exponent calculus", ("tauberian.exponent_select",)),
    14: ("quasiasymptotics", ("tauberian.quasi",)),
    15: ("counterexample net", ("signals.counterexample",)),
    16: ("determinism", ("reports.determinism",)),
}

MIN_ROWS = {1: 3, 3: 9, 4: 4, 6: 8, 7: 4, 9: 4, 10: 3, 11: 7, 12: 4, 14: 3, 15: 2}


@pytest.fixture(scope="module")
def verify_rows():
    return run_verify()


def _report(request, number, passed, detail):
    name = CRITERIA[number][0]
    line = f"criterion {number:2d} ({name}): {'PASS' if passed else 'FAIL'}  {detail}"
    print(line)
    request.config.stash.setdefault(ACCEPTANCE_KEY, []).append((number, line))


ACCEPTANCE_KEY = pytest.StashKey[list]()


def _rows_for(rows, number):
    prefixes = CRITERIA[number][1]
    return [r for r in rows if r.id.startswith(prefixes)]


@pytest.mark.parametrize("number", range(1, 16))
def test_criterion(request, verify_rows, number):
    rows = _rows_for(verify_rows, number)
    failed = [r for r in rows if not r.passed]
    enough = len(rows) >= MIN_ROWS.get(number, 1)
    passed = enough and not failed
    detail = f"{len(rows) - len(failed)}/{len(rows)} rows"
    if failed:
        detail += "; failing: " + ", ".join(f"{r.id} measured {r.cells()[3]} vs {r.cells()[4]}" for r in failed)
    _report(request, number, passed, detail)
    assert enough, f"criterion {number} produced only {len(rows)} rows"
    assert not failed, detail


def _gfreg_command():
    exe = shutil.which("gfreg")
    return [exe] if exe else [sys.executable, "-m", "gfreg.cli"]


def test_criterion_16_determinism(request, verify_rows, tmp_path):
    in_process = _rows_for(verify_rows, 16)
    outputs = []
    for i in range(2):
        run = subprocess.run([*_gfreg_command(), "verify"], cwd=tmp_path, capture_output=True, timeout=600)
        outputs.append((run.returncode, run.stdout))
    same = outputs[0] == outputs[1]
    passed = same and outputs[0][0] == 0 and all(r.passed for r in in_process) and bool(in_process)
    detail = (f"two CLI runs {'byte-identical' if same else 'differ'} "
              f"({len(outputs[0][1])} bytes, exit {outputs[0][0]}); analyze-twice row "
              f"{'ok' if all(r.passed for r in in_process) else 'failed'}")
    _report(request, 16, passed, detail)
    assert same
    assert outputs[0][0] == 0
    assert in_process and all(r.passed for r in in_process)
