import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

import syzmirror

DATA = Path(os.environ.get("SYZMIRROR_TEST_DATA", Path(__file__).resolve().parents[2] / "tests" / "data"))


def load(name):
    return json.loads((DATA / name).read_text())


def coeffs(series):
    return {tuple(t["e"]): Fraction(t["c"]) for t in series}


def test_command_names():
    assert "brane-mirror" in syzmirror.command_names()
    assert len(syzmirror.command_names()) == 8


def test_local_p2_fiber_series():
    out = syzmirror.run("fiber-invariants", load("local_p2.json"), order=5)
    c = coeffs(out["one_plus_delta"][0])
    assert [c.get((k,), 0) for k in range(6)] == [1, -2, 5, -32, 286, -3038]


def test_conifold_invariants():
    out = syzmirror.run("disc-invariants", load("conifold.json"))
    assert out["integrality"]["pass"]
    nonzero = {tuple(r["beta"]): r["N"] for r in out["invariants"] if r["N"] != 0}
    assert nonzero == {(1, 0): 1, (0, 1): 1}


def test_brane_mirror_c3():
    out = syzmirror.run("brane-mirror", load("c3.json"), order=4)
    assert out["residual_zero"]
    assert coeffs(out["z2"]) == {(0,): 1, (1,): -1}


def test_errors_raise():
    with pytest.raises(syzmirror.CommandError) as info:
        syzmirror.run("validate", "{not json")
    assert info.value.exit_code == 4
    record = syzmirror.run("validate", "{not json", check=False)
    assert record["error"]["kind"] == "parse"
