import json

import numpy as np
import pytest

from starloop.cli import report as rpt
from starloop.cli.config import DEFAULT_TOLERANCES, load_config
from starloop.cli.main import main
from starloop.errors import ConfigError


def test_config_precedence(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"nr": 32, "seed": 5, "tolerances": {"cocycle": 1e-5}}))
    cfg = load_config(str(p), {"seed": 9, "nt": None})
    assert cfg.nr == 32 and cfg.seed == 9 and cfg.nt == 64
    assert cfg.tol("cocycle") == 1e-5 and cfg.tol("moyal") == DEFAULT_TOLERANCES["moyal"]


@pytest.mark.parametrize("bad", [
    {"nr": 0}, {"s0": 1.5}, {"order_k": 7}, {"modes": [11, -11]}, {"spin": 0.3},
    {"cutoffs": [3, 1]}, {"tolerances": {"nope": 1.0}}, {"unknown": 1},
])
def test_config_validation(tmp_path, bad):
    p = tmp_path / "c.json"
    p.write_text(json.dumps(bad))
    with pytest.raises(ConfigError):
        load_config(str(p))


def test_report_round_trip():
    r = {"a": 0.1, "z": 1 + 2j, "n": float("nan"), "v": [np.float64(1 / 3), np.int64(2)], "s": None}
    text = rpt.dumps(r)
    back = rpt.loads(text)
    assert back["z"] == 1 + 2j and back["a"] == 0.1 and back["v"][0] == 1 / 3
    assert "0.10000000000000001" in text


def test_check_record():
    c = rpt.check("x", 1.0, 1.0, 1e-3, 1e-2, "closed_form")
    assert c["passed"]
    assert not rpt.check("x", 1.0, 1.0, None, 1e-2, "closed_form")["passed"]
    f = rpt.failed_check("y", ValueError("boom"))
    assert not f["passed"] and "boom" in f["note"]


def test_fuzzy_command(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["fuzzy", "--out", str(out), "--nr", "24", "--ntheta", "32"])
    assert code == 0
    r = rpt.loads(out.read_text())
    assert r["schema"] == rpt.SCHEMA and r["passed"] and r["command"] == "fuzzy"
    assert all(c["suite"] == "fuzzy" for c in r["checks"])
    assert "PASS" in capsys.readouterr().err


def test_config_error_exit_code(tmp_path):
    p = tmp_path / "c.json"
    p.write_text("{not json")
    assert main(["fuzzy", "--config", str(p)]) == 2


def test_failing_check_exit_code(tmp_path):
    # a tolerance of 1e-300 cannot be met by any floating-point residual
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"tolerances": {"fuzzy_cocycle": 1e-300}}))
    assert main(["fuzzy", "--config", str(p)]) == 1
