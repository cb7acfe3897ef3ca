import json
import subprocess
import sys

import pytest

from dkron import config
from dkron.cli import main


@pytest.fixture(autouse=True)
def _restore_settings():
    saved = config.settings
    yield
    config.use(saved)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_kronecker_check_rank_one(capsys):
    code, out = run(capsys, "kronecker-check", "--q", "3", "--r", "1")
    data = json.loads(out.out)
    assert code == 0 and data["verdict"] == "PASS"
    assert data["lhs"] == data["rhs"] == {"rat": "0/1", "logq": "-3/2"}


def test_eis_value_at_zero(capsys):
    code, out = run(capsys, "eis", "--q", "3", "--r", "2", "--z", "zeta")
    data = json.loads(out.out)
    assert code == 0
    assert data["value0"] == {"rat": "-1/1", "logq": "0/1"}
    assert data["deriv0"]["logq"] == "-9/4"


def test_global_flags_before_subcommand(capsys):
    code, out = run(capsys, "--q", "5", "eis", "--r", "1")
    assert code == 0 and json.loads(out.out)["deriv0"]["logq"] == "-5/4"


def test_approx_is_labelled(capsys):
    code, out = run(capsys, "eis", "--q", "3", "--r", "1", "--approx")
    d = json.loads(out.out)["deriv0"]
    assert d["exact"]["logq"] == "-3/2"
    assert abs(d["approx (non-authoritative)"] + 1.5 * 1.0986122886681098) < 1e-9


def test_tsv_output(capsys):
    code, out = run(capsys, "taguchi", "--q", "3", "--D", "T", "--format", "tsv")
    lines = dict(l.split("\t") for l in out.out.strip().splitlines())
    assert code == 0 and lines["path_a.logq"] == "-1/1" and lines["ok"] == "True"


def test_order_queries(capsys):
    code, out = run(capsys, "order", "--q", "3", "--D", "T^3+T+2", "classgroup")
    assert code == 0 and json.loads(out.out)["class_group"]["h"] == 4
    code, out = run(capsys, "order", "--q", "3", "--D", "T", "zeta")
    assert json.loads(out.out)["zeta0"] == "-1/2"


def test_gamma_and_siegel(capsys):
    code, out = run(capsys, "gamma", "--q", "3", "--D", "T^3+T+2")
    assert code == 0 and json.loads(out.out)["gamma"]["logq"] == "-1/2"
    code, out = run(capsys, "siegel", "--q", "3", "--r", "2", "--D", "(1/T,0):1,(0,1/T):-1")
    assert code == 0 and json.loads(out.out)["report"]["eta"] == "0"


def test_mirabolic_and_building(capsys):
    code, out = run(capsys, "mirabolic", "--q", "3", "--vertex", "1,0")
    assert code == 0 and json.loads(out.out)["ok"]
    code, out = run(capsys, "building-map", "--q", "3", "--z", "zeta*T^(1/3)")
    weights = [v["weight"] for v in json.loads(out.out)["building_point"]]
    assert sorted(weights) == ["1/3", "2/3"]


def test_jacobi(capsys):
    code, out = run(capsys, "jacobi", "--q", "3", "--z", "zeta", "--w", "(1/T,0)")
    assert code == 0 and json.loads(out.out)["ok"]


def test_computation_error_exit_code(capsys):
    code, out = run(capsys, "jacobi", "--q", "3", "--z", "zeta", "--w", "(0,0)")
    assert code == 1 and json.loads(out.out)["error"] == "OnLattice"
    code, out = run(capsys, "order", "--q", "3", "--D", "T^2", "zeta")
    assert code == 1 and json.loads(out.out)["error"] == "NotSquarefree"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 2
    assert main(["eis", "--q", "4"]) == 2
    assert main(["eis", "--q", "3", "--precision", "5"]) == 2


def test_config_file_and_env(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"q": 5, "precision": 80}))
    code, out = run(capsys, "eis", "--r", "1", "--config", str(cfg))
    assert json.loads(out.out)["deriv0"]["logq"] == "-5/4"
    assert config.settings.precision == 80
    monkeypatch.setenv("DKRON_PRECISION", "70")
    run(capsys, "eis", "--r", "1", "--config", str(cfg))
    assert config.settings.precision == 70
    run(capsys, "eis", "--r", "1", "--config", str(cfg), "--precision", "90")
    assert config.settings.precision == 90
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": 1}))
    assert main(["eis", "--config", str(bad)]) == 2


def test_suite_subset(capsys):
    code, out = run(capsys, "suite", "--q", "3", "--only", "3,13")
    table = json.loads(out.out)["table"]
    assert code == 0 and [r["result"] for r in table] == ["PASS", "PASS"]


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "dkron.cli", "kronecker-check", "--q", "3", "--r", "1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and '"verdict": "PASS"' in out.stdout


def test_deterministic_output(capsys):
    _, a = run(capsys, "eis", "--q", "3", "--r", "2", "--z", "zeta*T^(1/2)", "--taylor", "2")
    _, b = run(capsys, "eis", "--q", "3", "--r", "2", "--z", "zeta*T^(1/2)", "--taylor", "2")
    assert a.out == b.out
