import json
import subprocess
import sys

import pytest

from tba import Model, Operator, consequence, valid
from tba.cli import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, main
from tba.serialization import model_from_json, model_to_json, save_model


@pytest.fixture
def indiscrete(tmp_path):
    path = tmp_path / "indiscrete.json"
    save_model(Model(2, Operator(2, [0, 3, 3, 3]), "closure", {"p": [0]}), str(path))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_and_valid(capsys, indiscrete):
    code, out, _ = run(capsys, "eval", "-m", indiscrete, "-f", "p & negC p")
    assert code == EXIT_OK and out.strip() == "[0]"
    code, out, _ = run(capsys, "eval", "-m", indiscrete, "-f", "cons p", "--format", "json")
    assert json.loads(out) == {"formula": "cons p", "value": [1]}
    code, _, _ = run(capsys, "valid", "-m", indiscrete, "-f", "p | -p")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "valid", "-m", indiscrete, "-f", "p")
    assert code == EXIT_FAIL and out.startswith("not valid")


def test_consequence(capsys, indiscrete):
    assert run(capsys, "consequence", "-m", indiscrete, "-s", "p, negC p |- F")[0] == EXIT_FAIL
    assert run(capsys, "consequence", "-m", indiscrete, "-s", "cons p, p, negC p |- F")[0] == EXIT_OK


def test_search_closed_loop(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "-s", "|- p | negI p", "--assume", "I:MULT,CNTR,DNRM,IDEM")
    assert code == EXIT_FAIL
    path = tmp_path / "cm.json"
    path.write_text(out)
    m = model_from_json(json.loads(out))
    assert not valid("p | negI p", m)
    assert run(capsys, "valid", "-m", str(path), "-f", "p | negI p")[0] == EXIT_FAIL
    code, out, _ = run(capsys, "check-conditions", "-m", str(path), "--role", "I", "-c", "MULT,CNTR,DNRM,IDEM")
    assert code == EXIT_OK


def test_search_statuses(capsys):
    code, out, _ = run(capsys, "search", "-s", "cons p, p, negC p |- F")
    assert code == EXIT_OK and out.startswith("VALID")
    code, out, _ = run(capsys, "search", "-f", "p | -p", "--max-points", "3")
    assert code == EXIT_INCONCLUSIVE and out.startswith("INCONCLUSIVE")
    code, out, _ = run(capsys, "search", "-s", "p, negC p |- F", "--format", "json")
    payload = json.loads(out)
    assert code == EXIT_FAIL and payload["status"] == "countermodel"
    assert not consequence("p, negC p |- F", model_from_json(payload["model"]))


def test_json_output_is_byte_identical(capsys):
    argv = ["search", "-s", "p |- box p", "--max-points", "3", "--strategy", "random", "--seed", "5",
            "--samples", "300", "--format", "json"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b and json.loads(a)["status"] == "countermodel"


def test_check_conditions(capsys, tmp_path):
    code, out, _ = run(capsys, "check-conditions", "-t", "0,3,2,3", "-c", "ADDI,EXPN,NORM,IDEM")
    assert code == EXIT_OK and out.count("holds") == 4
    code, out, _ = run(capsys, "check-conditions", "-t", "1,1,3,3", "-c", "NORM", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_FAIL and data["results"][0]["witness"] == {"A": [], "part": "NORM"}
    op = tmp_path / "op.json"
    op.write_text(json.dumps({"points": 1, "table": [0, 1]}))
    code, out, _ = run(capsys, "check-conditions", "-o", str(op), "--format", "json")
    assert len(json.loads(out)["results"]) > 60


def test_experiments(capsys):
    code, out, _ = run(capsys, "cube", "--points", "2", "--exhaustive")
    assert code == EXIT_OK and out.strip() == "256/256 operators pass"
    assert run(capsys, "cube", "--points", "4", "--samples", "500")[0] == EXIT_OK
    assert run(capsys, "topology-roundtrip", "--max-points", "3")[0] == EXIT_OK
    assert run(capsys, "barcan", "--sort-size", "2")[0] == EXIT_OK
    code, out, _ = run(capsys, "report", "quantifier-probe", "--format", "json")
    assert code == EXIT_OK and json.loads(out)


def test_usage_errors(capsys, tmp_path, indiscrete):
    assert run(capsys, "eval", "-m", str(tmp_path / "missing.json"), "-f", "p")[0] == EXIT_USAGE
    code, _, err = run(capsys, "eval", "-m", indiscrete, "-f", "p &")
    assert code == EXIT_USAGE and "position" in err
    assert run(capsys, "eval", "-m", indiscrete, "-f", "q")[0] == EXIT_USAGE
    assert run(capsys, "check-conditions", "-t", "0,1", "-c", "BOGUS")[0] == EXIT_USAGE
    assert run(capsys, "search", "-f", "p", "--strategy", "exhaustive", "--max-points", "3")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == EXIT_USAGE


def test_console_entry_point(indiscrete):
    proc = subprocess.run(
        [sys.executable, "-m", "tba.cli", "eval", "-m", indiscrete, "-f", "negC p"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "[0, 1]"
