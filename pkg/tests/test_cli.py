import json

import jsonschema
import pytest

from ccpoly.cli import main, parse_problem_spec
from ccpoly.boolfn import SpecError
from ccpoly.schemas import SCHEMAS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, command, *argv):
    code, out, _ = run(capsys, command, *argv, "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMAS[command])
    return code, data


def test_analyze_nor3(capsys):
    code, data = run_json(capsys, "analyze", "name:NOR,n=3@and")
    assert code == 0 and data["quantities"]["rank"] == 8 and data["consistent"]
    vals = {(e["measure"], e["anchor"]): e for e in data["entries"]}
    assert vals[("Q*", "entanglement-log-rank")]["real"] == 1.5
    assert vals[("Q*", "entanglement-log-rank")]["value"] == "3/2"
    assert vals[("C*", "bits-entanglement-log-rank")]["value"] == "3"
    assert not any(e["flag"] == "conditional" for e in data["entries"])


def test_analyze_conditional(capsys):
    _, data = run_json(capsys, "analyze", "name:NOR,n=3@and", "--conditional")
    cond = [e for e in data["entries"] if e["flag"] == "conditional"]
    assert cond and all(e["assumption"] for e in cond)


def test_poly(capsys):
    code, data = run_json(capsys, "poly", "tt:0x8,n=2")
    assert code == 0 and data["mon"] == 1 and data["terms"] == [{"mask": 3, "num": 1, "den": 1}]
    code, out, _ = run(capsys, "poly", "tt:0x8,n=2")
    assert "x1x2" in out and "mon = 1" in out


def test_rank_and_dexact(capsys):
    _, data = run_json(capsys, "rank", "eq:n=3")
    assert data["rank"] == 8
    _, data = run_json(capsys, "rank", "name:sym,n=3,v=0110@and")
    assert data["rank"] == data["mon"] == 6
    _, data = run_json(capsys, "dexact", "eq:n=2")
    assert data["exact"] and data["lower"] == 3 and data["d_one_round"] == 3


def test_so(capsys):
    _, data = run_json(capsys, "so", "name:NOR,n=5")
    assert data["so"] == 5 and data["witness"]["x"] == "00000"
    _, data = run_json(capsys, "so", "name:NOR,n=5", "--mode", "greedy")
    assert data["flag"] == "witnessed"


def test_approx(capsys):
    _, data = run_json(capsys, "approx", "name:OR,n=2", "--what", "degree")
    assert data["degree"] == 1 and data["polynomial"]["verified"]
    _, data = run_json(capsys, "approx", "name:OR,n=2", "--what", "monomials")
    assert data["count"] == 2 and data["exact"]
    _, data = run_json(capsys, "approx", "ipbar:n=2", "--what", "rank", "--target-rank", "3")
    assert data["success"] and data["exact_rank"] == 4


def test_verify_and_experiment(capsys):
    code, data = run_json(capsys, "verify", "eq-to-disj")
    assert code == 0 and data["instances"] == 20
    code, data = run_json(capsys, "verify", "rank-eq-mon", "--param", "max_n=2")
    assert code == 0 and data["passed"]
    code, data = run_json(capsys, "experiment", "andor-monomials")
    assert data["rows"][1]["mon"] == 343
    code, out, _ = run(capsys, "experiment", "andor-monomials", "--format", "csv")
    assert out.splitlines()[0] == "n,fanout,mon,formula,match"


def test_failing_suite_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "mon-so-bound", "--param", "min_n=1", "--param", "max_n=1",
                       "--format", "json")
    assert code == 1 and not json.loads(out)["passed"]


def test_json_output_is_byte_identical(capsys):
    _, a, _ = run(capsys, "analyze", "name:MAJ,n=3@or", "--format", "json", "--seed", "4")
    _, b, _ = run(capsys, "analyze", "name:MAJ,n=3@or", "--format", "json", "--seed", "4")
    assert a == b
    _, a, _ = run(capsys, "approx", "ipbar:n=2", "--what", "rank", "--target-rank", "3", "--format", "json")
    _, b, _ = run(capsys, "approx", "ipbar:n=2", "--what", "rank", "--target-rank", "3", "--format", "json")
    assert a == b


@pytest.mark.parametrize("argv, token", [
    (["rank", "name:FOO,n=3@and"], "FOO"),
    (["rank", "name:OR,n=3@nand"], "nand"),
    (["rank", "name:OR,n=3"], "name:OR,n=3"),
    (["rank", "eq:n=x"], "n=x"),
    (["analyze", "name:OR,n=2@and", "--eps", "two"], "two"),
    (["verify", "eq-to-disj", "--param", "max_n"], "max_n"),
])
def test_spec_errors_exit_two(capsys, argv, token):
    code, _, err = run(capsys, *argv)
    assert code == 2 and repr(token) in err


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "verify", "no-such-suite")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "rank", "eq:n=2", "--format", "csv")[0] == 2


def test_raw_matrix_files(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("# disjointness on one bit\n1 1\n1 0\n")
    _, data = run_json(capsys, "rank", f"raw:{f}")
    assert data["rank"] == 2
    j = tmp_path / "m.json"
    j.write_text("[[1, 0, 0], [0, 1, 0]]")
    assert parse_problem_spec(f"raw:{j}").shape == (2, 3)
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n0 1\n")
    with pytest.raises(SpecError) as exc:
        parse_problem_spec(f"raw:{bad}")
    assert exc.value.token == "2"
    with pytest.raises(SpecError):
        parse_problem_spec(f"raw:{tmp_path / 'missing.txt'}")


def test_matrix_cap(capsys):
    code, _, err = run(capsys, "rank", "eq:n=4", "--matrix-cap", "8")
    assert code == 2 and "cap" in err
