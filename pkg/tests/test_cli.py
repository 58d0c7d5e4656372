import json

import pytest
from click.testing import CliRunner

from triplegroups.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        res = runner.invoke(main, list(args))
        return res.exit_code, res.stdout

    return invoke


def test_catalog(run):
    code, out = run("catalog")
    data = json.loads(out)
    assert code == 0
    row = next(t for t in data["data"]["types"] if t["type"] == "A2~2")
    assert row["l0"] == 2 and row["latticeMode"] == "WeightLattice"


def test_eval_central_word(run):
    code, out = run("eval", "--type", "A2~1", "--word", "s01 s02 s03 s1 s2 s1")
    nf = json.loads(out)["data"]["normalForm"]
    assert code == 0
    assert nf == {"w": [[1, 0], [0, 1]], "mu": ["0", "0"], "beta": ["0", "0"], "c": "1"}


def test_eval_empty_word(run):
    code, out = run("eval", "--word", "")
    assert code == 0 and json.loads(out)["data"]["isIdentity"]


def test_verify(run):
    code, out = run("verify", "--type", "A2~1", "--kind", "daw")
    assert code == 0 and json.loads(out)["summary"]["fail"] == 0
    code, _ = run("verify", "--type", "A2~2", "--kind", "daw")
    assert code == 1


def test_usage_errors(run):
    assert run("eval", "--type", "Q7~1")[0] == 2
    assert run("eval", "--word", "s1 s^^")[0] == 2
    assert run("verify", "--kind", "nope")[0] == 2
    assert run("auto", "--b3-word", "a c")[0] == 2


def test_present_and_prove(run, tmp_path):
    pres = tmp_path / "daw.txt"
    assert run("present", "--type", "A2~1", "--kind", "artin_affine", "--out", str(pres))[0] == 0
    trace = tmp_path / "t.jsonl"
    code, out = run("prove", "--presentation", str(pres), "--lhs", "T1 T0 T1", "--rhs", "T0 T1 T0",
                    "--trace-out", str(trace))
    assert code == 0 and json.loads(out)["checks"][0]["status"] == "pass"
    assert trace.read_text().count("\n") == 2
    code, out = run("prove", "--presentation", str(pres), "--lhs", "T1", "--rhs", "T2", "--max-nodes", "300")
    assert code == 1 and json.loads(out)["checks"][0]["status"] == "unknown"


def test_auto(run):
    code, out = run("auto", "--type", "A2~1", "--b3-word", "a b a", "--check", "descent")
    assert code == 0 and json.loads(out)["data"]["pi"] == [[0, 1], [-1, 0]]
    assert run("auto", "--type", "A4~2", "--check", "dual")[0] == 0


def test_suite_is_deterministic(run):
    code1, out1 = run("paper-suite", "--type", "A4~2")
    code2, out2 = run("paper-suite", "--type", "A4~2", "--jobs", "2")
    a, b = json.loads(out1), json.loads(out2)
    a.pop("timing"), b.pop("timing")
    assert code1 == code2 == 0
    assert a == b
