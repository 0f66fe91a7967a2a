import json

import pytest

from trainalg.cli import main
from trainalg.suites import SUITES, SuiteConfig, run_suite


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def coset_json(rows, alpha=1, beta=1):
    return {"pair": "GL_R/O", "alpha": [alpha], "beta": [beta],
            "rep": [{"field": "Q", "rows": len(rows), "cols": len(rows),
                     "entries": [[str(x) for x in r] for r in rows]}]}


@pytest.mark.parametrize("suite", sorted(set(SUITES) - {"repcat"}))
def test_every_suite_passes_a_short_run(suite):
    kw = {"n": 12} if suite == "theta_limit" else {}
    assert run_suite(SuiteConfig(suite, trials=3, seed=2, **kw)).passed


def test_reports_are_deterministic():
    a = run_suite(SuiteConfig("associativity", trials=4, seed=5)).to_json()
    b = run_suite(SuiteConfig("associativity", trials=4, seed=5)).to_json()
    assert json.dumps(a) == json.dumps(b)
    assert a["checks"]
    assert [r["seed"] for r in a["results"]] == [500_000 + i for i in range(4)]


def test_failing_trials_carry_a_shrunk_counterexample():
    rep = run_suite(SuiteConfig("repcat", trials=10, seed=1, d=2, n=10)).to_json()
    bad = [r for r in rep["results"] if not r["pass"]]
    assert bad and all("counterexample" in r for r in bad)


def test_bad_config():
    with pytest.raises(ValueError):
        SuiteConfig("nope")
    with pytest.raises(ValueError):
        SuiteConfig("compose", trials=0)


def test_cli_mul_reproduces_worked_example(tmp_path, capsys):
    a = write(tmp_path, "a.json", coset_json([[2, 1], [3, 2]]))
    b = write(tmp_path, "b.json", coset_json([[1, 2], [0, 1]]))
    assert main(["coset", "mul", a, b]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["rep"][0]["entries"] == [["2", "1", "4"], ["3", "2", "6"], ["0", "0", "1"]]


def test_cli_eq_inv_chi_invariants(tmp_path, capsys):
    a = write(tmp_path, "a.json", coset_json([[2, 1], [3, 2]]))
    d = write(tmp_path, "d.json", coset_json([[2]]))
    assert main(["coset", "eq", a, a]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "equal_by_witness"
    assert main(["coset", "inv", a]) == 0
    assert json.loads(capsys.readouterr().out)["rep"][0]["entries"] == [["2", "-1"], ["-3", "2"]]
    assert main(["coset", "chi", d, "--lambda", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["basis"]["entries"] == [["1", "0", "1/2", "0"],
                                                                       ["0", "1", "0", "2"]]
    assert main(["coset", "invariants", d]) == 0
    assert len(json.loads(capsys.readouterr().out)["chi"]) == 6


def test_cli_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["coset", "inv", str(bad)]) == 2
    sing = write(tmp_path, "s.json", coset_json([[1, 2], [2, 4]]))
    assert main(["coset", "inv", sing]) == 2
    a = write(tmp_path, "a.json", coset_json([[2]], alpha=2))
    b = write(tmp_path, "b.json", coset_json([[2]]))
    assert main(["coset", "mul", a, b]) == 2
    assert main(["coset", "mul", a]) == 2
    assert main(["verify", "compose", "--trials", "0"]) == 2
    assert main(["frobnicate"]) == 2


def test_cli_spherical(tmp_path, capsys):
    ident = write(tmp_path, "i.json", {"field": "Q", "rows": 0, "cols": 0, "entries": []})
    two = write(tmp_path, "two.json", {"field": "Q", "rows": 1, "cols": 1, "entries": [["2"]]})
    neg = write(tmp_path, "neg.json", {"field": "Q", "rows": 1, "cols": 1, "entries": [["-1"]]})
    zero = write(tmp_path, "z.json", {"field": "Q", "rows": 1, "cols": 1, "entries": [["0"]]})
    assert main(["spherical", ident, "--s", "1", "--a", "0.5"]) == 0
    assert json.loads(capsys.readouterr().out) == {"re": 1.0, "im": 0.0}
    assert main(["spherical", two, "--s", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["re"] == pytest.approx(0.8944272, abs=1e-7)
    assert main(["spherical", neg, "--sigma", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["re"] == -1.0
    assert main(["spherical", zero]) == 2


def test_cli_verify_exit_codes_and_plots(tmp_path, capsys):
    fig = tmp_path / "assoc.png"
    out = tmp_path / "assoc.json"
    assert main(["verify", "associativity", "--trials", "5", "--seed", "7",
                 "--plot", str(fig), "--out", str(out)]) == 0
    assert fig.stat().st_size > 0
    assert json.loads(out.read_text())["pass"] is True
    capsys.readouterr()
    assert main(["verify", "repcat", "--n", "10", "--d", "2", "--trials", "10", "--seed", "1"]) == 1
    capsys.readouterr()
    sph = tmp_path / "phi.png"
    two = write(tmp_path, "two.json", {"field": "Q", "rows": 2, "cols": 2, "entries": [["2", "1"], ["1", "1"]]})
    assert main(["spherical", two, "--s", "0.5,1", "--plot", str(sph)]) == 0
    assert sph.stat().st_size > 0
