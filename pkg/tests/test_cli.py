import json

import pytest
from click.testing import CliRunner

from beattylab.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_least_prime_json(runner):
    r = runner.invoke(
        main,
        ["least-prime", "--alpha", "surd:(1+sqrt(5))/2", "--beta", "rat:0/1", "--limit", "1000"],
    )
    assert r.exit_code == 0
    payload = json.loads(r.output)
    assert payload["prime"] == 3 and payload["n"] == 2


def test_rational_csv(runner):
    r = runner.invoke(
        main, ["rational", "--a", "15", "--q", "2", "--beta", "rat:3/1", "--format", "csv"]
    )
    assert r.exit_code == 0
    lines = r.output.strip().split("\n")
    assert lines[1].startswith("10,5,false,false,false")
    assert lines[2].startswith("18,3,false,false,false")


def test_members_csv(runner):
    r = runner.invoke(main, ["members", "--alpha", "surd:(200+sqrt(50))/50", "--count", "7"])
    rows = r.output.strip().split("\n")[1:]
    elems = [int(line.split(",")[1]) for line in rows]
    assert elems == [4, 8, 12, 16, 20, 24, 28]
    assert all(line.split(",")[2] == "false" for line in rows)


def test_cf_output(runner):
    r = runner.invoke(main, ["cf", "--alpha", "surd:(0+sqrt(2))/1", "--terms", "6"])
    assert r.exit_code == 0
    assert "quotients,1,2,2,2,2,2" in r.output
    assert "period,2" in r.output
    assert "convergent,4,41,29" in r.output


def test_bound_json(runner):
    r = runner.invoke(main, ["bound", "--alpha", "surd:(1+sqrt(5))/2", "--eps", "0.02"])
    assert r.exit_code == 0
    payload = json.loads(r.output)
    assert payload["m"] == 7
    assert payload["provenance"] == "growth_rate_estimate"
    assert payload["log10_bound"] > 1e18


def test_expsum_json(runner):
    r = runner.invoke(main, ["expsum", "--frak-a", "rat:1/2", "--n", "10"])
    payload = json.loads(r.output)
    assert payload["real"] == pytest.approx(-3.6731310971457973, rel=1e-12)


def test_verify_explicit_exit_codes(runner):
    ok = runner.invoke(main, ["verify", "explicit", "--check", "d3sq", "--xmax", "5000"])
    assert ok.exit_code == 0
    bad = runner.invoke(main, ["verify", "explicit", "--check", "dsq", "--xmax", "171"])
    assert bad.exit_code == 1
    assert '""violations"":[2]' in bad.output  # CSV-escaped params payload


def test_verify_vaughan_identity(runner):
    r = runner.invoke(
        main,
        ["verify", "vaughan", "--suite", "identity", "--seed", "5", "--n", "300", "--cases", "3"],
    )
    assert r.exit_code == 0
    assert r.output.count("vaughan_identity") == 5  # two hand cases + three seeded


def test_verify_determinism_across_workers(runner):
    args = ["verify", "vaughan", "--suite", "theorem3", "--seed", "9", "--n", "4000", "--cases", "4"]
    r1 = runner.invoke(main, args + ["--workers", "1"])
    r2 = runner.invoke(main, args + ["--workers", "4"])
    assert r1.exit_code == r2.exit_code == 0
    assert r1.output == r2.output


def test_usage_error_exit_code(runner):
    r = runner.invoke(main, ["verify", "vaughan", "--suite", "nope"])
    assert r.exit_code == 2
    r2 = runner.invoke(main, ["least-prime", "--alpha", "bogus:3"])
    assert r2.exit_code != 0


def test_explain_flags(runner):
    r = runner.invoke(main, ["bound", "--explain"])
    assert r.exit_code == 0
    assert "log-space" in r.output
    r2 = runner.invoke(main, ["verify", "explicit", "--explain"])
    assert "divisor" in r2.output


def test_out_file(runner, tmp_path):
    target = tmp_path / "rows.csv"
    r = runner.invoke(
        main,
        ["verify", "explicit", "--check", "divisor", "--xmax", "1000", "--out", str(target)],
    )
    assert r.exit_code == 0
    assert target.read_text().startswith("check_id,params")
