import json

from click.testing import CliRunner

from admixcount.cli import main


def invoke(*args, **kwargs):
    return CliRunner().invoke(main, list(args), **kwargs)


def test_count_semiregular_json():
    res = invoke(
        "count", "--family", "a12", "--semiregular",
        "--N", "2", "--P", "2", "--a", "2", "--phi0", "2", "--phi1", "2",
    )
    assert res.exit_code == 0
    rec = json.loads(res.stdout)
    assert rec["count"] == "18"
    assert abs(rec["log2_count"] - 4.16993) < 1e-5


def test_count_a1_defaults_phi():
    res = invoke("count", "--family", "a1", "--N", "1", "--P", "1", "--a", "1")
    assert res.exit_code == 0
    assert json.loads(res.stdout)["count"] == "8"


def test_count_spec_file_and_csv(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text('{"N": 2, "P": 2, "a": 2, "phi0": 2, "phi1": 2}')
    res = invoke("count", "--family", "a12", "--spec-file", str(path), "--format", "csv")
    assert res.exit_code == 0
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "family,N,P,count,log2_count"
    assert lines[1].startswith("a12,2,2,18,")


def test_count_vector_margins():
    res = invoke(
        "count", "--family", "a2", "--N", "2", "--P", "2",
        "--a", "1,2", "--phi0", "1,0", "--phi1", "0,2",
    )
    assert res.exit_code == 0
    assert json.loads(res.stdout)["family"] == "a2"


def test_count_workers_byte_identical():
    args = (
        "count", "--family", "a12", "--semiregular",
        "--N", "3", "--P", "3", "--a", "3", "--phi0", "3", "--phi1", "3",
    )
    one = invoke(*args, "--workers", "1")
    eight = invoke(*args, "--workers", "8")
    assert one.exit_code == eight.exit_code == 0
    assert one.stdout == eight.stdout


def test_count_malformed_file_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not json")
    res = invoke("count", "--family", "a1", "--spec-file", str(path))
    assert res.exit_code == 2
    assert res.stdout == ""  # no partial output


def test_count_missing_spec_exit_2():
    res = invoke("count", "--family", "a1")
    assert res.exit_code == 2


def test_criterion_json():
    res = invoke("criterion", "--N", "1", "--P", "1", "--a", "1", "--phi0", "1", "--phi1", "1")
    assert res.exit_code == 0
    rec = json.loads(res.stdout)
    assert rec["exactDecision"] is True
    assert rec["agree"] in (True, False)


def test_criterion_score_zero_strict():
    res = invoke("criterion", "--N", "2", "--P", "1", "--a", "1", "--phi0", "1", "--phi1", "1")
    rec = json.loads(res.stdout)
    assert abs(rec["score"]) < 1e-12
    assert rec["approxDecision"] is False


def test_table2_csv():
    res = invoke("table2", "--max-exact", "3", "--large", "100")
    assert res.exit_code == 0
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "n,alpha12_exact,spa,diff_vs_indep"
    assert lines[1].startswith("2,4.169925,")
    assert lines[3].startswith("100,,")


def test_table2_usage_error():
    assert invoke("table2", "--max-exact", "1").exit_code == 2


def test_table2_budget_exit_3():
    res = invoke("table2", "--max-exact", "5", "--budget-seconds", "0")
    assert res.exit_code == 3


def test_fig2_csv(tmp_path):
    out = tmp_path / "fig2.csv"
    res = invoke("fig2", "--N", "10", "--P", "100", "--output", str(out))
    assert res.exit_code == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 3601  # header + 3600 bins
    assert lines[0] == (
        "abar_bin_lo,f_bin_lo,fraction_a1_larger,approx_pred,exact_frac,disagree_frac"
    )
    assert "agreement fraction" in res.stderr


def test_fig2_bad_dims():
    assert invoke("fig2", "--N", "1", "--P", "10").exit_code == 2


def test_verify_ok_and_deterministic():
    a = invoke("verify", "--samples", "50000", "--seed", "3")
    b = invoke("verify", "--samples", "50000", "--seed", "3")
    assert a.exit_code == 0
    assert a.stdout == b.stdout
    assert all(line.startswith("PASS") for line in a.stdout.strip().splitlines())


def test_verify_usage_error():
    assert invoke("verify", "--max-dim", "1").exit_code == 2
