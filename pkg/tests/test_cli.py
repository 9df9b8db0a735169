import csv
import io
import json

import pytest

from invwalk.cli import EXIT_CAPACITY, EXIT_INPUT, EXIT_VERIFY, main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def csv_rows(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(body))


def test_hk_example():
    code, out, _ = run("hk", "--n", "6", "--k", "3")
    doc = json.loads(out)
    assert code == 0
    assert doc["wilson_rank"] == 10 and doc["pass"] is True
    for key in ("n", "k", "k_mod_4", "elimination_rank", "vk_dim", "generators_in_vk", "membership_checked"):
        assert key in doc


def test_hk_membership_flag():
    doc = json.loads(run("hk", "--n", "7", "--k", "4", "--membership")[1])
    assert doc["membership_checked"] == 100 and doc["pass"]


def test_tv_example():
    code, out, _ = run("tv", "--n", "3", "--t-min", "1", "--t-max", "4")
    rows = csv_rows(out)
    assert code == 0
    assert list(rows[0]) == ["t", "d_exact", "l2_upper", "paper_upper", "paper_lower"]
    assert [float(r["d_exact"]) for r in rows] == [0.375, 0.1875, 0.09375, 0.046875]
    assert rows[0]["paper_upper"] == "" and rows[-1]["paper_lower"] == ""


def test_spectrum_capacity_exit():
    code, out, err = run("spectrum", "--n", "99")
    assert code == EXIT_CAPACITY and out == "" and "capacity" in err


def test_input_errors():
    assert run("bogus")[0] == EXIT_INPUT
    assert run("tv", "--n", "3", "--t-min", "0", "--t-max", "2")[0] == EXIT_INPUT
    assert run("ranktail", "--n", "5", "--trials", "0", "--seed", "1")[0] == EXIT_INPUT
    assert run("spectrum", "--n", "3", "--threads", "0")[0] == EXIT_INPUT
    assert run("simulate", "--variant", "k", "--n", "4", "--t", "2", "--trials", "10", "--seed", "1")[0] == EXIT_INPUT


def test_verification_exit(monkeypatch):
    import invwalk.restricted as R

    monkeypatch.setattr(R, "wilson_rank", lambda n, k: 0)
    code, out, _ = run("hk", "--n", "6", "--k", "3")
    assert code == EXIT_VERIFY
    assert json.loads(out)["pass"] is False


def test_spectrum_csv_file(tmp_path):
    path = tmp_path / "spec.csv"
    assert run("spectrum", "--n", "3", "--csv", str(path))[0] == 0
    data = path.read_bytes()
    assert b"\r" not in data
    rows = csv_rows(data.decode())
    assert list(rows[0]) == ["A", "rank", "S_A", "lambda"]
    assert len(rows) == 8
    assert sorted(float(r["lambda"]) for r in rows) == [0.0] + [0.5] * 6 + [1.0]
    assert rows[7]["A"] == "0x7"


def test_profile_headers_are_field_names():
    rows = csv_rows(run("profile", "--n", "4", "--t-max", "6")[1])
    assert list(rows[0]) == ["t", "d_exact", "d_l2_upper", "d_paper_upper", "d_paper_lower", "d_mc_estimate"]
    assert len(rows) == 7


def test_ball_json():
    doc = json.loads(run("ball", "--n", "4", "--t", "2")[1])
    assert doc["ball_size"] == 52 and doc["diameter"] == 3
    assert doc["bound"]["num"] == 2**10 * 16 // 2
    assert [r["ball_size"] for r in doc["rows"]] == [1, 12, 52, 64]


def test_altcount_and_ranktail():
    doc = json.loads(run("altcount", "--n", "5")[1])
    assert doc["pass"] and doc["total"] == 1024
    rows = csv_rows(run("ranktail", "--n", "8", "--trials", "2000", "--seed", "3")[1])
    assert [int(r["s"]) for r in rows] == list(range(9))
    assert float(rows[0]["estimate"]) == 1.0


def test_hk_sweep():
    code, out, _ = run("hk-sweep", "--n-max", "6")
    rows = csv_rows(out)
    assert code == 0
    assert [(int(r["n"]), int(r["k"])) for r in rows] == [(4, 2), (5, 2), (5, 3), (6, 2), (6, 3), (6, 4)]
    assert all(r["pass"] == "true" for r in rows)


def test_simulate_variants(tmp_path):
    doc = json.loads(run("simulate", "--variant", "full", "--n", "3", "--t", "2", "--trials", "20000", "--seed", "1")[1])
    assert abs(doc["empirical_tv"] - 0.1875) < doc["bias_bound"]
    path = tmp_path / "h.json"
    run("simulate", "--variant", "hypercube", "--m", "10", "--t", "3", "--trials", "5000", "--seed", "1", "--json", str(path))
    doc = json.loads(path.read_text())
    assert doc["meta"]["command"] == "simulate" and doc["statistic"] > 0.5


def test_format_override():
    out = run("ball", "--n", "3", "--t", "1", "--format", "csv")[1]
    assert out.startswith("# tool: invwalk")
    doc = json.loads(run("tv", "--n", "3", "--t-max", "2", "--format", "json")[1])
    assert doc["rows"][0]["d_exact"] == 0.375


@pytest.mark.parametrize(
    "argv",
    [
        ("spectrum", "--n", "5"),
        ("profile", "--n", "5", "--t-max", "8"),
        ("altcount", "--n", "6"),
        ("ranktail", "--n", "12", "--trials", "10000", "--seed", "5"),
        ("simulate", "--variant", "full", "--n", "4", "--t", "3", "--trials", "20000", "--seed", "2"),
        ("simulate", "--variant", "k", "--n", "5", "--k", "3", "--t", "3", "--trials", "20000", "--seed", "2"),
        ("simulate", "--variant", "hypercube", "--m", "12", "--t", "9", "--trials", "20000", "--seed", "2"),
    ],
)
def test_byte_identical_across_runs_and_threads(argv):
    first = run(*argv, "--threads", "1")[1]
    assert run(*argv, "--threads", "1")[1] == first
    assert run(*argv, "--threads", "4")[1] == first
