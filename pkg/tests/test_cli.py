"""Command line behavior: schemas, formats, exit codes, determinism."""

import csv
import io
import json

import pytest

from ulrich_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


# ------------------------------------------------------------------ check


def test_check_frozen_contract(capsys):
    code, obj = run_json(capsys, "check", "--type", "B", "--rank", "2", "--nodes", "1", "--weight", "0,1")
    assert code == 0
    assert obj["ulrich"] is True
    assert obj["dim"] == 3
    assert obj["datum"] == [1, 2, 3]
    assert obj["rank"] == 2
    assert obj["schema"] == "ulrich-lab/1"
    assert obj["witness"] is None


def test_check_negative_verdict_and_rationals(capsys):
    code, obj = run_json(capsys, "check", "--type", "B", "--rank", "2", "--nodes", "1,2")
    assert code == 1
    assert obj["ulrich"] is False
    assert obj["witness"]["kind"] == "duplicate entry"
    code, obj = run_json(capsys, "check", "--type", "B", "--rank", "3", "--nodes", "1,2")
    assert {"num": 5, "den": 4} in obj["datum"]


def test_check_normalized_nodes_for_d(capsys):
    code, obj = run_json(capsys, "check", "--type", "D", "--rank", "4", "--nodes", "1,4")
    assert obj["normalized_nodes"] == [1, 3]
    assert obj["case"] == "d-single-spin"


# ------------------------------------------------------------- bad input


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "--type", "B", "--rank", "2", "--nodes", "3"),
        ("check", "--type", "B", "--rank", "2", "--nodes", "0"),
        ("check", "--type", "B", "--rank", "2", "--nodes", "2,1"),
        ("check", "--type", "B", "--rank", "2", "--nodes", "1", "--weight", "1"),
        ("check", "--type", "B", "--rank", "2", "--nodes", "1", "--weight", "x,y"),
        ("check", "--type", "B", "--rank", "2", "--nodes", "1", "--weight", "0,-1"),
        ("check", "--type", "B", "--rank", "1", "--nodes", "1"),
        ("datum", "--type", "A", "--rank", "3", "--nodes", "1", "--random-trials", "5"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


# ------------------------------------------------------------------ roots


def test_roots_output(capsys):
    code, obj = run_json(capsys, "roots", "--type", "B", "--rank", "3", "--nodes", "1,2")
    assert code == 0
    assert obj["count"] == 9
    assert obj["dim"] == 8
    assert [1, 0, 0] in obj["positive_roots"]
    assert obj["symmetrizer"] == [1, 1, {"num": 1, "den": 2}]


# ------------------------------------------------------------------ datum


def test_datum_csv_lists_closed_form(capsys):
    code, out, _ = run(capsys, "datum", "--type", "B", "--rank", "3", "--nodes", "1,2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["value", "source"]
    assert len(rows) == 9  # header + 8 entries
    assert all(row[1][0] in "PQR" for row in rows[1:])
    assert ["3/2", "R[2](1,1)"] in rows


def test_datum_json_reports_equality(capsys):
    code, obj = run_json(capsys, "datum", "--type", "C", "--rank", "3", "--nodes", "1,3")
    assert code == 0
    assert obj["equal"] is True
    assert obj["dim"] == len(obj["generic"]) == len(obj["closed_form"])


def test_datum_random_trials_seeded(capsys):
    args = ("datum", "--type", "C", "--rank", "3", "--nodes", "1,3", "--random-trials", "6", "--seed", "3")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    obj = json.loads(out1)
    assert obj["all_equal"] is True and obj["trials"] == 6 and obj["seed"] == 3


def test_datum_generic_only_type_a(capsys):
    code, obj = run_json(capsys, "datum", "--type", "A", "--rank", "3", "--nodes", "2")
    assert code == 0
    assert obj["closed_form"] is None and obj["equal"] is None


# ------------------------------------------------------------------- bott


def test_bott_output(capsys):
    code, obj = run_json(
        capsys, "bott", "--type", "A", "--rank", "1", "--nodes", "1", "--weight", "0", "--twist", "2"
    )
    assert code == 0
    assert obj["vanishes"] is False
    assert obj["degree"] == 1 and obj["dominant"] == [0]


# ----------------------------------------------------------------- search


def test_search_json_accounting(capsys):
    code, obj = run_json(capsys, "search", "--type", "B", "--rank", "2", "--nodes", "1", "--format", "json")
    assert code == 0
    assert obj["found"] == [[0, 1]]
    assert obj["examined"] + obj["pruned_filters"] + obj["skipped_invariant"] == obj["volume"]
    assert obj["time"] is None
    assert obj["complete"] is True


def test_search_timing_flag(capsys):
    code, obj = run_json(
        capsys, "search", "--type", "B", "--rank", "2", "--nodes", "1", "--format", "json", "--timing"
    )
    assert isinstance(obj["time"], float)


def test_search_no_prune_same_findings(capsys):
    _, with_f = run_json(capsys, "search", "--type", "B", "--rank", "3", "--nodes", "1,3", "--format", "json")
    _, without = run_json(
        capsys, "search", "--type", "B", "--rank", "3", "--nodes", "1,3", "--format", "json", "--no-prune"
    )
    assert with_f["found"] == without["found"]
    assert without["pruned_filters"] == 0
    assert without["used_filters"] is False


def test_search_pretty_lists_findings(capsys):
    code, out, _ = run(capsys, "search", "--type", "B", "--rank", "2", "--nodes", "1")
    assert code == 0
    assert "found    : a=[0, 1]" in out
    assert "status   : complete" in out


# ----------------------------------------------------------------- verify


def test_verify_csv_and_exit(capsys):
    code, out, _ = run(capsys, "verify", "--max-rank", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == [
        "family",
        "rank",
        "nodes",
        "dim",
        "candidates",
        "pruned",
        "found",
        "time",
        "status",
    ]
    assert rows[1] == ["B", "2", "1,2", "4", "16", "16", "0", "-", "complete"]
    assert rows[2] == ["C", "2", "1,2", "4", "16", "16", "0", "-", "complete"]
    assert len(rows) == 3


def test_verify_rejects_family_a(capsys):
    code, _, err = run(capsys, "verify", "--type", "A,B")
    assert code == 2 and "families B, C, and D" in err


def test_verify_pretty_summary(capsys):
    code, out, _ = run(capsys, "verify", "--max-rank", "3")
    assert code == 0
    assert "result: PASSED" in out
    assert "B2 {1,2}: dim=4" in out


# ------------------------------------------------------------ determinism


def test_byte_identical_output_across_runs_and_jobs(capsys):
    base = ("verify", "--max-rank", "3", "--format", "json")
    _, out1, _ = run(capsys, *base)
    _, out2, _ = run(capsys, *base)
    _, out3, _ = run(capsys, *base, "--jobs", "2")
    assert out1 == out2 == out3


def test_out_file_matches_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "search", "--type", "C", "--rank", "2", "--nodes", "1,2", "--format", "json",
        "--out", str(target),
    )
    assert code == 0
    assert target.read_text() == out
