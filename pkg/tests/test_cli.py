import csv
import io
import json
import subprocess
import sys

import pytest

from lietori.cli import CSV_HEADER, main, parse_range
from lietori.errors import ParameterError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--family", "C", "--n", "3", "--q", "2", "--class", "(1)(2)")
    rec = json.loads(out)
    assert code == 0 and rec["status"] == "Degenerate" and rec["clauses"] == ["Sp-b", "Sp-c"]


def test_exceptional_census_total(capsys):
    code, out, _ = run(capsys, "census", "--exceptional", "--all")
    assert code == 0
    assert out.strip().splitlines()[-1] == "total degenerate classes: 130"
    assert len(out.strip().splitlines()) == 131


def test_verify_sl3_2(capsys):
    code, out, _ = run(capsys, "verify", "--family", "A", "--n", "3", "--q", "2", "--budget", "1000000")
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert code == 0 and len(lines) == 3
    assert all(l["consistent"] for l in lines)


def test_verify_falls_back_to_witness(capsys):
    code, out, _ = run(capsys, "verify", "--family", "D", "--n", "4", "--q", "2", "--class", "(1)(1)(2)")
    rec = json.loads(out)
    assert code == 0 and rec["route"] == "witness" and rec["full_normalizer_order"] == "not computed"
    assert rec["consistent"] and all(c["membership"] for c in rec["witness_checks"])


def test_classes_round_trip(capsys):
    _, out, _ = run(capsys, "classes", "--family", "D", "--n", "4", "--q", "3", "--format", "md")
    classes = out.split()
    assert len(classes) == 13
    for c in classes:
        code, _, _ = run(capsys, "classify", "--family", "D", "--n", "4", "--q", "3", "--class", c)
        assert code == 0


def test_census_formats_agree(capsys):
    args = ["census", "--family", "C", "--n", "2..3", "--q", "2,3"]
    _, js, _ = run(capsys, *args)
    _, cs, err = run(capsys, *args, "--format", "csv")
    json_rows = [json.loads(l) for l in js.strip().splitlines()[:-1]]
    csv_rows = list(csv.reader(io.StringIO(cs)))
    assert csv_rows[0] == CSV_HEADER
    assert len(csv_rows) - 1 == len(json_rows)
    for r, c in zip(json_rows, csv_rows[1:]):
        assert (r["descriptor"]["class"], r["status"]) == (c[3], c[4])
    degenerate = sum(r["status"] == "Degenerate" for r in json_rows)
    assert js.strip().splitlines()[-1] == f"total degenerate classes: {degenerate} of {len(json_rows)}"
    assert "total degenerate classes" in err


def test_output_is_deterministic(capsys):
    args = ["census", "--family", "D", "--n", "4", "--q", "2", "--format", "md"]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_exit_codes(capsys, monkeypatch):
    assert run(capsys, "classify", "--family", "C", "--n", "3", "--q", "6", "--class", "(3)")[0] == 2
    assert run(capsys, "classify", "--family", "A", "--n", "3", "--q", "2", "--class", "(9)")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    code = run(capsys, "verify", "--family", "C", "--n", "2", "--q", "3", "--route", "brute-force",
               "--budget", "100")[0]
    assert code == 3
    monkeypatch.setenv("TORI_BUDGET", "100")
    assert run(capsys, "verify", "--family", "C", "--n", "2", "--q", "3", "--route", "brute-force")[0] == 3


def test_no_simple_filter(capsys):
    assert run(capsys, "classify", "--family", "D", "--n", "2", "--q", "3", "--class", "(1)(1)")[0] == 2
    code, out, _ = run(capsys, "classify", "--family", "D", "--n", "2", "--q", "3", "--class", "(1)(1)",
                       "--no-simple-filter")
    assert code == 0 and json.loads(out)["clauses"] == ["SO-a", "SO-b"]


def test_other_commands(capsys):
    code, out, _ = run(capsys, "rootsys", "--type", "E8")
    data = json.loads(out)
    assert code == 0 and data["root_count"] == 240 and data["delta"] == 1 and data["min_norm"] == "2"
    code, out, _ = run(capsys, "torus", "--family", "C", "--n", "2", "--q", "3", "--class", "(1-)(1-)")
    data = json.loads(out)
    assert data["full_order"] == 16 and data["algebraic_normaliser_order"] == 128
    code, out, _ = run(capsys, "exceptional", "--group", "F4", "--label", "B2", "--q", "2")
    assert json.loads(out)["status"] == "Degenerate"


def test_parse_range():
    assert parse_range("2..4") == [2, 3, 4]
    assert parse_range("5,2, 3") == [2, 3, 5]
    with pytest.raises(ParameterError):
        parse_range(",")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lietori", "census", "--exceptional", "--group", "G2"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip().splitlines()[-1] == "total degenerate classes: 3"
