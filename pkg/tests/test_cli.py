"""End-to-end CLI: chain files, certificates, traces, scans, exit codes."""

from __future__ import annotations

import csv
import json
import math

import pytest

from pstlab.cli import main

PI = repr(math.pi)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def build_file(tmp_path, capsys, name, *argv):
    path = tmp_path / name
    code, out, err = run(capsys, *argv, "--out", str(path))
    assert code == 0, err
    assert out == ""
    return path


def test_build_remark_chain_stdout(capsys):
    code, out, err = run(
        capsys, "build", "qracah", "--m", "2", "--M0", "3", "--M1", "1", "--N", "4"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["n_sites"] == 5
    assert doc["float"]["b"] == [0.0] * 5
    assert all(row[:2] == [0, 1] and row[2:] == [0, 1] for row in doc["exact"]["b"])
    assert doc["certificate"]["verdict"] == "PST"
    assert doc["model"] == {"family": "qracah", "m": 2, "M0": 3, "M1": 1, "N": 4}


def test_build_certify_round_trip(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "chain.json",
        "build", "qracah", "--m", "2", "--M0", "1", "--M1", "1", "--N", "8",
    )
    embedded = json.loads(path.read_text())["certificate"]
    code, out, _ = run(capsys, "certify", str(path))
    assert code == 0
    assert json.loads(out) == embedded
    assert embedded["verdict"] == "PST"
    assert embedded["gap_integers"] == [1, 1, 3, 11, 41, 153, 571, 2131]


def test_build_para_chain(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "para.json",
        "build", "para", "--m", "2", "--M0", "1", "--M1", "1", "--M2", "3",
        "--N", "5",
    )
    doc = json.loads(path.read_text())
    assert doc["n_sites"] == 6
    assert doc["model"]["M2"] == 3
    assert doc["certificate"]["verdict"] == "PST"
    assert doc["certificate"]["advisory_inequality_holds"] is False


def test_certify_even_gap_exits_one(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "even.json",
        "build", "para", "--m", "3", "--M0", "3", "--M1", "1", "--M2", "1",
        "--N", "5",
    )
    code, out, _ = run(capsys, "certify", str(path))
    assert code == 1
    cert = json.loads(out)
    assert cert["verdict"] == "NotPST"
    assert cert["reason"] == "even gap at index 3"


def test_tampered_file_certifies_honestly(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "chain.json",
        "build", "qracah", "--m", "2", "--M0", "1", "--M1", "1", "--N", "4",
    )
    doc = json.loads(path.read_text())
    row = doc["exact"]["b"][0]
    row[0] += row[1]  # add exactly 1 to b_0: file no longer matches its model
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "certify", str(path))
    assert code == 1
    cert = json.loads(out)
    assert cert["verdict"] == "NotPST"
    assert "no exact spectrum" in cert["reason"]
    # the original embedded certificate still said PST: it was not trusted
    assert doc["certificate"]["verdict"] == "PST"


def test_modelless_file_certifies_without_spectrum(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "chain.json",
        "build", "qracah", "--m", "2", "--M0", "1", "--M1", "1", "--N", "4",
    )
    doc = json.loads(path.read_text())
    doc["model"] = None
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "certify", str(path))
    assert code == 1
    assert "no exact spectrum" in json.loads(out)["reason"]


def test_build_failure_is_machine_readable(capsys):
    code, out, err = run(
        capsys, "build", "qracah", "--m", "2", "--M0", "5", "--M1", "1", "--N", "4"
    )
    assert code == 1
    assert out == ""
    msg = json.loads(err)
    assert msg["error"] == "NonPositiveCoupling"


def test_input_errors_exit_two(tmp_path, capsys):
    code, _, err = run(capsys, "certify", str(tmp_path / "missing.json"))
    assert code == 2
    assert json.loads(err)["error"] == "FileNotFoundError"

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "certify", str(bad))
    assert code == 2

    code, _, err = run(
        capsys, "build", "qracah", "--m", "2", "--M0", "2", "--M1", "1", "--N", "4"
    )
    assert code == 2  # even M0 is rejected before synthesis


def test_simulate_default_and_single_sample(tmp_path, capsys):
    path = build_file(
        tmp_path, capsys, "chain.json",
        "build", "qracah", "--m", "2", "--M0", "1", "--M1", "1", "--N", "8",
    )
    code, out, _ = run(capsys, "simulate", str(path))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,re_f,im_f,prob"
    assert len(lines) == 1025
    last = lines[-1].split(",")
    assert float(last[0]) == math.pi  # final row exactly at T
    assert float(last[3]) >= 1 - 1e-8
    probs = [float(line.split(",")[3]) for line in lines[1:]]
    assert all(0.0 <= p <= 1 + 1e-10 for p in probs)

    code, out, _ = run(capsys, "simulate", str(path), "--samples", "1")
    rows = out.strip().splitlines()
    assert code == 0 and len(rows) == 2
    t0, _, _, p0 = rows[1].split(",")
    assert float(t0) == 0.0 and float(p0) < 1e-20

    code, _, err = run(capsys, "simulate", str(path), "--samples", "0")
    assert code == 2


def test_simulate_horizon_and_outfile(tmp_path, capsys):
    chain = build_file(
        tmp_path, capsys, "chain.json",
        "build", "qracah", "--m", "2", "--M0", "1", "--M1", "1", "--N", "4",
    )
    out_csv = tmp_path / "trace.csv"
    code, out, _ = run(
        capsys, "simulate", str(chain),
        "--samples", "5", "--horizon", repr(2 * math.pi), "--out", str(out_csv),
    )
    assert code == 0 and out == ""
    rows = out_csv.read_text().strip().splitlines()
    assert len(rows) == 6
    assert float(rows[-1].split(",")[0]) == 2 * math.pi
    # all-odd gaps: the amplitude vanishes again at 2T
    assert float(rows[-1].split(",")[3]) < 1e-12


def scan_request(tmp_path, **overrides):
    req = {
        "family": "qracah",
        "m_range": [2, 3],
        "N_range": [4, 5],
        "M0_set": [1, 3],
        "M1_set": [1, 3],
        "csv": str(tmp_path / "rows.csv"),
        "summary": str(tmp_path / "summary.json"),
    }
    req.update(overrides)
    path = tmp_path / "request.json"
    path.write_text(json.dumps(req))
    return path, req


def test_scan_qracah_grid(tmp_path, capsys):
    path, req = scan_request(tmp_path)
    code, out, _ = run(capsys, "scan", str(path))
    assert code == 0
    with open(req["csv"], newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2 * 2 * 2 * 2
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["rows"] == len(rows)
    assert summary["pst"] == sum(r["verdict"] == "PST" for r in rows)
    assert json.loads(out) == summary
    for row in rows:
        # the advisory inequality is sufficient: no PST misses among its picks
        if row["advisory_inequality"] == "true":
            assert row["verdict"] == "PST"
        if row["verdict"] == "PST":
            gaps = [int(g) for g in row["gap_values"].split(";")]
            assert all(g % 2 == 1 and g > 0 for g in gaps)
            assert row["M2"] == ""


def test_scan_para_grid_and_ratio_flag(tmp_path, capsys):
    path, req = scan_request(
        tmp_path,
        family="para",
        m_range=[3, 3],
        N_range=[4, 5],
        M0_set=[1, 3],
        M1_set=[1],
        M2_set=[1, 3],
    )
    code, _, _ = run(capsys, "scan", str(path))
    assert code == 0
    with open(req["csv"], newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 8
    by_key = {
        (r["m"], r["N"], r["M0"], r["M1"], r["M2"]): r for r in rows
    }
    broken = by_key[("3", "5", "3", "1", "1")]
    assert broken["verdict"] == "NotPST"
    assert broken["reason"] == "even gap at index 3"
    assert broken["gap_values"] == "3;1;1;8;31"
    # odd-gap rows certify even though the ratio shortcut never holds
    for row in rows:
        assert row["advisory_ratio_odd"] == "false"
        gaps = row["gap_values"].split(";")
        if all("/" not in g and int(g) % 2 == 1 and int(g) > 0 for g in gaps):
            assert row["verdict"] == "PST"


def test_scan_is_deterministic_across_workers(tmp_path, capsys, monkeypatch):
    path, req = scan_request(tmp_path)
    code, _, _ = run(capsys, "scan", str(path))
    assert code == 0
    serial = (tmp_path / "rows.csv").read_bytes()
    monkeypatch.setenv("PSTLAB_WORKERS", "2")
    code, _, _ = run(capsys, "scan", str(path))
    assert code == 0
    assert (tmp_path / "rows.csv").read_bytes() == serial


def test_scan_rejects_bad_requests(tmp_path, capsys):
    for overrides in (
        {"M0_set": []},
        {"M1_set": [2]},
        {"m_range": [3, 2]},
        {"M2_set": [1]},  # qracah request must not carry M2_set
        {"frequency": 60},
        {"csv": ""},
    ):
        path, _ = scan_request(tmp_path, **overrides)
        code, _, err = run(capsys, "scan", str(path))
        assert code == 2, overrides
        assert json.loads(err)["error"] in ("ValueError", "TypeError")
