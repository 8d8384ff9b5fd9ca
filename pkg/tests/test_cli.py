import json
import os

import pytest

from polyabiquad.cli import main
from polyabiquad.report import OutputRecord, QuadRecord, parse_records, render_records


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_quad_verify_ok(capsys):
    code, out, _ = run(capsys, "quad", "-5", "--verify")
    assert code == 0
    rec = parse_records(out, "text", QuadRecord)[0]
    assert (rec.s, rec.nu, rec.po, rec.verify_status) == (2, 0, 2, "ok")


def test_quad_real_field_unit(capsys):
    code, out, _ = run(capsys, "quad", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert (data["s"], data["nu"], data["po"]) == (2, 1, 1)
    assert (data["eps_x"], data["eps_y"], data["eps_den"]) == (2, 1, 1)


def test_quad_square_input_is_exit_1(capsys):
    code, _, err = run(capsys, "quad", "4")
    assert code == 1 and "error" in err


def test_biquad_verify_named_field(capsys):
    code, out, _ = run(capsys, "biquad", "-1", "2", "--verify", "--json")
    assert code == 0
    data = json.loads(out)
    assert (data["po_k"], data["q_k"], data["verify_status"]) == (1, 2, "ok")


def test_biquad_chain_flag(capsys):
    code, out, _ = run(capsys, "biquad", "2", "3", "--chain")
    assert code == 0
    assert "chain:" in out and "2^s_K" in out
    rec = parse_records(out.split("chain:")[0], "text", OutputRecord)[0]
    assert rec.h3_h2 * rec.h2_h1 * rec.h1_h0 == 2 ** rec.s_k == 4


def test_biquad_degenerate_exit_1(capsys):
    code, _, err = run(capsys, "biquad", "2", "2")
    assert code == 1 and "error" in err


def test_biquad_budget_exit_3(capsys):
    code, _, err = run(capsys, "biquad", "11", "14", "--verify", "--budget", "20")
    assert code == 3 and "budget" in err


def test_biquad_argument_order_irrelevant(capsys):
    _, out1, _ = run(capsys, "biquad", "-1", "2", "--json")
    _, out2, _ = run(capsys, "biquad", "2", "-1", "--json")
    _, out3, _ = run(capsys, "biquad", "-2", "2", "--json")
    assert out1 == out2 == out3


def test_scan_bound_3_row_count(capsys):
    # distinct sorted triples from {-1, +-2, +-3}: exactly 6 fields
    code, out, _ = run(capsys, "scan", "--bound", "3")
    assert code == 0
    assert len(parse_records(out, "text", OutputRecord)) == 6


def test_scan_imag_only_dedup(capsys):
    code, out, _ = run(capsys, "scan", "--bound", "5", "--imag-only", "--json")
    assert code == 0
    recs = parse_records(out, "json", OutputRecord)
    triples = [(r.d1, r.d2, r.d3) for r in recs]
    assert len(set(triples)) == len(triples)
    assert all(min(t) < 0 for t in triples)
    assert all(sorted(t) == list(t) for t in triples)


def test_scan_real_only(capsys):
    code, out, _ = run(capsys, "scan", "--bound", "5", "--real-only", "--csv")
    assert code == 0
    recs = parse_records(out, "csv", OutputRecord)
    assert recs and all(r.d1 > 0 for r in recs)


def test_scan_verify_small(capsys):
    code, out, _ = run(capsys, "scan", "--bound", "5", "--verify")
    assert code == 0
    recs = parse_records(out, "text", OutputRecord)
    assert all(r.verify_status == "ok" for r in recs)


def test_scan_out_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out, _ = run(capsys, "scan", "--bound", "3", "--csv", "--out", str(target))
    assert code == 0 and out == ""
    recs = parse_records(target.read_text(), "csv", OutputRecord)
    assert len(recs) == 6


def test_scan_unwritable_out_is_exit_1(capsys):
    code, _, err = run(capsys, "scan", "--bound", "3", "--out",
                       "/nonexistent-dir/rows.txt")
    assert code == 1 and "error" in err


def test_scan_bad_bound(capsys):
    code, _, _ = run(capsys, "scan", "--bound", "1")
    assert code == 1


def test_scan_conflicting_filters(capsys):
    code, _, _ = run(capsys, "scan", "--bound", "4", "--real-only", "--imag-only")
    assert code == 1


def test_format_flags_conflict(capsys):
    code, _, _ = run(capsys, "scan", "--bound", "3", "--json", "--csv")
    assert code == 1


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("POLYA_ORACLE_BUDGET", "15")
    code, _, err = run(capsys, "biquad", "11", "14", "--verify")
    assert code == 3 and "budget" in err
    monkeypatch.setenv("POLYA_ORACLE_BUDGET", "100000000")
    code, _, _ = run(capsys, "biquad", "11", "14", "--verify")
    assert code == 0


def test_round_trip_all_formats(capsys):
    _, out, _ = run(capsys, "scan", "--bound", "4", "--verify")
    records = parse_records(out, "text", OutputRecord)
    for fmt in ("text", "json", "csv"):
        assert parse_records(render_records(records, fmt), fmt, OutputRecord) == records


def test_csv_json_field_sets_identical(capsys):
    _, out_json, _ = run(capsys, "scan", "--bound", "3", "--json")
    _, out_csv, _ = run(capsys, "scan", "--bound", "3", "--csv")
    json_keys = list(json.loads(out_json.splitlines()[0]).keys())
    csv_keys = out_csv.splitlines()[0].split(",")
    assert json_keys == csv_keys


def test_csv_needs_no_quoting(capsys):
    _, out, _ = run(capsys, "scan", "--bound", "4", "--csv")
    assert '"' not in out and all(
        cell == cell.strip() for line in out.splitlines() for cell in line.split(","))


def test_scan_jobs_deterministic(capsys):
    _, out1, _ = run(capsys, "scan", "--bound", "4", "--json")
    _, out2, _ = run(capsys, "scan", "--bound", "4", "--json", "--jobs", "2")
    assert out1 == out2


def test_biquad_mismatch_exit_2(capsys, monkeypatch):
    import polyabiquad.cli as cli_mod
    monkeypatch.setattr(cli_mod, "verify_biquad",
                        lambda K, oracle=None: ("mismatch", {}))
    code, out, _ = run(capsys, "biquad", "2", "3", "--verify")
    assert code == 2
    rec = parse_records(out, "text", OutputRecord)[0]
    assert rec.verify_status == "mismatch"


def test_scan_mismatch_exit_2(capsys, monkeypatch):
    import polyabiquad.cli as cli_mod
    monkeypatch.setattr(cli_mod, "verify_biquad",
                        lambda K, oracle=None: ("mismatch", {}))
    code, _, _ = run(capsys, "scan", "--bound", "3", "--verify")
    assert code == 2


def test_scan_budget_exceeded_rows_exit_3(capsys):
    code, out, err = run(capsys, "scan", "--bound", "3", "--verify",
                         "--budget", "25")
    assert code == 3
    if out:
        recs = parse_records(out, "text", OutputRecord)
        assert any(r.verify_status == "budget_exceeded" for r in recs) or err


def test_quad_mismatch_exit_2(capsys, monkeypatch):
    import polyabiquad.cli as cli_mod
    monkeypatch.setattr(cli_mod, "verify_quad",
                        lambda k, budget=None: ("mismatch", {}))
    code, out, _ = run(capsys, "quad", "-5", "--verify")
    assert code == 2


def test_module_entry_point():
    import subprocess, sys
    proc = subprocess.run([sys.executable, "-m", "polyabiquad", "quad", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "po" in proc.stdout
