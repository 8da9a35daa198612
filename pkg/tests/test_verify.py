from __future__ import annotations

import json

from cyclo.settings import get_settings
from cyclo.verify import run_verification, write_receipt


def test_verification_passes_on_example_35(ex35):
    report = run_verification(ex35.params, ex35.alpha_index, get_settings({}), gauss=ex35.gauss)
    assert report.ok, report.summary_lines()
    assert [s.name for s in report.sections] == [
        "cosets",
        "cyclotomic numbers",
        "χ product identities",
        "idempotents",
        "codes",
    ]
    assert all(line.startswith("✓") for line in report.summary_lines() if not line.startswith(" "))
    assert (report.residue_sum, report.nonresidue_sum) == (1, 0)


def test_verification_passes_on_lifted_tuples(ex245, ex75):
    for case in (ex245, ex75):
        report = run_verification(case.params, case.alpha_index, get_settings({}), gauss=case.gauss)
        assert report.ok, report.summary_lines()


def test_over_budget_distances_are_skipped(ex75):
    report = run_verification(ex75.params, ex75.alpha_index, get_settings({}), gauss=ex75.gauss)
    codes = report.sections[-1]
    assert any("C(1,0)" in msg for msg in codes.skipped)


def test_receipt_files(tmp_path, ex35):
    report = run_verification(ex35.params, ex35.alpha_index, get_settings({}), gauss=ex35.gauss)
    log_path, json_path = write_receipt(receipts_dir=tmp_path / "receipts", report=report)
    assert log_path.exists() and json_path.exists()
    assert "Result: PASS" in log_path.read_text(encoding="utf-8")
    data = json.loads(json_path.read_text(encoding="utf-8"))
    assert data["ok"] is True
    assert data["params"] == [7, 5, 1, 1, 2]


def test_report_lists_corrected_closed_forms(ex75):
    report = run_verification(ex75.params, ex75.alpha_index, get_settings({}), gauss=ex75.gauss)
    counts = next(s for s in report.sections if s.name == "cyclotomic numbers")
    assert any(c.startswith("C(i,j)+C(i,j)->C*(i,m) [qnr]: odd m-j branch") for c in counts.corrections)
    identities = next(s for s in report.sections if s.name == "χ product identities")
    assert any(c.startswith("C*(i,j)*C(s,j') [j'<j]: ") for c in identities.corrections)
    lines = report.summary_lines()
    assert "    ~ " + counts.corrections[0] in lines
    payload = report.payload()
    assert payload["sections"][1]["corrections"] == counts.corrections
    assert "seconds" not in payload
