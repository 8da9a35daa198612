from __future__ import annotations

import pytest

from cyclo.cosets import C, Cs, oracle_count
from cyclo.cyclotomy import (
    COUNT_RULES,
    RESIDUE_RULES,
    closed_form_count,
    count_sweep,
    cyclotomic_number,
    product_formula_sweep,
    residue_oracle,
    residue_rule_value,
    rule_labels,
)
from cyclo.errors import IndexRangeError


def test_every_branch_matches_the_oracle(case):
    checks = count_sweep(case.system)
    bad = [(c.key, dict(c.indices), c.expected, c.actual) for c in checks if not c.ok]
    assert bad == []


def test_product_formula_on_all_triples(case):
    assert product_formula_sweep(case.system) == []


def test_small_counts_55(ex55):
    P = ex55.params
    assert closed_form_count(P, "C(i,j)+C(i,j)->C(i,j)", {"i": 0, "j": 0}) == 6
    assert closed_form_count(P, "C(i,t)+C*(i,t)->C_0", {"i": 0}) == 1
    assert cyclotomic_number(P, C(0, 0), Cs(0, 0), C(1, 1)) == 1
    assert cyclotomic_number(P, C(0, 0), C(0, 0), C(1, 1)) == 0
    A, X, Y = rule_labels(P, "C(i,j)+C(i,j)->C(i,j)", {"i": 0, "j": 0})
    assert oracle_count(ex55.system, A, X, Y) == 6


def test_residue_rules_55(ex55):
    P = ex55.params
    assert residue_rule_value(P, "r+R->N") == 3
    assert residue_oracle(P, "r+R->N") == 3
    assert residue_rule_value(P, "r+R->R") == 2
    for key in RESIDUE_RULES:
        assert residue_rule_value(P, key) == residue_oracle(P, key)


def test_unknown_rule_and_bad_indices(ex55):
    P = ex55.params
    with pytest.raises(IndexRangeError):
        closed_form_count(P, "no such rule", {})
    with pytest.raises(IndexRangeError):
        closed_form_count(P, "C(i,j)+C(i,j)->C(i,j)", {"i": 1, "j": 0})


def test_top_level_rule_reaches_the_zero_coset(ex75):
    P = ex75.params
    key = "C(s,j)+C(s,j')->C(s,j)"
    ix = {"j": 0, "j2": P.t}
    assert closed_form_count(P, key, ix) == 1
    assert oracle_count(ex75.system, *rule_labels(P, key, ix)) == 1
    assert [dict(c.indices) for c in count_sweep(ex75.system) if c.key == key] == [
        {"j": 0, "j2": 1}, {"j": 0, "j2": 2}, {"j": 1, "j2": 2},
    ]


def test_corrected_rules_report_their_deviation(case):
    P = case.params
    checks = count_sweep(case.system)
    seen = {c.key: c.deviation for c in checks}
    for key, rule in COUNT_RULES.items():
        if next(rule.instances(P), None) is not None:
            assert seen[key] == rule.deviation
    assert all(c.ok for c in checks if c.deviation)


def test_deviation_texts(ex75):
    qnr = COUNT_RULES["C(i,j)+C(i,j)->C*(i,m) [qnr]"]
    assert qnr.deviation == "odd m-j branch: q-part is φ(q^{t-m}), published as φ(q^{t-k})"
    assert COUNT_RULES["C*(i,j)+C*(i,j)->C*(i,m) [qnr]"].deviation == qnr.deviation
    assert COUNT_RULES["C(i,j)+C(i,j)->C(i,m) [qnr]"].deviation == ""
    assert "published as C*(i,j') with φ(q^{t-j})" in COUNT_RULES["C*(i,j)+C(s,j')->class-of-C*(i,j') [j'<j]"].deviation
    assert "published as C*(i',j)" in COUNT_RULES["C*(i,j)+C(i',j)->class-of-C*(i,m)"].deviation
    assert COUNT_RULES["C(i,j)+C(i',j)->class-of-C(i,m)"].deviation == ""
    exercised = {c.key for c in count_sweep(ex75.system) if c.deviation}
    assert exercised == {
        "C(i,j)+C(i,j)->C*(i,m) [qnr]",
        "C*(i,j)+C*(i,j)->C*(i,m) [qnr]",
        "C(i,j)+C(s,j')->class-of-C(i,j') [j'<j]",
        "C*(i,j)+C(s,j')->class-of-C*(i,j') [j'<j]",
    }
