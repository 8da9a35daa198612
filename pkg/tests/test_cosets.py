from __future__ import annotations

import pytest

from cyclo.cosets import (
    C,
    Cs,
    additive_coset_form,
    cyclotomic_classes,
    intersection_count,
    label_class,
    label_of,
    multiplicative_coset,
    negated_label,
    oracle_count,
    representative,
)
from cyclo.errors import IndexRangeError

EX55_COSETS = {
    0: {0},
    1: {1, 3, 4, 9, 12, 14, 16, 23, 26, 27, 31, 34, 36, 37, 38, 42, 47, 48, 49, 53},
    2: {2, 6, 7, 8, 13, 17, 18, 19, 21, 24, 28, 29, 32, 39, 41, 43, 46, 51, 52, 54},
    5: {5, 15, 20, 25, 45},
    10: {10, 30, 35, 40, 50},
    11: {11, 22, 33, 44},
}

# C_3 has 12 elements, 34 = 2 * 17 included.
EX35_COSETS = {
    0: {0},
    1: {1, 2, 4, 8, 9, 11, 16, 18, 22, 23, 29, 32},
    3: {3, 6, 12, 13, 17, 19, 24, 26, 27, 31, 33, 34},
    5: {5, 10, 20},
    15: {15, 25, 30},
    7: {7, 14, 21, 28},
}


def _by_representative(case):
    return {c.representative: set(c.elements) for c in case.system.cosets}


def test_example_cosets(ex55, ex35):
    assert _by_representative(ex55) == EX55_COSETS
    assert _by_representative(ex35) == EX35_COSETS


def test_labels_and_representatives(ex55, ex35):
    P = ex55.params
    assert representative(P, C(1, 1)) == 0
    assert representative(P, C(1, 0)) == 11
    assert representative(P, Cs(0, 1)) == 10
    assert Cs(0, 1).name(P) == "C_10"
    assert Cs(0, 1).symbol() == "C*(0,1)"
    assert representative(ex35.params, Cs(0, 1)) == 15


def test_partition_and_sizes(case):
    P, system = case.params, case.system
    assert len(system) == (2 * P.s + 1) * (P.t + 1)
    assert sum(len(c) for c in system.cosets) == P.n
    seen = set()
    for c in system.cosets:
        assert not seen & set(c.elements)
        seen |= set(c.elements)
    assert seen == set(range(P.n))


def test_additive_form_matches_orbit(case):
    for c in case.system.cosets:
        assert set(additive_coset_form(case.params, c.label).elements) == set(c.elements)


def test_label_of_inverts_enumeration(case):
    P, system = case.params, case.system
    for c in system.cosets:
        for e in c.elements:
            assert label_of(P, e) == c.label
            assert system.label_of(e) == c.label


def test_classes_are_c1_and_cg(case):
    d0, d1 = cyclotomic_classes(case.params)
    assert d0 == frozenset(case.system.coset(C(0, 0)).elements)
    assert d1 == frozenset(case.system.coset(Cs(0, 0)).elements)


def test_negation_stars_the_label(case):
    P, system = case.params, case.system
    for c in system.cosets:
        neg = {(-e) % P.n for e in c.elements}
        assert neg == set(system.coset(negated_label(P, c.label)).elements)


def test_label_class_follows_q_character(ex35):
    P = ex35.params
    assert label_class(P, C(0, 0)) == 1
    assert label_class(P, C(0, 1)) == -1
    assert label_class(P, Cs(0, 1)) == 1
    assert label_class(P, C(1, 0)) == 0


def test_multiplicative_coset_of_7(ex35):
    assert multiplicative_coset(ex35.params, 7).elements == (7, 14, 21, 28)


def test_lifted_levels_245(ex245):
    system = ex245.system
    assert set(system.coset(C(1, 1)).elements) == {35, 70, 140}
    assert len(system.coset(C(1, 0))) == 12
    assert len(system.coset(C(0, 0))) == 84


def test_intersection_counts(ex55):
    P, system = ex55.params, ex55.system
    c1, c2, c0 = system.coset(C(0, 0)), system.coset(Cs(0, 0)), system.coset(C(1, 1))
    assert intersection_count(P, 1, c1, c0) == 0
    assert intersection_count(P, 1, c2, c0) == 1
    assert oracle_count(system, C(0, 0), Cs(0, 0), C(1, 1)) == 1


def test_label_check_rejects_out_of_range(ex55):
    with pytest.raises(IndexRangeError):
        Cs(1, 0).check(ex55.params)
    with pytest.raises(IndexRangeError):
        C(0, 2).check(ex55.params)
    with pytest.raises(IndexRangeError):
        ex55.system.coset(C(2, 0))
