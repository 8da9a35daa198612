from __future__ import annotations

import numpy as np
import pytest

from cyclo.cosets import C, negated_label
from cyclo.ring import (
    RingElement,
    chi,
    chi_table,
    from_json,
    linear_combination,
    monomial,
    one,
    power,
    ring_mul,
    substitute,
    zero,
)


def test_chi_11_squares_to_one(ex55):
    x11 = chi(ex55.system, C(1, 0))
    assert x11.to_text() == "1*x^11 + 1*x^22 + 1*x^33 + 1*x^44"
    assert ring_mul(x11, x11) == one(55, 3)


def test_cyclic_wraparound():
    a = monomial(3, 5, 7)
    b = monomial(4, 5, 7, c=2)
    assert (a * b) == monomial(2, 5, 7, c=2)
    assert power(monomial(1, 5, 7), 5) == one(5, 7)
    assert (a * 3).coeffs.tolist() == [0, 0, 0, 3, 0]


def test_arithmetic_reduces_mod_l():
    a = RingElement(np.array([2, 1, 0]), 3)
    b = RingElement(np.array([2, 2, 2]), 3)
    assert (a + b).coeffs.tolist() == [1, 0, 2]
    assert (a - b).coeffs.tolist() == [0, 2, 1]
    assert (-a).coeffs.tolist() == [1, 2, 0]
    assert (a - a).is_zero()
    assert a.weight() == 2
    assert a.support().tolist() == [0, 1]


def test_mismatched_rings_are_rejected():
    with pytest.raises(ValueError):
        one(5, 3) + one(7, 3)


def test_json_round_trip():
    a = RingElement(np.array([1, 0, 2, 2]), 3)
    assert from_json(a.to_json(), 3) == a
    assert from_json("[1, 0, 2, 2]", 3) == a


def test_chi_table_sums_to_all_ones(case):
    P = case.params
    total = linear_combination(((1, c) for c in chi_table(case.system).values()), P.n, P.l)
    assert total == RingElement(np.ones(P.n, dtype=np.int64), P.l)


def test_multiplier_g_stars_labels(case):
    P, system = case.params, case.system
    for label in system.labels:
        image = substitute(chi(system, label), P.g)
        if label.i == P.s:
            assert image == chi(system, label)
        else:
            assert image == chi(system, negated_label(P, label))


def test_multiplier_l_fixes_every_chi(case):
    P, system = case.params, case.system
    for label in system.labels:
        assert substitute(chi(system, label), P.l) == chi(system, label)


def test_zero_and_one():
    assert zero(4, 5).is_zero()
    assert ring_mul(one(4, 5), monomial(2, 4, 5)) == monomial(2, 4, 5)
