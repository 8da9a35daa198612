from __future__ import annotations

import numpy as np
import pytest

from cyclo import poly
from cyclo.errors import UnreachableResidueError
from cyclo.gf import (
    ExtField,
    build_gauss,
    find_alpha_index,
    find_irreducible,
    gauss_data,
    primitive_nth_root,
    splitting_field,
)
from cyclo.numtheory import validate_parameters


def test_poly_division_and_gcd():
    l = 3
    a = poly.mul(np.array([1, 1]), np.array([2, 0, 1]), l)  # (1 + x)(2 + x^2)
    q, r = poly.divmod_poly(a, np.array([1, 1]), l)
    assert q.tolist() == [2, 0, 1]
    assert len(r) == 0
    assert poly.gcd_poly(a, np.array([1, 1]), l).tolist() == [1, 1]
    assert poly.x_power_minus_one(4, l).tolist() == [2, 0, 0, 0, 1]
    assert poly.geometric(5, 3).tolist() == [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]
    assert poly.add(np.array([1, 2]), np.array([2, 1, 1]), l).tolist() == [0, 0, 1]
    assert poly.sub(np.array([1, 1]), np.array([1, 1]), l).tolist() == []


def test_find_irreducible_order():
    assert find_irreducible(2, 1).tolist() == [0, 1]
    assert find_irreducible(3, 2).tolist() == [1, 0, 1]
    assert find_irreducible(2, 2).tolist() == [1, 1, 1]
    assert find_irreducible(2, 3).tolist() == [1, 1, 0, 1]
    assert find_irreducible(5, 2).tolist() == [1, 1, 1]


def test_field_arithmetic():
    F = ExtField(3, 2, np.array([1, 0, 1]))
    x = F.generator()
    assert x * x == F.scalar(2)
    assert (x**4).is_one()
    assert x * x.inverse() == 1
    assert (x + 1) * (x + 2) == 1
    assert F.from_index(5).coeffs.tolist() == [2, 1]


def test_multiplication_matrix_matches_mulmod():
    F = ExtField(2, 4, find_irreducible(2, 4))
    a, b = F.from_index(11), F.from_index(6)
    assert np.array_equal(a.coeffs @ F.multiplication_matrix(b) % 2, (a * b).coeffs)


def test_alpha_has_exact_order():
    P = validate_parameters(11, 5, 1, 1, 3)
    ext = splitting_field(P)
    alpha = primitive_nth_root(P, ext)
    assert (alpha**P.n).is_one()
    assert not (alpha ** (P.n // P.p)).is_one()
    assert not (alpha ** (P.n // P.q)).is_one()


def test_gauss_sum_relations(case):
    G, P = case.gauss, case.params
    l = P.l
    R, N = G.residue_sum, G.nonresidue_sum
    assert (R + N) % l == l - 1
    assert (R * N - (P.p + 1) // 4) % l == 0
    assert (G.delta * G.delta + P.p) % l == 0
    assert G.residue_pair() == (R, N)


def test_example_gauss_values(ex55, ex35):
    assert (ex55.gauss.residue_sum, ex55.gauss.nonresidue_sum) == (2, 0)
    assert ex55.gauss.delta == 2
    assert (ex35.gauss.residue_sum, ex35.gauss.nonresidue_sum) == (1, 0)


def test_alpha_to_the_g_swaps_gauss_sums(ex55):
    P, G = ex55.params, ex55.gauss
    swapped = gauss_data(P, G.alpha ** P.g, G.ext)
    assert (swapped.residue_sum, swapped.nonresidue_sum) == (G.nonresidue_sum, G.residue_sum)


def test_alpha_choice_is_deterministic():
    P = validate_parameters(7, 5, 1, 1, 2, g=3)
    a = build_gauss(P, 1)
    b = build_gauss(P, 1)
    assert np.array_equal(a.powers, b.powers)


def test_products_stay_exact_for_large_l():
    l = 1048573
    a0, a1, b0, b1 = l - 1, l - 2, l - 3, l - 4
    F = ExtField(l, 2, np.array([2, 0, 1]))
    got = F.mulmod(np.array([a0, a1]), np.array([b0, b1]))
    assert got.tolist() == [(a0 * b0 - 2 * a1 * b1) % l, (a0 * b1 + a1 * b0) % l]
    assert poly.mul(np.array([a0, a1]), np.array([b0, b1]), l).tolist() == [
        a0 * b0 % l, (a0 * b1 + a1 * b0) % l, a1 * b1 % l,
    ]


def test_ext_field_refuses_an_overflowing_characteristic():
    with pytest.raises(ValueError, match="overflow int64"):
        ExtField(2**61 - 1, 2, np.array([3, 0, 1]))


def test_splitting_field_search_finishes_for_large_l():
    P = validate_parameters(11, 5, 1, 1, 1048613)
    G = build_gauss(P)
    assert G.ext.m == 20
    assert G.ext.modulus.max() == 1
    assert (G.residue_sum + G.nonresidue_sum) % P.l == P.l - 1
    assert (G.alpha**P.n).is_one()


def test_unreachable_residue_sum_names_the_pair(ex55):
    with pytest.raises(UnreachableResidueError, match=r"\{R, N\} = \{0, 2\}") as exc:
        find_alpha_index(ex55.params, 1)
    assert exc.value.reachable == (0, 2)
    assert find_alpha_index(ex55.params, 2) == ex55.alpha_index
