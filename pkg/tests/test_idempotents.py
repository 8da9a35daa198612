from __future__ import annotations

import numpy as np
import pytest

from cyclo import poly
from cyclo.cosets import C, Cs
from cyclo.idempotents import (
    all_idempotents,
    chi_eval,
    chi_eval_direct,
    chi_eval_table,
    closed_form_combination,
    closed_form_deviation,
    compare_closed_form,
    idempotent,
    idempotent_case,
    idempotent_oracle,
    minimal_polynomial,
    verify_idempotent,
)
from cyclo.render import combination_text


def _by_rep(params, family):
    return {f.label.theta_name(params): combination_text(params, f.combination) for f in family}


def test_example_55_idempotents(ex55):
    P = ex55.params
    family = all_idempotents(ex55.system, ex55.gauss, method="closed-form")
    assert _by_rep(P, family) == {
        "θ_0": "1 + χ_1 + χ_2 + χ_5 + χ_10 + χ_11",
        "θ_1": "2 + χ_2 + 2χ_10 + χ_11",
        "θ_2": "2 + χ_1 + 2χ_5 + χ_11",
        "θ_5": "2 + 2χ_2 + 2χ_10 + 2χ_11",
        "θ_10": "2 + 2χ_1 + 2χ_5 + 2χ_11",
        "θ_11": "1 + 2χ_1 + 2χ_2 + χ_5 + χ_10 + 2χ_11",
    }


def test_example_35_idempotents(ex35):
    # With R = 1, θ_5, θ_15, θ_7 and θ_0 match the reference listing; θ_1 and θ_3 trade places.
    P = ex35.params
    family = all_idempotents(ex35.system, ex35.gauss, method="closed-form")
    assert _by_rep(P, family) == {
        "θ_0": "1 + χ_1 + χ_3 + χ_5 + χ_7 + χ_15",
        "θ_1": "χ_1 + χ_7",
        "θ_3": "χ_3 + χ_7",
        "θ_5": "1 + χ_3 + χ_5 + χ_7",
        "θ_15": "1 + χ_1 + χ_7 + χ_15",
        "θ_7": "χ_1 + χ_3 + χ_7",
    }


def test_closed_form_equals_oracle(case):
    assert compare_closed_form(case.system, case.gauss) == []


def test_idempotent_algebra(case):
    family = all_idempotents(case.system, case.gauss, method="oracle")
    for e in family:
        report = verify_idempotent(case.system, case.gauss, e, family)
        assert report.ok, (e.label.symbol(), report.failures)


def test_chi_evaluation_closed_form(case):
    n = case.params.n
    for label in case.system.labels:
        direct = chi_eval_table(case.system, case.gauss, label)
        closed = np.array([chi_eval(case.system, case.gauss, label, u) for u in range(n)])
        assert np.array_equal(direct, closed), label.symbol()


def test_chi_eval_direct_single_point(ex55):
    assert chi_eval_direct(ex55.system, ex55.gauss, C(1, 0), 0) == 4 % 3
    assert chi_eval(ex55.system, ex55.gauss, C(1, 0), 0) == 1
    assert chi_eval(ex55.system, ex55.gauss, Cs(0, 1), 11) == 5 % 3
    assert chi_eval(ex55.system, ex55.gauss, Cs(0, 0), 45) == 4 * ex55.gauss.nonresidue_sum % 3


def test_checked_idempotent_uses_closed_form(ex245):
    e = idempotent(ex245.system, ex245.gauss, Cs(1, 0))
    assert e.method == "closed-form"
    assert e.combination == idempotent_oracle(ex245.system, ex245.gauss, Cs(1, 0)).combination


def test_cases(ex245):
    P = ex245.params
    assert idempotent_case(P, C(2, 1)) == "zero-coset"
    assert idempotent_case(P, C(2, 0)) == "q-only"
    assert idempotent_case(P, C(0, 1)) == "p-only-unit"
    assert idempotent_case(P, Cs(1, 1)) == "p-only-lifted"
    assert idempotent_case(P, C(0, 0)) == "mixed-unit"
    assert idempotent_case(P, Cs(1, 0)) == "mixed-lifted"


def test_zero_coset_idempotent_is_the_average(case):
    P = case.params
    inv = pow(P.n, -1, P.l)
    combo = closed_form_combination(case.system, case.gauss, C(P.s, P.t))
    assert combo == {lab: inv for lab in case.system.labels}


def test_minimal_polynomials_factor_x_n_minus_one(case):
    P = case.params
    prod = np.array([1], dtype=np.int64)
    for label in case.system.labels:
        M = minimal_polynomial(case.system, case.gauss, label)
        assert M.degree == len(case.system.coset(label))
        prod = poly.mul(prod, M.poly, P.l)
    assert np.array_equal(prod, poly.x_power_minus_one(P.n, P.l))


def test_minimal_polynomial_of_c0_is_x_minus_one(ex55):
    assert minimal_polynomial(ex55.system, ex55.gauss, C(1, 1)).poly.tolist() == [2, 1]


@pytest.mark.parametrize("method", ["closed-form", "oracle", "checked"])
def test_methods_agree_55(ex55, method):
    family = all_idempotents(ex55.system, ex55.gauss, method=method)
    assert len(family) == 6
    assert sum((e.poly for e in family[1:]), family[0].poly).coeffs.tolist() == [1] + [0] * 54


def _published_theta_0t(P, first, second):
    """θ_{0t} in the nonresidue case as usually stated: ``first`` on χ_{s-1,m} for t-m even."""
    coeff = {}
    for m in range(P.t + 1):
        even = (P.t - m) % 2 == 0
        coeff[C(P.s, m)] = (P.p - 1) // 2
        coeff[C(P.s - 1, m)] = first if even else second
        coeff[Cs(P.s - 1, m)] = second if even else first
    scale = pow(P.p * P.q**P.t, -1, P.l)
    return {lab: c * scale % P.l for lab, c in coeff.items() if c * scale % P.l}


def test_nonresidue_theta_0t_swaps_r_and_n_at_odd_t(ex35, ex75):
    # published: N on χ_{s-1,m} and R on χ*_{s-1,m} when t-m is even
    P = ex75.params
    R, N = ex75.gauss.residue_pair()
    assert not P.qr_case and P.t % 2 == 0
    assert closed_form_combination(ex75.system, ex75.gauss, C(0, P.t)) == _published_theta_0t(P, N, R)
    assert closed_form_combination(ex75.system, ex75.gauss, Cs(0, P.t)) == _published_theta_0t(P, R, N)
    assert closed_form_deviation(P, C(0, P.t)) == ""

    P = ex35.params
    R, N = ex35.gauss.residue_pair()
    assert not P.qr_case and P.t % 2 == 1 and (R, N) == (1, 0)
    theta = closed_form_combination(ex35.system, ex35.gauss, C(0, P.t))
    assert theta == _published_theta_0t(P, R, N)
    assert theta != _published_theta_0t(P, N, R)
    assert idempotent(ex35.system, ex35.gauss, C(0, P.t)).deviation == (
        "R and N exchanged against the published nonresidue form at odd t"
    )


def test_closed_form_deviation_by_case(ex55, ex245):
    assert closed_form_deviation(ex55.params, C(0, 0)) == ""
    P = ex245.params
    assert closed_form_deviation(P, C(2, 0)) == ""
    assert closed_form_deviation(P, C(0, 1)).startswith("R and N exchanged")
    lifted = closed_form_deviation(P, Cs(1, 0))
    assert lifted.startswith("R and N exchanged") and "-(p-1)/2 on every coset" in lifted
