from __future__ import annotations

import numpy as np
import pytest

from cyclo.codes import (
    SelectionMatrix,
    all_selections,
    codeword,
    duadic_code,
    generator_matrix,
    ideal_code,
    is_odd_like,
    min_distance_exhaustive,
    minimal_code,
    odd_like_min_weight,
    product_check,
    repeat,
    repetition_decomposition,
)
from cyclo.cosets import C
from cyclo.errors import BudgetExceededError, IndexRangeError, SelectionShapeError
from cyclo.ring import ring_mul


def test_repeated_parity_distance_55(ex55):
    code = minimal_code(ex55.system, ex55.gauss, C(1, 0))
    assert code.dimension == 4
    assert code.distance.value == 22 and code.distance.kind == "exact"
    assert min_distance_exhaustive(code) == 22


def test_repeated_parity_distance_35(ex35):
    code = minimal_code(ex35.system, ex35.gauss, C(1, 0))
    assert (code.dimension, code.distance.value) == (4, 14)
    assert min_distance_exhaustive(code) == 14


def test_sharded_enumeration_agrees(ex55):
    code = minimal_code(ex55.system, ex55.gauss, C(1, 0))
    assert min_distance_exhaustive(code, shard_size=16, workers=2) == 22


def test_budget_is_enforced(ex55):
    code = minimal_code(ex55.system, ex55.gauss, C(1, 0))
    with pytest.raises(BudgetExceededError) as exc:
        min_distance_exhaustive(code, budget=10)
    assert exc.value.needed == 80


def test_minimal_code_dimensions(case):
    P = case.params
    total = 0
    for label in case.system.labels:
        code = minimal_code(case.system, case.gauss, label)
        assert code.dimension == len(case.system.coset(label))
        total += code.dimension
    assert total == P.n
    zero = minimal_code(case.system, case.gauss, C(P.s, P.t))
    assert zero.distance.value == P.n and zero.provenance == "repetition code"


def test_repetition_decomposition(ex55):
    rep = repetition_decomposition(ex55.system, ex55.gauss, 0)
    assert (rep.inner.n, rep.factor) == (5, 11)
    assert rep.inner.generator.tolist() == [2, 1]
    word = np.array([1, 2, 0, 0, 0])
    assert repeat(word, 3).tolist() == [1, 2, 0, 0, 0] * 3
    with pytest.raises(IndexRangeError):
        repetition_decomposition(ex55.system, ex55.gauss, 1)


def test_duadic_dimension_and_bound(ex35, ex55):
    code = duadic_code(ex35.system, ex35.gauss, [[0, 1]])
    assert code.dimension == 20
    assert (code.distance.value, code.distance.kind) == (3, "bound")
    assert code.odd_like_period == 5

    code = duadic_code(ex55.system, ex55.gauss, [[1, 0]])
    assert code.dimension == 30
    assert code.distance.value == 4


def test_anchored_duadic_code(ex245):
    P = ex245.params
    code = duadic_code(ex245.system, ex245.gauss, [[0, 1]], anchor=(1, 0))
    assert code.dimension == 20
    assert code.distance.value == 7 * 3
    assert (code.inner_length, code.odd_like_period) == (35, 5)

    code = duadic_code(ex245.system, ex245.gauss, [[0, 0], [1, 1]])
    assert code.dimension == (49 + 1) * 5 // 2
    assert code.distance.value == 7


def test_selection_matrix_validation(ex35):
    P = ex35.params
    with pytest.raises(SelectionShapeError):
        SelectionMatrix.build(P, [[0], [1]])
    with pytest.raises(SelectionShapeError):
        SelectionMatrix.build(P, [[0, 2]])
    with pytest.raises(IndexRangeError):
        SelectionMatrix.build(P, [[0, 1]], anchor=(1, 0))
    assert len(all_selections(P)) == 4
    sel = SelectionMatrix.build(P, [[1, 0]])
    assert [lab.symbol() for lab in sel.chosen()] == ["C*(0,0)", "C(0,1)"]


def test_product_of_word_and_its_multiple(case):
    P = case.params
    rng = np.random.default_rng(7)
    for sel in all_selections(P)[:4]:
        code = duadic_code(case.system, case.gauss, sel)
        for _ in range(3):
            word = codeword(code, rng.integers(0, P.l, size=code.dimension))
            assert product_check(code, P, word)


def test_codewords_are_multiples_of_the_generator(ex35):
    code = duadic_code(ex35.system, ex35.gauss, [[1, 1]])
    G = generator_matrix(code)
    assert G.shape == (20, 35)
    word = codeword(code, [1, 0, 1])
    expected = np.zeros(35, dtype=np.int64)
    expected[: len(code.generator)] += code.generator
    expected[2 : 2 + len(code.generator)] += code.generator
    assert word.tolist() == (expected % 2).tolist()


def test_odd_like_detection():
    assert is_odd_like(np.ones(35, dtype=np.int64), 5, 2)
    word = np.zeros(35, dtype=np.int64)
    word[[0, 5]] = 1
    assert not is_odd_like(word, 5, 2)


def test_odd_like_sampling_respects_bound(ex55):
    code = duadic_code(ex55.system, ex55.gauss, [[0, 0]])
    result = odd_like_min_weight(code, budget=1000, samples=2000)
    assert result.kind == "sampled"
    assert result.examined == 2000
    assert result.consistent
    assert result.verdict == "bound-consistent"


@pytest.mark.slow
def test_odd_like_square_root_bound_35(ex35):
    for sel in all_selections(ex35.params):
        code = duadic_code(ex35.system, ex35.gauss, sel)
        result = odd_like_min_weight(code)
        assert result.kind == "exact"
        assert result.value >= 3
        assert result.verdict == "exact"


def test_ideal_code(ex55):
    code, theta = ideal_code(ex55.system, ex55.gauss, [C(1, 0), C(1, 1)])
    assert code.dimension == 5
    assert ring_mul(theta, theta) == theta
