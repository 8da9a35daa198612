from __future__ import annotations

from dataclasses import dataclass

import pytest

from cyclo.cosets import CosetSystem, enumerate_cosets
from cyclo.gf import GaussData, build_gauss, find_alpha_index
from cyclo.numtheory import Parameters, validate_parameters


@dataclass(frozen=True, eq=False)
class Case:
    params: Parameters
    system: CosetSystem
    gauss: GaussData
    alpha_index: int


def _case(p, q, s, t, l, g=None, residue_sum=None) -> Case:
    params = validate_parameters(p, q, s, t, l, g)
    index = 0 if residue_sum is None else find_alpha_index(params, residue_sum)
    return Case(params, enumerate_cosets(params), build_gauss(params, index), index)


@pytest.fixture(scope="session")
def ex55() -> Case:
    """(11, 5, 1, 1, 3), g = 2, α chosen so that R = 2, N = 0."""
    return _case(11, 5, 1, 1, 3, g=2, residue_sum=2)


@pytest.fixture(scope="session")
def ex35() -> Case:
    """(7, 5, 1, 1, 2), g = 3, α chosen so that R = 1, N = 0."""
    return _case(7, 5, 1, 1, 2, g=3, residue_sum=1)


@pytest.fixture(scope="session")
def ex245() -> Case:
    return _case(7, 5, 2, 1, 2)


@pytest.fixture(scope="session")
def ex75() -> Case:
    return _case(3, 5, 1, 2, 13)


@pytest.fixture(params=["ex55", "ex35", "ex245", "ex75"])
def case(request) -> Case:
    return request.getfixturevalue(request.param)
