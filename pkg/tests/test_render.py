from __future__ import annotations

import json

from cyclo.codes import minimal_code
from cyclo.cosets import C, Cs
from cyclo.idempotents import idempotent_closed_form
from cyclo.render import (
    code_json,
    combination_json,
    combination_text,
    cosets_text,
    dumps,
    idempotent_json,
    params_json,
    params_text,
)


def test_combination_text_orders_by_representative(ex55):
    P = ex55.params
    combo = {C(1, 0): 2, Cs(0, 1): 2, C(1, 1): 2, Cs(0, 0): 2}
    assert combination_text(P, combo) == "2 + 2χ_2 + 2χ_10 + 2χ_11"
    assert combination_text(P, {}) == "0"
    assert combination_json(P, combo) == {"0": 2, "2": 2, "10": 2, "11": 2}


def test_params_views(ex55):
    P = ex55.params
    data = params_json(P)
    assert (data["n"], data["g"], data["v"], data["m"], data["qr_case"]) == (55, 2, 12, 20, True)
    assert params_text(P)[0] == "(p, q, s, t, l) = (11, 5, 1, 1, 3)  n = 55  m = 20"


def test_cosets_text(ex35):
    lines = cosets_text(ex35.system)
    assert lines[0] == "6 cyclotomic cosets modulo 35 over F_2:"
    assert any(line.endswith("{7, 14, 21, 28}") for line in lines)


def test_idempotent_json(ex55):
    P = ex55.params
    data = idempotent_json(P, idempotent_closed_form(ex55.system, ex55.gauss, C(0, 1)))
    assert data["text"] == "θ_5(x) = 2 + 2χ_2 + 2χ_10 + 2χ_11"
    assert data["representative"] == 5
    assert data["case"] == "p-only-unit"
    assert data["deviation"] == ""
    assert len(data["coefficients"]) == 55


def test_dumps_is_stable(ex55):
    P = ex55.params
    code = minimal_code(ex55.system, ex55.gauss, C(1, 0))
    payload = code_json(P, C(1, 0), code)
    text = dumps(payload)
    assert text == dumps(json.loads(text))
    assert json.loads(text)["code"]["d"] == {"value": 22, "kind": "exact"}


def test_idempotent_json_carries_the_odd_t_deviation(ex35):
    data = idempotent_json(ex35.params, idempotent_closed_form(ex35.system, ex35.gauss, C(0, 1)))
    assert data["text"] == "θ_5(x) = 1 + χ_3 + χ_5 + χ_7"
    assert data["deviation"] == "R and N exchanged against the published nonresidue form at odd t"
