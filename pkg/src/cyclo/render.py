"""Text and JSON views of cosets, χ polynomials, idempotents and codes.

Text output uses the representative-based names (C_5, χ_5, θ_5) so a listing
can be read side by side with hand computations.
"""

from __future__ import annotations

import json
from typing import Any, Dict, Iterable, List, Mapping, Sequence

from cyclo.codes import CodeSpec
from cyclo.cosets import Coset, CosetLabel, CosetSystem, representative
from cyclo.gf import GaussData
from cyclo.idempotents import Idempotent
from cyclo.numtheory import Parameters
from cyclo.verify import VerificationReport


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def _ordered(params: Parameters, labels: Iterable[CosetLabel]) -> List[CosetLabel]:
    return sorted(labels, key=lambda lab: representative(params, lab))


def combination_text(params: Parameters, combination: Mapping[CosetLabel, int]) -> str:
    """e.g. ``2 + 2χ_2 + 2χ_10 + 2χ_11``."""
    parts = []
    for lab in _ordered(params, combination):
        c = combination[lab]
        if lab.is_zero(params):
            parts.append(str(c))
        else:
            parts.append(f"{'' if c == 1 else c}{lab.chi_name(params)}")
    return " + ".join(parts) if parts else "0"


def combination_json(params: Parameters, combination: Mapping[CosetLabel, int]) -> Dict[str, int]:
    return {str(representative(params, lab)): int(c) for lab, c in combination.items()}


# =========================
# JSON
# =========================

def params_json(params: Parameters) -> Dict[str, Any]:
    return {
        "p": params.p, "q": params.q, "s": params.s, "t": params.t, "l": params.l,
        "n": params.n, "g": params.g, "v": params.v,
        "g1": params.g1, "g2": params.g2,
        "m": params.extension_degree,
        "qr_case": params.qr_case,
        "coset_count": params.coset_count,
    }


def label_json(params: Parameters, label: CosetLabel) -> Dict[str, Any]:
    return {
        "i": label.i,
        "j": label.j,
        "starred": label.starred,
        "symbol": label.symbol(),
        "representative": representative(params, label),
    }


def coset_json(params: Parameters, coset: Coset) -> Dict[str, Any]:
    out = label_json(params, coset.label)
    out["size"] = len(coset)
    out["elements"] = list(coset.elements)
    return out


def gauss_json(gauss: GaussData) -> Dict[str, Any]:
    return {
        "R": gauss.residue_sum,
        "N": gauss.nonresidue_sum,
        "delta": gauss.delta,
        "alpha": [int(c) for c in gauss.alpha.coeffs],
        "modulus": [int(c) for c in gauss.ext.modulus],
    }


def idempotent_json(params: Parameters, e: Idempotent) -> Dict[str, Any]:
    out = label_json(params, e.label)
    out.update(
        case=e.case,
        method=e.method,
        deviation=e.deviation,
        combination=combination_json(params, e.combination),
        text=f"{e.label.theta_name(params)}(x) = {combination_text(params, e.combination)}",
        coefficients=e.poly.to_json(),
    )
    return out


def code_json(params: Parameters, label: CosetLabel, code: CodeSpec) -> Dict[str, Any]:
    out = label_json(params, label)
    out["code"] = code.to_json()
    return out


def report_json(report: VerificationReport) -> Dict[str, Any]:
    return report.payload()


# =========================
# Text
# =========================

def params_text(params: Parameters) -> List[str]:
    kind = "residue" if params.qr_case else "non-residue"
    return [
        f"(p, q, s, t, l) = {params.as_tuple()}  n = {params.n}  m = {params.extension_degree}",
        f"g = {params.g}  v = {params.v}  q is a quadratic {kind} mod p",
    ]


def cosets_text(system: CosetSystem) -> List[str]:
    P = system.params
    lines = [f"{len(system)} cyclotomic cosets modulo {P.n} over F_{P.l}:"]
    for coset in sorted(system.cosets, key=lambda c: c.representative):
        body = ", ".join(str(e) for e in coset.elements)
        lines.append(f"  {coset.label.name(P):<6} {coset.label.symbol():<9} |{len(coset)}| = {{{body}}}")
    return lines


def idempotents_text(params: Parameters, gauss: GaussData, family: Iterable[Idempotent]) -> List[str]:
    lines = [f"R = {gauss.residue_sum}, N = {gauss.nonresidue_sum}, δ = {gauss.delta}"]
    for e in sorted(family, key=lambda e: representative(params, e.label)):
        lines.append(f"  {e.label.theta_name(params)}(x) = {combination_text(params, e.combination)}")
    return lines


def _distance_text(d: Mapping[str, Any] | None) -> str:
    if not d:
        return "d unknown"
    return f"d = {d['value']}" if d["kind"] == "exact" else f"d >= {d['value']}"


def codes_text(params: Parameters, minimal: Sequence[Mapping[str, Any]], duadic: Sequence[Mapping[str, Any]]) -> List[str]:
    lines = [f"Minimal codes of length {params.n} over F_{params.l}:"]
    for row in minimal:
        code = row["code"]
        name = f"M_{row['representative']}"
        line = f"  {name:<7} {row['symbol']:<9} [{code['n']}, {code['k']}]  {_distance_text(code['d'])}"
        computed = row.get("computed_distance")
        if computed is not None:
            line += f"  (enumerated: {computed['value'] if computed['value'] is not None else 'over budget'})"
        if code["provenance"]:
            line += f"  {code['provenance']}"
        lines.append(line)
    lines.append("Duadic-type codes:")
    for row in duadic:
        code = row["code"]
        line = f"  A = {row['A']}  [{code['n']}, {code['k']}]  {_distance_text(code['d'])}"
        odd = row.get("odd_like")
        if odd is not None:
            mark = "✗" if odd["verdict"] == "bound-violated" else "✓"
            line += f"  {mark} odd-like min weight {odd['value']} ({odd['kind']}, {odd['examined']} words)"
        lines.append(line)
    return lines
