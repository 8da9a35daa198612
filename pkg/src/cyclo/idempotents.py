"""Minimal polynomials and primitive idempotents of F_l[x]/(x^n - 1).

θ_L is the idempotent with θ_L(α^u) = 1 exactly for u in C_L. Its
coefficient at x^u is n^{-1} χ_L(α^{-u}), constant on cosets, so

    θ_L = Σ_Z n^{-1} χ_L(α^{-z}) χ_Z        (z any element of Z).

``idempotent_oracle`` evaluates that sum in the extension field. The closed
form replaces χ_L(α^u) by a product of a p-side and a q-side sum:

    p-side  1                                  if i = s
            φ(p^{s-i})/2                       if p^{s-i} | u
            p^{s-i-1} (R or N)                 if p^{s-i-1} || u
            0                                  otherwise
    q-side  1                                  if j = t
            φ(q^{t-j})                         if q^{t-j} | u
            -q^{t-j-1}                         if q^{t-j-1} || u
            0                                  otherwise

R is taken when the quadratic character of the p-unit part of u, times the
class (q/p)^t of the residue set describing C_L, is +1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from cyclo.cosets import CosetLabel, CosetSystem, label_class
from cyclo.errors import ArithmeticConsistencyError
from cyclo.gf import ExtElement, GaussData
from cyclo.numtheory import Parameters, legendre, phi, valuation
from cyclo.ring import RingElement, chi, linear_combination, one, ring_mul, zero

logger = logging.getLogger(__name__)

_CHUNK = 64


# =========================
# Minimal polynomials
# =========================

@dataclass(frozen=True, eq=False)
class MinimalPolynomial:
    label: CosetLabel
    poly: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.poly) - 1


@lru_cache(maxsize=1024)
def minimal_polynomial(system: CosetSystem, gauss: GaussData, label: CosetLabel) -> MinimalPolynomial:
    """Π_{e ∈ C}(x - α^e), projected to F_l."""
    ext = gauss.ext
    l, m = ext.l, ext.m
    coset = system.coset(label)
    coeffs = np.zeros((1, m), dtype=np.int64)
    coeffs[0, 0] = 1
    for e in coset.elements:
        root = gauss.power(e)
        mat = ext.multiplication_matrix(root)
        shifted = np.zeros((len(coeffs) + 1, m), dtype=np.int64)
        shifted[1:] = coeffs
        shifted[:-1] -= coeffs @ mat
        coeffs = shifted % l
    if coeffs[:, 1:].any():
        raise ArithmeticConsistencyError(f"M for {label.symbol()} has coefficients outside F_{l}")
    poly = coeffs[:, 0].copy()
    if poly[-1] != 1:
        raise ArithmeticConsistencyError(f"M for {label.symbol()} is not monic")
    return MinimalPolynomial(label=label, poly=poly)


# =========================
# Idempotents
# =========================

@dataclass(frozen=True, eq=False)
class Idempotent:
    label: CosetLabel
    poly: RingElement
    combination: Dict[CosetLabel, int] = field(default_factory=dict)
    case: str = ""
    method: str = "closed-form"
    deviation: str = ""


def idempotent_case(params: Parameters, label: CosetLabel) -> str:
    s, t = params.s, params.t
    if label.i == s and label.j == t:
        return "zero-coset"
    if label.i == s:
        return "q-only"
    if label.j == t:
        return "p-only-unit" if label.i == 0 else "p-only-lifted"
    return "mixed-unit" if label.i == 0 else "mixed-lifted"


def closed_form_deviation(params: Parameters, label: CosetLabel) -> str:
    """Where the closed form for θ at ``label`` departs from the published one; empty if it does not."""
    notes = []
    if label.i < params.s and not params.qr_case and params.t % 2 == 1:
        notes.append("R and N exchanged against the published nonresidue form at odd t")
    if 1 <= label.i < params.s and label.j < params.t:
        notes.append("-(p-1)/2 on every coset at q-level t-j-1 and p-level >= s-i, published at level s-i only")
    return "; ".join(notes)


def chi_combination(system: CosetSystem, poly: RingElement) -> Dict[CosetLabel, int]:
    """Coefficients a_Z with poly = Σ a_Z χ_Z; fails if poly is not constant on a coset."""
    out: Dict[CosetLabel, int] = {}
    for coset in system.cosets:
        vals = poly.coeffs[coset.as_array()]
        if (vals != vals[0]).any():
            raise ArithmeticConsistencyError(f"coefficients vary over {coset.label.symbol()}")
        if vals[0]:
            out[coset.label] = int(vals[0])
    return out


def from_combination(system: CosetSystem, combination: Dict[CosetLabel, int]) -> RingElement:
    P = system.params
    return linear_combination(((c, chi(system, lab)) for lab, c in combination.items()), P.n, P.l)


def _direct_sums(system: CosetSystem, gauss: GaussData, label: CosetLabel, us: np.ndarray) -> np.ndarray:
    """Rows Σ_{e ∈ C} α^{u e} for each u, as extension-field coordinates."""
    n, l = system.params.n, system.params.l
    elems = system.coset(label).as_array()
    out = np.zeros((len(us), gauss.ext.m), dtype=np.int64)
    for start in range(0, len(us), _CHUNK):
        chunk = us[start : start + _CHUNK]
        idx = (chunk[:, None] * elems[None, :]) % n
        out[start : start + len(chunk)] = gauss.powers[idx].sum(axis=1) % l
    return out


def idempotent_oracle(system: CosetSystem, gauss: GaussData, label: CosetLabel) -> Idempotent:
    """θ = Σ_u ε_u x^u with ε_u = n^{-1} Σ_{e ∈ C} α^{-u e}."""
    P = system.params
    n, l = P.n, P.l
    us = (-np.arange(n, dtype=np.int64)) % n
    sums = _direct_sums(system, gauss, label, us)
    if sums[:, 1:].any():
        bad = int(np.flatnonzero(sums[:, 1:].any(axis=1))[0])
        raise ArithmeticConsistencyError(f"ε_{bad} for {label.symbol()} is not in F_{l}")
    eps = sums[:, 0] * pow(n, -1, l) % l
    poly = RingElement(eps, l)
    return Idempotent(
        label=label,
        poly=poly,
        combination=chi_combination(system, poly),
        case=idempotent_case(P, label),
        method="oracle",
    )


# =========================
# χ evaluation
# =========================

def _unit_class(u: int, p: int) -> int:
    while u % p == 0:
        u //= p
    return legendre(u, p)


def _p_side(P: Parameters, gauss: GaussData, label: CosetLabel, u: int) -> int:
    s, p, i = P.s, P.p, label.i
    if i == s:
        return 1
    nu = valuation(u % P.p_power, p, s)
    if nu >= s - i:
        return phi(p ** (s - i)) // 2
    if nu == s - i - 1:
        R, N = gauss.residue_pair()
        additive_class = label_class(P, label) * P.q_class**P.t
        g = R if _unit_class(u % P.p_power, p) * additive_class == 1 else N
        return p ** (s - i - 1) * g
    return 0


def _q_side(P: Parameters, label: CosetLabel, u: int) -> int:
    t, q, j = P.t, P.q, label.j
    if j == t:
        return 1
    nu = valuation(u % P.q_power, q, t)
    if nu >= t - j:
        return phi(q ** (t - j))
    if nu == t - j - 1:
        return -(q ** (t - j - 1))
    return 0


def chi_eval(system: CosetSystem, gauss: GaussData, label: CosetLabel, u: int) -> int:
    """χ_L(α^u) in F_l from the divisibility class of u."""
    P = system.params
    u %= P.n
    return _p_side(P, gauss, label, u) * _q_side(P, label, u) % P.l


def chi_eval_direct(system: CosetSystem, gauss: GaussData, label: CosetLabel, u: int) -> int:
    row = _direct_sums(system, gauss, label, np.array([u % system.params.n], dtype=np.int64))[0]
    return ExtElement(gauss.ext, row).to_scalar()


def chi_eval_table(system: CosetSystem, gauss: GaussData, label: CosetLabel) -> np.ndarray:
    """χ_L(α^u) for every u < n by direct summation."""
    n = system.params.n
    sums = _direct_sums(system, gauss, label, np.arange(n, dtype=np.int64))
    if sums[:, 1:].any():
        raise ArithmeticConsistencyError(f"χ for {label.symbol()} leaves F_{system.params.l}")
    return sums[:, 0]


# =========================
# Closed form
# =========================

def _p_weight(P: Parameters, gauss: GaussData, L: CosetLabel, Z: CosetLabel) -> Optional[int]:
    """p-side of the coefficient of χ_Z in θ_L, without the p-power; None if zero."""
    s, i = P.s, L.i
    if i == s:
        return 1
    if Z.i >= s - i:
        return (P.p - 1) // 2
    if Z.i == s - i - 1:
        R, N = gauss.residue_pair()
        # elements of Z have p-class cls(Z); -z has the opposite one
        additive_class = label_class(P, L) * P.q_class**P.t
        return R if -label_class(P, Z) * additive_class == 1 else N
    return None


def _q_weight(P: Parameters, L: CosetLabel, Z: CosetLabel) -> Optional[int]:
    t, j = P.t, L.j
    if j == t:
        return 1
    if Z.j >= t - j:
        return P.q - 1
    if Z.j == t - j - 1:
        return -1
    return None


def closed_form_combination(system: CosetSystem, gauss: GaussData, label: CosetLabel) -> Dict[CosetLabel, int]:
    P = system.params
    l = P.l
    label.check(P)
    scale = pow(P.p ** min(label.i + 1, P.s) * P.q ** min(label.j + 1, P.t), -1, l)
    out: Dict[CosetLabel, int] = {}
    for Z in system.labels:
        a = _p_weight(P, gauss, label, Z)
        b = _q_weight(P, label, Z)
        if a is None or b is None:
            continue
        c = a * b * scale % l
        if c:
            out[Z] = c
    return out


def idempotent_closed_form(system: CosetSystem, gauss: GaussData, label: CosetLabel) -> Idempotent:
    combination = closed_form_combination(system, gauss, label)
    return Idempotent(
        label=label,
        poly=from_combination(system, combination),
        combination=combination,
        case=idempotent_case(system.params, label),
        deviation=closed_form_deviation(system.params, label),
    )


def idempotent(system: CosetSystem, gauss: GaussData, label: CosetLabel) -> Idempotent:
    """Closed form, replaced by the oracle (with a warning) if the two disagree."""
    closed = idempotent_closed_form(system, gauss, label)
    oracle = idempotent_oracle(system, gauss, label)
    if closed.poly != oracle.poly:
        logger.warning(
            "closed form for θ at %s (%s case) disagrees with the oracle: %s vs %s",
            label.symbol(), closed.case, closed.combination, oracle.combination,
        )
        return oracle
    return closed


def all_idempotents(system: CosetSystem, gauss: GaussData, method: str = "closed-form") -> List[Idempotent]:
    build = {"closed-form": idempotent_closed_form, "oracle": idempotent_oracle, "checked": idempotent}[method]
    return [build(system, gauss, label) for label in system.labels]


# =========================
# Verification
# =========================

def evaluate_spectrum(system: CosetSystem, gauss: GaussData, poly: RingElement) -> np.ndarray:
    """Rows poly(α^u) for u = 0..n-1, as extension-field coordinates."""
    n, l = system.params.n, system.params.l
    support = poly.support()
    coeffs = poly.coeffs[support]
    out = np.zeros((n, gauss.ext.m), dtype=np.int64)
    us = np.arange(n, dtype=np.int64)
    for start in range(0, n, _CHUNK):
        chunk = us[start : start + _CHUNK]
        idx = (chunk[:, None] * support[None, :]) % n
        out[start : start + len(chunk)] = np.einsum("k,ukm->um", coeffs, gauss.powers[idx]) % l
    return out


@dataclass
class IdempotentReport:
    label: CosetLabel
    idempotent: bool
    spectrum: bool
    orthogonal: Optional[bool] = None
    sums_to_one: Optional[bool] = None
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        flags = [self.idempotent, self.spectrum, self.orthogonal, self.sums_to_one]
        return all(f for f in flags if f is not None)


def verify_idempotent(
    system: CosetSystem,
    gauss: GaussData,
    e: Idempotent,
    family: Optional[Sequence[Idempotent]] = None,
) -> IdempotentReport:
    P = system.params
    failures: List[str] = []

    is_idem = ring_mul(e.poly, e.poly) == e.poly
    if not is_idem:
        failures.append("e^2 != e")

    spectrum = evaluate_spectrum(system, gauss, e.poly)
    expected = np.zeros_like(spectrum)
    expected[system.coset(e.label).as_array(), 0] = 1
    spec_ok = bool(np.array_equal(spectrum, expected))
    if not spec_ok:
        wrong = np.flatnonzero((spectrum != expected).any(axis=1))
        failures.append(f"θ(α^u) wrong at u in {wrong[:8].tolist()}")

    orthogonal = total = None
    if family is not None:
        orthogonal = all(
            ring_mul(e.poly, other.poly).is_zero() for other in family if other.label != e.label
        )
        if not orthogonal:
            failures.append("θ·θ' != 0 for some other label")
        acc = zero(P.n, P.l)
        for other in family:
            acc = acc + other.poly
        total = acc == one(P.n, P.l)
        if not total:
            failures.append("Σθ != 1")

    return IdempotentReport(
        label=e.label,
        idempotent=is_idem,
        spectrum=spec_ok,
        orthogonal=orthogonal,
        sums_to_one=total,
        failures=failures,
    )


def compare_closed_form(system: CosetSystem, gauss: GaussData, labels: Optional[Iterable[CosetLabel]] = None) -> List[CosetLabel]:
    """Labels whose closed-form idempotent differs from the oracle."""
    bad = []
    for label in labels or system.labels:
        closed = idempotent_closed_form(system, gauss, label)
        oracle = idempotent_oracle(system, gauss, label)
        if closed.poly != oracle.poly:
            logger.warning("θ at %s (%s case): closed %s, oracle %s", label.symbol(), closed.case,
                           closed.combination, oracle.combination)
            bad.append(label)
    return bad
