"""Product identities χ_X χ_Y = Σ N_Z χ_Z.

``IDENTITY_RULES`` lists the closed-form right-hand sides branch by branch.
``verify_identity`` checks one of them either in F_l[x]/(x^n - 1) or, with
``over="integers"``, as an exact multiset identity in Z[x]/(x^n - 1).
``structure_expansion`` derives the integer coefficients N_Z of any product
from the cyclotomic-number product formula.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from cyclo.cosets import C, CosetLabel, CosetSystem, Cs, label_class, negated_label, with_class
from cyclo.cyclotomy import F, Indices, cyclotomic_number, half, hi, lo, qd
from cyclo.errors import IndexRangeError
from cyclo.numtheory import Parameters
from cyclo.ring import RingElement, chi, linear_combination, ring_mul

logger = logging.getLogger(__name__)

Terms = List[Tuple[int, CosetLabel]]


@dataclass(frozen=True)
class IdentityRule:
    key: str
    grid: Callable[[Parameters], Iterator[Indices]]
    left: Callable[[Parameters, Indices], CosetLabel]
    right: Callable[[Parameters, Indices], CosetLabel]
    rhs: Callable[[Parameters, Indices], Terms]
    when: Optional[Callable[[Parameters, Indices], bool]] = None
    deviation: str = ""

    def instances(self, params: Parameters) -> Iterator[Indices]:
        for ix in self.grid(params):
            if self.when is None or self.when(params, ix):
                yield ix


# =========================
# Index grids
# =========================

def _g_ij(P):
    for i in range(P.s):
        for j in range(P.t):
            yield {"i": i, "j": j}


def _g_i(P):
    for i in range(P.s):
        yield {"i": i}


def _g_j(P):
    for j in range(P.t):
        yield {"j": j}


def _g_j_j2(P):
    for j in range(P.t):
        for j2 in range(j + 1, P.t + 1):
            yield {"j": j, "j2": j2}


def _g_i_j_j2(P):
    for i in range(P.s):
        for j in range(P.t):
            for j2 in range(j + 1, P.t + 1):
                yield {"i": i, "j": j, "j2": j2}


def _g_i_j2_below(P):
    for i in range(P.s):
        for j in range(1, P.t + 1):
            for j2 in range(j):
                yield {"i": i, "j": j, "j2": j2}


def _g_i_i2_j_j2(P):
    for i in range(P.s):
        for i2 in range(i + 1, P.s):
            for j in range(P.t):
                for j2 in range(j + 1, P.t + 1):
                    yield {"i": i, "i2": i2, "j": j, "j2": j2}


def _g_i_i2_j2_below(P):
    for i in range(P.s):
        for i2 in range(i + 1, P.s):
            for j in range(1, P.t + 1):
                for j2 in range(j):
                    yield {"i": i, "i2": i2, "j": j, "j2": j2}


def _g_i_i2_j(P):
    for i in range(P.s):
        for i2 in range(i + 1, P.s):
            for j in range(P.t):
                yield {"i": i, "i2": i2, "j": j}


def _g_i_i2(P):
    for i in range(P.s):
        for i2 in range(i + 1, P.s):
            yield {"i": i, "i2": i2}


# =========================
# Right-hand sides
# =========================

def _both(i: int, j: int) -> List[CosetLabel]:
    return [C(i, j), Cs(i, j)]


def _upper_sum(P: Parameters, i: int, j: int) -> List[CosetLabel]:
    """(C + C*)(k, j) for i < k < s, plus C(s, j)."""
    labels = [lab for k in range(i + 1, P.s) for lab in _both(k, j)]
    return labels + [C(P.s, j)]


def _square(P: Parameters, X: CosetLabel) -> Terms:
    i, j, cls = X.i, X.j, label_class(P, X)
    terms: Terms = []
    for m in range(j, P.t + 1):
        f = qd(P, j) if m == j else F(P, j)
        terms.append((lo(P, i) * f, with_class(P, i, m, cls)))
        terms.append((hi(P, i) * f, with_class(P, i, m, -cls)))
    return terms


def _mixed_square(P: Parameters, i: int, j: int) -> Terms:
    H = half(P, i)
    terms: Terms = [(lo(P, i) * qd(P, j), lab) for lab in _both(i, j)]
    for m in range(j + 1, P.t + 1):
        terms += [(lo(P, i) * F(P, j), lab) for lab in _both(i, m)]
    terms += [(H * qd(P, j), lab) for lab in _upper_sum(P, i, j)]
    for m in range(j + 1, P.t + 1):
        terms += [(H * F(P, j), lab) for lab in _upper_sum(P, i, m)]
    return terms


def _top_square(P: Parameters, j: int) -> Terms:
    terms: Terms = [(qd(P, j), C(P.s, j))]
    terms += [(F(P, j), C(P.s, m)) for m in range(j + 1, P.t + 1)]
    return terms


def _same_i(P: Parameters, X: CosetLabel, Y: CosetLabel) -> Terms:
    """X at (i, j), Y at (i, j'), j < j'."""
    i, j, j2 = X.i, X.j, Y.j
    cls = label_class(P, X)
    if label_class(P, Y) == cls:
        return [
            (lo(P, i) * F(P, j2), with_class(P, i, j, cls)),
            (hi(P, i) * F(P, j2), with_class(P, i, j, -cls)),
        ]
    terms: Terms = [(lo(P, i) * F(P, j2), lab) for lab in _both(i, j)]
    terms += [(half(P, i) * F(P, j2), lab) for lab in _upper_sum(P, i, j)]
    return terms


def _lab(starred: bool, i: str, j: str):
    def build(P: Parameters, ix: Indices) -> CosetLabel:
        return CosetLabel(ix[i], P.t if j == "t" else ix[j], starred)
    return build


def _top(j: str):
    def build(P: Parameters, ix: Indices) -> CosetLabel:
        return C(P.s, ix[j])
    return build


_LOWER_TARGET = "right side is the coset at (i,j') with the class of {ma}(i,j), published as {ma}(i,j')"

def _square_rules() -> List["IdentityRule"]:
    rules = []
    for star, mark in ((False, "C"), (True, "C*")):
        X = _lab(star, "i", "j")
        rules.append(IdentityRule(f"{mark}(i,j)^2", _g_ij, X, X, lambda P, ix, X=X: _square(P, X(P, ix))))
        Xt = _lab(star, "i", "t")
        other = _lab(not star, "i", "t")
        rules.append(IdentityRule(
            f"{mark}(i,t)^2", _g_i, Xt, Xt,
            lambda P, ix, Xt=Xt, other=other: [(lo(P, ix["i"]), Xt(P, ix)), (hi(P, ix["i"]), other(P, ix))]))
    rules += [
        IdentityRule("C(i,j)*C*(i,j)", _g_ij, _lab(False, "i", "j"), _lab(True, "i", "j"),
                     lambda P, ix: _mixed_square(P, ix["i"], ix["j"]),
                     deviation="C(s,m) coefficient is φ(p^{s-i})/2 φ(q^{t-j}), published with φ(q^{s-i})/2"),
        IdentityRule("C(s,j)^2", _g_j, _top("j"), _top("j"), lambda P, ix: _top_square(P, ix["j"])),
        IdentityRule(
            "C(i,t)*C*(i,t)", _g_i, _lab(False, "i", "t"), _lab(True, "i", "t"),
            lambda P, ix: [(lo(P, ix["i"]), lab) for lab in _both(ix["i"], P.t)]
            + [(half(P, ix["i"]), lab) for lab in _upper_sum(P, ix["i"], P.t)]),
    ]
    return rules


def _cross_rules() -> List["IdentityRule"]:
    rules = []
    for sa, ma in ((False, "C"), (True, "C*")):
        X = _lab(sa, "i", "j")
        for sy, my in ((False, "C"), (True, "C*")):
            Y = _lab(sy, "i2", "j2")
            rules.append(IdentityRule(
                f"{ma}(i,j)*{my}(i',j')", _g_i_i2_j_j2, X, Y,
                lambda P, ix, X=X: [(half(P, ix["i2"]) * F(P, ix["j2"]), X(P, ix))]))
            rules.append(IdentityRule(
                f"{ma}(i,j)*{my}(i',j') [j'<j]", _g_i_i2_j2_below, X, Y,
                lambda P, ix, X=X: [(half(P, ix["i2"]) * F(P, ix["j"]),
                                     with_class(P, ix["i"], ix["j2"], label_class(P, X(P, ix))))],
                deviation=_LOWER_TARGET.format(ma=ma)))
            Ysame = _lab(sy, "i2", "j")
            rules.append(IdentityRule(
                f"{ma}(i,j)*{my}(i',j)", _g_i_i2_j, X, Ysame,
                lambda P, ix, X=X: [(half(P, ix["i2"]) * qd(P, ix["j"]), X(P, ix))]
                + [(half(P, ix["i2"]) * F(P, ix["j"]), with_class(P, ix["i"], m, label_class(P, X(P, ix))))
                   for m in range(ix["j"] + 1, P.t + 1)]))
            rules.append(IdentityRule(
                f"{ma}(i,t)*{my}(i',t)", _g_i_i2, _lab(sa, "i", "t"), _lab(sy, "i2", "t"),
                lambda P, ix, sa=sa: [(half(P, ix["i2"]), CosetLabel(ix["i"], P.t, sa))]))
            Yi = _lab(sy, "i", "j2")
            for agree, tag in ((True, "same class"), (False, "opposite class")):
                rules.append(IdentityRule(
                    f"{ma}(i,j)*{my}(i,j') [{tag}]", _g_i_j_j2, X, Yi,
                    lambda P, ix, X=X, Yi=Yi: _same_i(P, X(P, ix), Yi(P, ix)),
                    when=lambda P, ix, X=X, Yi=Yi, agree=agree:
                        (label_class(P, X(P, ix)) == label_class(P, Yi(P, ix))) == agree))
        rules.append(IdentityRule(
            f"{ma}(i,j)*C(s,j')", _g_i_j_j2, X, _top("j2"),
            lambda P, ix, X=X: [(F(P, ix["j2"]), X(P, ix))]))
        rules.append(IdentityRule(
            f"{ma}(i,j)*C(s,j') [j'<j]", _g_i_j2_below, X, _top("j2"),
            lambda P, ix, X=X: [(F(P, ix["j"]), with_class(P, ix["i"], ix["j2"], label_class(P, X(P, ix))))],
            deviation=_LOWER_TARGET.format(ma=ma)))
    rules.append(IdentityRule(
        "C(s,j)*C(s,j')", _g_j_j2, _top("j"), _top("j2"),
        lambda P, ix: [(F(P, ix["j2"]), C(P.s, ix["j"]))]))
    return rules


IDENTITY_RULES: Dict[str, IdentityRule] = {r.key: r for r in _square_rules() + _cross_rules()}

# χ_X χ_Y equals χ_X χ_{Y'} for these (X, Y, Y') index patterns.
PRODUCT_EQUALITIES: Dict[str, Tuple[Callable, Callable, Callable, Callable]] = {
    "C(i,j)*C(i',j) = C(i,j)*C*(i',j)": (
        lambda P: ({"i": i, "i2": i2, "j": j} for i in range(P.s) for i2 in range(i + 1, P.s) for j in range(P.t + 1)),
        lambda P, ix: C(ix["i"], ix["j"]),
        lambda P, ix: C(ix["i2"], ix["j"]),
        lambda P, ix: Cs(ix["i2"], ix["j"]),
    ),
    "C*(i,j)*C(i',j) = C*(i,j)*C*(i',j)": (
        lambda P: ({"i": i, "i2": i2, "j": j} for i in range(P.s) for i2 in range(i + 1, P.s) for j in range(P.t + 1)),
        lambda P, ix: Cs(ix["i"], ix["j"]),
        lambda P, ix: C(ix["i2"], ix["j"]),
        lambda P, ix: Cs(ix["i2"], ix["j"]),
    ),
}


# =========================
# Verification
# =========================

@dataclass(frozen=True)
class IdentityCheck:
    key: str
    indices: Tuple[Tuple[str, int], ...]
    over: str
    ok: bool
    residual: Optional[RingElement] = None
    residual_weight: int = 0
    deviation: str = ""


def _integer_product(system: CosetSystem, X: CosetLabel, Y: CosetLabel) -> np.ndarray:
    n = system.params.n
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[system.coset(X).as_array()] = 1
    b[system.coset(Y).as_array()] = 1
    full = np.convolve(a, b)
    out = full[:n].copy()
    out[: n - 1] += full[n:]
    return out


def _integer_combination(system: CosetSystem, terms: Terms) -> np.ndarray:
    out = np.zeros(system.params.n, dtype=np.int64)
    for c, label in terms:
        out[system.coset(label).as_array()] += c
    return out


def _evaluate(system: CosetSystem, key: str, ix: Indices, X: CosetLabel, Y: CosetLabel,
              terms: Terms, over: str, deviation: str = "") -> IdentityCheck:
    P = system.params
    frozen_ix = tuple(sorted(ix.items()))
    if over == "integers":
        diff = _integer_product(system, X, Y) - _integer_combination(system, terms)
        weight = int(np.count_nonzero(diff))
        return IdentityCheck(key, frozen_ix, over, weight == 0, None, weight, deviation)
    if over != "field":
        raise ValueError(f"over must be 'field' or 'integers', got {over!r}")
    lhs = ring_mul(chi(system, X), chi(system, Y))
    rhs = linear_combination(((c, chi(system, lab)) for c, lab in terms), P.n, P.l)
    residual = lhs - rhs
    return IdentityCheck(key, frozen_ix, over, residual.is_zero(), residual, residual.weight(), deviation)


def verify_identity(system: CosetSystem, key: str, indices: Mapping[str, int], over: str = "field") -> IdentityCheck:
    P = system.params
    ix = dict(indices)
    if key in PRODUCT_EQUALITIES:
        grid, X, Y1, Y2 = PRODUCT_EQUALITIES[key]
        if ix not in list(grid(P)):
            raise IndexRangeError(f"{key}: indices {ix} out of range")
        left = X(P, ix)
        if over == "integers":
            diff = _integer_product(system, left, Y1(P, ix)) - _integer_product(system, left, Y2(P, ix))
            weight = int(np.count_nonzero(diff))
            return IdentityCheck(key, tuple(sorted(ix.items())), over, weight == 0, None, weight)
        residual = ring_mul(chi(system, left), chi(system, Y1(P, ix))) - ring_mul(chi(system, left), chi(system, Y2(P, ix)))
        return IdentityCheck(key, tuple(sorted(ix.items())), over, residual.is_zero(), residual, residual.weight())
    try:
        rule = IDENTITY_RULES[key]
    except KeyError:
        raise IndexRangeError(f"unknown identity {key!r}") from None
    if ix not in list(rule.instances(P)):
        raise IndexRangeError(f"{key}: indices {ix} outside the identity's range for {P.as_tuple()}")
    return _evaluate(system, key, ix, rule.left(P, ix), rule.right(P, ix), rule.rhs(P, ix), over, rule.deviation)


def identity_rhs(params: Parameters, key: str, indices: Mapping[str, int]) -> Terms:
    return IDENTITY_RULES[key].rhs(params, dict(indices))


def structure_expansion(system: CosetSystem, X: CosetLabel, Y: CosetLabel) -> Dict[CosetLabel, int]:
    """Integer N_Z with χ_X χ_Y = Σ N_Z χ_Z, via N_Z = #{x ∈ -X : z + x ∈ Y}."""
    P = system.params
    negX = negated_label(P, X)
    out: Dict[CosetLabel, int] = {}
    for Z in system.labels:
        count = cyclotomic_number(P, Z, negX, Y)
        if count:
            out[Z] = count
    return out


def identity_sweep(system: CosetSystem, over: Tuple[str, ...] = ("field", "integers")) -> List[IdentityCheck]:
    P = system.params
    checks: List[IdentityCheck] = []
    for mode in over:
        for key, rule in IDENTITY_RULES.items():
            for ix in rule.instances(P):
                checks.append(verify_identity(system, key, ix, over=mode))
        for key, (grid, *_rest) in PRODUCT_EQUALITIES.items():
            for ix in grid(P):
                checks.append(verify_identity(system, key, ix, over=mode))
    bad = [c for c in checks if not c.ok]
    for c in bad:
        logger.warning("identity %s at %s fails over %s (residual weight %d)", c.key, dict(c.indices), c.over, c.residual_weight)
    corrected = sorted({c.key for c in checks if c.deviation})
    if corrected:
        logger.info("identity sweep on %s exercised %d corrected identities: %s", P.as_tuple(), len(corrected), ", ".join(corrected))
    logger.info("identity sweep on %s: %d checks, %d failures", P.as_tuple(), len(checks), len(bad))
    return checks


def structure_sweep(system: CosetSystem) -> List[Tuple[CosetLabel, CosetLabel]]:
    """Pairs (X, Y) whose integer product disagrees with ``structure_expansion``."""
    failures = []
    labels = system.labels
    for a, X in enumerate(labels):
        for Y in labels[a:]:
            terms = [(c, Z) for Z, c in structure_expansion(system, X, Y).items()]
            if not np.array_equal(_integer_product(system, X, Y), _integer_combination(system, terms)):
                failures.append((X, Y))
    return failures
