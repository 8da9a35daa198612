"""Cyclotomic numbers #(a + X) ∩ Y for cosets modulo p^s q^t.

Two independent sources of truth live here:

* ``cyclotomic_number`` evaluates any triple (A, X, Y) through the splitting
  Z_n ≅ Z_{p^s} x Z_{q^t}. Every coset is a product set, so the count is a
  p-side count times a q-side count.
* ``COUNT_RULES`` is the branch-by-branch table of closed forms, each entry
  naming the shift coset, the shifted coset, the target and the value.

Both are checked against the brute-force counts of ``cyclo.cosets``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from cyclo.cosets import (
    C,
    CosetLabel,
    CosetSystem,
    label_class,
    oracle_count,
    with_class,
)
from cyclo.errors import IndexRangeError
from cyclo.numtheory import Parameters, legendre, phi

logger = logging.getLogger(__name__)

Indices = Dict[str, int]


# =========================
# Coefficient shapes
# =========================

def lo(P: Parameters, i: int) -> int:
    """(p-3)/4 p^{s-i-1}"""
    return (P.p - 3) // 4 * P.p ** (P.s - i - 1)


def hi(P: Parameters, i: int) -> int:
    """(p+1)/4 p^{s-i-1}"""
    return (P.p + 1) // 4 * P.p ** (P.s - i - 1)


def half(P: Parameters, k: int) -> int:
    return P.p_part_size(k)


def qd(P: Parameters, j: int) -> int:
    """(q-2) q^{t-j-1}"""
    return (P.q - 2) * P.q ** (P.t - j - 1)


def F(P: Parameters, m: int) -> int:
    return phi(P.q ** (P.t - m))


def aligned(P: Parameters, j: int, j2: int) -> bool:
    """C(i,j) and C(i,j2) share their p-class."""
    return P.qr_case or (j2 - j) % 2 == 0


# =========================
# Product formula
# =========================

def _p_count(P: Parameters, A: CosetLabel, X: CosetLabel, Y: CosetLabel) -> int:
    s = P.s
    ia, ix, iy = A.i, X.i, Y.i
    ca, cx, cy = label_class(P, A), label_class(P, X), label_class(P, Y)
    if ix > ia:
        return P.p_part_size(ix) if (iy, cy) == (ia, ca) else 0
    if ix < ia:
        return P.p_part_size(ix) if (iy, cy) == (ix, cx) else 0
    if ia == s:
        return 1 if iy == s else 0
    if iy == ia:
        return hi(P, ia) if (cx == ca and cy != ca) else lo(P, ia)
    if iy > ia:
        return P.p_part_size(iy) if cx == -ca else 0
    return 0


def _q_count(P: Parameters, A: CosetLabel, X: CosetLabel, Y: CosetLabel) -> int:
    t = P.t
    ja, jx, jy = A.j, X.j, Y.j
    if jx > ja:
        return P.q_part_size(jx) if jy == ja else 0
    if jx < ja:
        return P.q_part_size(jx) if jy == jx else 0
    if ja == t:
        return 1 if jy == t else 0
    if jy == ja:
        return qd(P, ja)
    if jy > ja:
        return P.q_part_size(jy)
    return 0


def cyclotomic_number(params: Parameters, A: CosetLabel, X: CosetLabel, Y: CosetLabel) -> int:
    """#{x in X : a + x in Y} for any a in A."""
    for label in (A, X, Y):
        label.check(params)
    return _p_count(params, A, X, Y) * _q_count(params, A, X, Y)


# =========================
# Closed-form table
# =========================

@dataclass(frozen=True)
class CountRule:
    key: str
    grid: Callable[[Parameters], Iterator[Indices]]
    shift: Callable[[Parameters, Indices], CosetLabel]
    source: Callable[[Parameters, Indices], CosetLabel]
    target: Callable[[Parameters, Indices], CosetLabel]
    value: Callable[[Parameters, Indices], int]
    when: Optional[Callable[[Parameters, Indices], bool]] = None
    note: str = ""
    # correction to the published closed form, empty when it is used as printed
    deviation: str = ""

    def instances(self, params: Parameters) -> Iterator[Indices]:
        for ix in self.grid(params):
            if self.when is None or self.when(params, ix):
                yield ix


def _g_ij(P):
    for i in range(P.s):
        for j in range(P.t):
            yield {"i": i, "j": j}


def _g_ijm(P):
    for i in range(P.s):
        for j in range(P.t):
            for m in range(j + 1, P.t + 1):
                yield {"i": i, "j": j, "m": m}


def _g_ijk(P):
    for i in range(P.s):
        for k in range(i + 1, P.s):
            for j in range(P.t):
                yield {"i": i, "j": j, "k": k}


def _g_ijkm(P):
    for i in range(P.s):
        for k in range(i + 1, P.s):
            for j in range(P.t):
                for m in range(j + 1, P.t + 1):
                    yield {"i": i, "j": j, "k": k, "m": m}


def _g_i(P):
    for i in range(P.s):
        yield {"i": i}


def _g_ik(P):
    for i in range(P.s):
        for k in range(i + 1, P.s):
            yield {"i": i, "k": k}


def _g_j(P):
    for j in range(P.t):
        yield {"j": j}


def _g_jm(P):
    for j in range(P.t):
        for m in range(j + 1, P.t + 1):
            yield {"j": j, "m": m}


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


def _g_i_j_j2(P):
    for i in range(P.s):
        for j in range(P.t):
            for j2 in range(j + 1, P.t + 1):
                yield {"i": i, "j": j, "j2": j2}


def _g_i_j_j2_k(P):
    for i in range(P.s):
        for k in range(i + 1, P.s):
            for j in range(P.t):
                for j2 in range(j + 1, P.t + 1):
                    yield {"i": i, "j": j, "j2": j2, "k": k}


def _g_j_j2(P):
    for j in range(P.t):
        for j2 in range(j + 1, P.t + 1):
            yield {"j": j, "j2": j2}


def _g_i_j2_below(P):
    for i in range(P.s):
        for j in range(1, P.t + 1):
            for j2 in range(j):
                yield {"i": i, "j": j, "j2": j2}


def _g_j2_below(P):
    for j in range(1, P.t + 1):
        for j2 in range(j):
            yield {"j": j, "j2": j2}


def _g_i_i2_j(P):
    for i in range(P.s):
        for i2 in range(i + 1, P.s):
            for j in range(P.t):
                yield {"i": i, "i2": i2, "j": j}


def _g_i_i2_j_m(P):
    for i in range(P.s):
        for i2 in range(i + 1, P.s):
            for j in range(P.t):
                for m in range(j + 1, P.t + 1):
                    yield {"i": i, "i2": i2, "j": j, "m": m}


def _lab(starred: bool, i: str, j: str):
    def build(P: Parameters, ix: Indices) -> CosetLabel:
        return CosetLabel(ix[i], ix[j], starred)
    return build


def _top(j: str):
    def build(P: Parameters, ix: Indices) -> CosetLabel:
        return C(P.s, ix[j] if j != "t" else P.t)
    return build


def _at_t(starred: bool, i: str):
    def build(P: Parameters, ix: Indices) -> CosetLabel:
        return CosetLabel(ix[i], P.t, starred)
    return build


def _matching(shift_starred: bool, j_shift: str, j_target: str):
    """Label at (i, j_target) with the p-class of the shift element."""
    def build(P: Parameters, ix: Indices) -> CosetLabel:
        shift = CosetLabel(ix["i"], ix[j_shift], shift_starred)
        return with_class(P, ix["i"], ix[j_target], label_class(P, shift))
    return build


def _qr(P, ix):
    return P.qr_case


def _qnr(P, ix):
    return not P.qr_case


def _al(P, ix):
    return aligned(P, ix["j"], ix["j2"])


def _odd(ix, a="j", b="m") -> bool:
    return (ix[b] - ix[a]) % 2 == 1


_QNR_TAIL = "odd m-j branch: q-part is φ(q^{t-m}), published as φ(q^{t-k})"


def _lower_target(ma: str) -> str:
    return ("target is the coset at (i,j') with the class of the shift element and the q-part is "
            f"φ(q^{{t-j'}}); published as {ma}(i,j') with φ(q^{{t-j}})")


def _same_level_rules() -> List[CountRule]:
    rules: List[CountRule] = []
    for star, mark in ((False, "C"), (True, "C*")):
        other = "C" if star else "C*"
        A = _lab(star, "i", "j")
        rules += [
            CountRule(f"{mark}(i,j)+{mark}(i,j)->{mark}(i,j)", _g_ij, A, A, _lab(star, "i", "j"),
                      lambda P, ix: lo(P, ix["i"]) * qd(P, ix["j"])),
            CountRule(f"{mark}(i,j)+{mark}(i,j)->{other}(i,j)", _g_ij, A, A, _lab(not star, "i", "j"),
                      lambda P, ix: hi(P, ix["i"]) * qd(P, ix["j"])),
            CountRule(f"{mark}(i,j)+{mark}(i,j)->{mark}(i,m) [qr]", _g_ijm, A, A, _lab(star, "i", "m"),
                      lambda P, ix: lo(P, ix["i"]) * F(P, ix["m"]), when=_qr),
            CountRule(f"{mark}(i,j)+{mark}(i,j)->{other}(i,m) [qr]", _g_ijm, A, A, _lab(not star, "i", "m"),
                      lambda P, ix: hi(P, ix["i"]) * F(P, ix["m"]), when=_qr),
            CountRule(f"{mark}(i,j)+{mark}(i,j)->{mark}(i,m) [qnr]", _g_ijm, A, A, _lab(star, "i", "m"),
                      lambda P, ix: (hi if _odd(ix) else lo)(P, ix["i"]) * F(P, ix["m"]), when=_qnr,
                      note="m-j odd flips the class of C(i,m) relative to C(i,j)",
                      deviation=_QNR_TAIL if star else ""),
            CountRule(f"{mark}(i,j)+{mark}(i,j)->{other}(i,m) [qnr]", _g_ijm, A, A, _lab(not star, "i", "m"),
                      lambda P, ix: (lo if _odd(ix) else hi)(P, ix["i"]) * F(P, ix["m"]), when=_qnr,
                      deviation="" if star else _QNR_TAIL),
            CountRule(f"{mark}(i,t)+{mark}(i,t)->{mark}(i,t)", _g_i, _at_t(star, "i"), _at_t(star, "i"),
                      _at_t(star, "i"), lambda P, ix: lo(P, ix["i"])),
            CountRule(f"{mark}(i,t)+{mark}(i,t)->{other}(i,t)", _g_i, _at_t(star, "i"), _at_t(star, "i"),
                      _at_t(not star, "i"), lambda P, ix: hi(P, ix["i"])),
        ]
    return rules


def _opposite_star_rules() -> List[CountRule]:
    A, X = _lab(False, "i", "j"), _lab(True, "i", "j")
    rules = [
        CountRule("C(i,j)+C*(i,j)->C(i,j)", _g_ij, A, X, _lab(False, "i", "j"),
                  lambda P, ix: lo(P, ix["i"]) * qd(P, ix["j"])),
        CountRule("C(i,j)+C*(i,j)->C*(i,j)", _g_ij, A, X, _lab(True, "i", "j"),
                  lambda P, ix: lo(P, ix["i"]) * qd(P, ix["j"])),
        CountRule("C(i,j)+C*(i,j)->C(i,m)", _g_ijm, A, X, _lab(False, "i", "m"),
                  lambda P, ix: lo(P, ix["i"]) * F(P, ix["m"])),
        CountRule("C(i,j)+C*(i,j)->C*(i,m)", _g_ijm, A, X, _lab(True, "i", "m"),
                  lambda P, ix: lo(P, ix["i"]) * F(P, ix["m"])),
        CountRule("C(i,j)+C*(i,j)->C(k,m)", _g_ijkm, A, X, _lab(False, "k", "m"),
                  lambda P, ix: half(P, ix["k"]) * F(P, ix["m"])),
        CountRule("C(i,j)+C*(i,j)->C*(k,m)", _g_ijkm, A, X, _lab(True, "k", "m"),
                  lambda P, ix: half(P, ix["k"]) * F(P, ix["m"])),
        CountRule("C(i,j)+C*(i,j)->C(k,j)", _g_ijk, A, X, _lab(False, "k", "j"),
                  lambda P, ix: half(P, ix["k"]) * qd(P, ix["j"])),
        CountRule("C(i,j)+C*(i,j)->C*(k,j)", _g_ijk, A, X, _lab(True, "k", "j"),
                  lambda P, ix: half(P, ix["k"]) * qd(P, ix["j"])),
        CountRule("C(i,j)+C*(i,j)->C(s,j)", _g_ij, A, X, _top("j"),
                  lambda P, ix: qd(P, ix["j"])),
        CountRule("C(i,j)+C*(i,j)->C(s,m)", _g_ijm, A, X, _top("m"),
                  lambda P, ix: F(P, ix["m"])),
        CountRule("C(i,t)+C*(i,t)->C(i,t)", _g_i, _at_t(False, "i"), _at_t(True, "i"), _at_t(False, "i"),
                  lambda P, ix: lo(P, ix["i"])),
        CountRule("C(i,t)+C*(i,t)->C*(i,t)", _g_i, _at_t(False, "i"), _at_t(True, "i"), _at_t(True, "i"),
                  lambda P, ix: lo(P, ix["i"])),
        CountRule("C(i,t)+C*(i,t)->C(k,t)", _g_ik, _at_t(False, "i"), _at_t(True, "i"), _at_t(False, "k"),
                  lambda P, ix: half(P, ix["k"])),
        CountRule("C(i,t)+C*(i,t)->C*(k,t)", _g_ik, _at_t(False, "i"), _at_t(True, "i"), _at_t(True, "k"),
                  lambda P, ix: half(P, ix["k"])),
        CountRule("C(i,t)+C*(i,t)->C_0", _g_i, _at_t(False, "i"), _at_t(True, "i"), _top("t"),
                  lambda P, ix: 1),
    ]
    return rules


def _top_level_rules() -> List[CountRule]:
    top_j = _top("j")
    return [
        CountRule("C(s,j)+C(s,j)->C(s,j)", _g_j, top_j, top_j, top_j, lambda P, ix: qd(P, ix["j"])),
        CountRule("C(s,j)+C(s,j)->C(s,m)", _g_jm, top_j, top_j, _top("m"), lambda P, ix: F(P, ix["m"])),
        CountRule("C(s,j)+C(s,j')->C(s,j)", _g_j_j2, top_j, _top("j2"), top_j,
                  lambda P, ix: F(P, ix["j2"])),
        CountRule("C(s,j)+C(s,j')->C(s,j') [j'<j]", _g_j2_below, top_j, _top("j2"), _top("j2"),
                  lambda P, ix: F(P, ix["j2"])),
    ]


def _cross_level_rules() -> List[CountRule]:
    rules: List[CountRule] = []
    for sa, ma in ((False, "C"), (True, "C*")):
        A = _lab(sa, "i", "j")
        for sx, mx in ((False, "C"), (True, "C*")):
            X2 = _lab(sx, "i2", "j2")
            rules.append(CountRule(
                f"{ma}(i,j)+{mx}(i',j')->{ma}(i,j)", _g_i_i2_j_j2, A, X2, A,
                lambda P, ix: half(P, ix["i2"]) * F(P, ix["j2"])))
            rules.append(CountRule(
                f"{ma}(i,j)+{mx}(i',j')->class-of-{ma}(i,j') [j'<j]", _g_i_i2_j2_below, A, X2,
                _matching(sa, "j", "j2"),
                lambda P, ix: half(P, ix["i2"]) * F(P, ix["j2"]),
                deviation=_lower_target(ma)))
            X_same_j = _lab(sx, "i2", "j")
            rules.append(CountRule(
                f"{ma}(i,j)+{mx}(i',j)->{ma}(i,j)", _g_i_i2_j, A, X_same_j, A,
                lambda P, ix: half(P, ix["i2"]) * qd(P, ix["j"])))
            rules.append(CountRule(
                f"{ma}(i,j)+{mx}(i',j)->class-of-{ma}(i,m)", _g_i_i2_j_m, A, X_same_j,
                _matching(sa, "j", "m"),
                lambda P, ix: half(P, ix["i2"]) * F(P, ix["m"]),
                deviation="qr branch: shifted coset is C(i',j), published as C*(i',j)" if (sa, sx) == (True, False) else ""))
        rules.append(CountRule(
            f"{ma}(i,j)+C(s,j')->{ma}(i,j)", _g_i_j_j2, A, _top("j2"), A,
            lambda P, ix: F(P, ix["j2"])))
        rules.append(CountRule(
            f"{ma}(i,j)+C(s,j')->class-of-{ma}(i,j') [j'<j]", _g_i_j2_below, A, _top("j2"),
            _matching(sa, "j", "j2"),
            lambda P, ix: F(P, ix["j2"]),
            deviation=_lower_target(ma)))
    return rules


def _q_level_rules() -> List[CountRule]:
    """Shift and shifted coset at the same p-level i, q-levels j < j'."""
    rules: List[CountRule] = []
    for sa, ma in ((False, "C"), (True, "C*")):
        same = "C" if not sa else "C*"
        flip = "C*" if not sa else "C"
        A = _lab(sa, "i", "j")
        for sx, mx in ((False, "C"), (True, "C*")):
            X = _lab(sx, "i", "j2")
            # the p-classes of A and X agree iff (aligned) == (same star)
            agree = (lambda P, ix, sx=sx, sa=sa: _al(P, ix) == (sx == sa))
            disagree = (lambda P, ix, agree=agree: not agree(P, ix))
            rules += [
                CountRule(f"{ma}(i,j)+{mx}(i,j')->{same}(i,j)", _g_i_j_j2, A, X, _lab(sa, "i", "j"),
                          lambda P, ix: lo(P, ix["i"]) * F(P, ix["j2"])),
                CountRule(f"{ma}(i,j)+{mx}(i,j')->{flip}(i,j)", _g_i_j_j2, A, X, _lab(not sa, "i", "j"),
                          lambda P, ix, agree=agree: (hi if agree(P, ix) else lo)(P, ix["i"]) * F(P, ix["j2"])),
                CountRule(f"{ma}(i,j)+{mx}(i,j')->C(k,j)", _g_i_j_j2_k, A, X, _lab(False, "k", "j"),
                          lambda P, ix: half(P, ix["k"]) * F(P, ix["j2"]), when=disagree),
                CountRule(f"{ma}(i,j)+{mx}(i,j')->C*(k,j)", _g_i_j_j2_k, A, X, _lab(True, "k", "j"),
                          lambda P, ix: half(P, ix["k"]) * F(P, ix["j2"]), when=disagree),
                CountRule(f"{ma}(i,j)+{mx}(i,j')->C(s,j)", _g_i_j_j2, A, X, _top("j"),
                          lambda P, ix: F(P, ix["j2"]), when=disagree),
            ]
    return rules


COUNT_RULES: Dict[str, CountRule] = {
    r.key: r
    for r in _same_level_rules() + _opposite_star_rules() + _top_level_rules()
    + _cross_level_rules() + _q_level_rules()
}


def closed_form_count(params: Parameters, key: str, indices: Mapping[str, int]) -> int:
    try:
        rule = COUNT_RULES[key]
    except KeyError:
        raise IndexRangeError(f"unknown count rule {key!r}") from None
    ix = dict(indices)
    if ix not in list(rule.instances(params)):
        raise IndexRangeError(f"{key}: indices {ix} outside the rule's range for {params.as_tuple()}")
    return rule.value(params, ix)


def rule_labels(params: Parameters, key: str, indices: Mapping[str, int]) -> Tuple[CosetLabel, CosetLabel, CosetLabel]:
    rule = COUNT_RULES[key]
    ix = dict(indices)
    return rule.shift(params, ix), rule.source(params, ix), rule.target(params, ix)


# =========================
# Residue-class counts in Z_{p^s}
# =========================

# (class of a, class of X, class of Y) -> uses (p+1)/4 instead of (p-3)/4
RESIDUE_RULES: Dict[str, Tuple[int, int, int]] = {
    "r+R->R": (1, 1, 1),
    "r+R->N": (1, 1, -1),
    "r+N->R": (1, -1, 1),
    "r+N->N": (1, -1, -1),
    "n+N->N": (-1, -1, -1),
    "n+N->R": (-1, -1, 1),
    "n+R->N": (-1, 1, -1),
    "n+R->R": (-1, 1, 1),
}


def residue_rule_value(params: Parameters, key: str) -> int:
    ca, cx, cy = RESIDUE_RULES[key]
    return hi(params, 0) if (cx == ca and cy != ca) else lo(params, 0)


def residue_oracle(params: Parameters, key: str) -> int:
    p, mod = params.p, params.p_power
    ca, cx, cy = RESIDUE_RULES[key]
    cls = np.array([legendre(z, p) for z in range(mod)], dtype=np.int64)
    a = np.flatnonzero(cls == ca)
    x = np.flatnonzero(cls == cx)
    counts = (cls[(a[:, None] + x[None, :]) % mod] == cy).sum(axis=1)
    if (counts != counts[0]).any():
        raise ValueError(f"{key}: count not constant over the class of a")
    return int(counts[0])


# =========================
# Sweeps
# =========================

@dataclass(frozen=True)
class CountCheck:
    key: str
    indices: Tuple[Tuple[str, int], ...]
    expected: int
    actual: int
    deviation: str = ""

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def count_sweep(system: CosetSystem) -> List[CountCheck]:
    """Every closed-form branch at every in-range index tuple, against the oracle."""
    P = system.params
    checks: List[CountCheck] = []
    for key in RESIDUE_RULES:
        checks.append(CountCheck(key, (), residue_rule_value(P, key), residue_oracle(P, key)))
    for key, rule in COUNT_RULES.items():
        for ix in rule.instances(P):
            A, X, Y = rule.shift(P, ix), rule.source(P, ix), rule.target(P, ix)
            checks.append(CountCheck(
                key, tuple(sorted(ix.items())), rule.value(P, ix), oracle_count(system, A, X, Y), rule.deviation))
    bad = [c for c in checks if not c.ok]
    for c in bad:
        logger.warning("count rule %s at %s: closed form %d, oracle %d", c.key, dict(c.indices), c.expected, c.actual)
    corrected = sorted({c.key for c in checks if c.deviation})
    if corrected:
        logger.info("count sweep on %s exercised %d corrected rules: %s", P.as_tuple(), len(corrected), ", ".join(corrected))
    logger.info("count sweep on %s: %d checks, %d mismatches", P.as_tuple(), len(checks), len(bad))
    return checks


def product_formula_sweep(system: CosetSystem) -> List[Tuple[CosetLabel, CosetLabel, CosetLabel, int, int]]:
    """Mismatches of ``cyclotomic_number`` against the oracle over all label triples."""
    P = system.params
    mismatches = []
    labels = system.labels
    for A in labels:
        for X in labels:
            for Y in labels:
                want = oracle_count(system, A, X, Y)
                got = cyclotomic_number(P, A, X, Y)
                if want != got:
                    mismatches.append((A, X, Y, got, want))
    return mismatches
