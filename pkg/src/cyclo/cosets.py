"""l-cyclotomic cosets modulo n = p^s q^t.

Under the standing hypotheses there are exactly (2s+1)(t+1) cosets, labelled
by (i, j, starred):

- C(i,j)  = C_{p^i q^j}      for 0 <= i < s, 0 <= j <= t
- C*(i,j) = C_{p^i q^j g}    for 0 <= i < s, 0 <= j <= t
- C(s,j)  = C_{p^s q^j}      for 0 <= j <= t, with C(s,t) = C_0 = {0}

An element e lies in the coset whose indices are its p- and q-valuations
(capped at s and t). For i < s the star is decided by the quadratic
character of the p-unit part of e: every element of C(i,j) has p-class
(q/p)^j, and starring flips it. Since p ≡ 3 (mod 4), -C(i,j) = C*(i,j).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from cyclo.errors import ArithmeticConsistencyError, IndexRangeError
from cyclo.numtheory import Parameters, legendre, phi, quadratic_residue_sets, valuation

logger = logging.getLogger(__name__)


# =========================
# Labels
# =========================

@dataclass(frozen=True, order=True)
class CosetLabel:
    i: int
    j: int
    starred: bool = False

    def check(self, params: Parameters) -> "CosetLabel":
        if not (0 <= self.i <= params.s and 0 <= self.j <= params.t):
            raise IndexRangeError(f"{self.symbol()} outside 0<=i<={params.s}, 0<=j<={params.t}")
        if self.starred and self.i == params.s:
            raise IndexRangeError(f"{self.symbol()}: starred labels need i < s")
        return self

    def symbol(self) -> str:
        return f"{'C*' if self.starred else 'C'}({self.i},{self.j})"

    def name(self, params: Parameters) -> str:
        """C_γ with γ the representative."""
        return f"C_{representative(params, self)}"

    def chi_name(self, params: Parameters) -> str:
        return f"χ_{representative(params, self)}"

    def theta_name(self, params: Parameters) -> str:
        return f"θ_{representative(params, self)}"

    def is_zero(self, params: Parameters) -> bool:
        return self.i == params.s and self.j == params.t


def C(i: int, j: int) -> CosetLabel:
    return CosetLabel(i, j, False)


def Cs(i: int, j: int) -> CosetLabel:
    return CosetLabel(i, j, True)


def representative(params: Parameters, label: CosetLabel) -> int:
    rep = params.p**label.i * params.q**label.j
    if label.starred:
        rep *= params.g
    return rep % params.n


def label_class(params: Parameters, label: CosetLabel) -> int:
    """Quadratic character of the p-unit part of any element; 0 when i = s."""
    if label.i == params.s:
        return 0
    cls = params.q_class**label.j
    return -cls if label.starred else cls


def with_class(params: Parameters, i: int, j: int, cls: int) -> CosetLabel:
    """The label at (i, j) whose p-class is ``cls`` (i < s)."""
    return CosetLabel(i, j, params.q_class**j != cls)


def negated_label(params: Parameters, label: CosetLabel) -> CosetLabel:
    if label.i == params.s:
        return label
    return CosetLabel(label.i, label.j, not label.starred)


def label_of(params: Parameters, e: int) -> CosetLabel:
    p, q, s, t = params.p, params.q, params.s, params.t
    e %= params.n
    i = valuation(e % params.p_power, p, s)
    j = valuation(e % params.q_power, q, t)
    if i == s:
        return CosetLabel(s, j, False)
    unit = (e % params.p_power) // p**i
    cls = legendre(unit, p)
    return with_class(params, i, j, cls)


def all_labels(params: Parameters) -> List[CosetLabel]:
    s, t = params.s, params.t
    labels = [C(s, t)]
    labels += [C(s, j) for j in range(t)]
    labels += [C(i, j) for i in range(s) for j in range(t + 1)]
    labels += [Cs(i, j) for i in range(s) for j in range(t + 1)]
    return labels


def expected_size(params: Parameters, label: CosetLabel) -> int:
    p, q, s, t = params.p, params.q, params.s, params.t
    if label.i < s:
        return phi(p ** (s - label.i) * q ** (t - label.j)) // 2
    return phi(q ** (t - label.j))


# =========================
# Cosets
# =========================

@dataclass(frozen=True)
class Coset:
    label: CosetLabel
    representative: int
    elements: Tuple[int, ...]
    _members: FrozenSet[int] = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))
        object.__setattr__(self, "_members", frozenset(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e: int) -> bool:
        return e in self._members

    def __iter__(self):
        return iter(self.elements)

    def as_array(self) -> np.ndarray:
        return np.fromiter(self.elements, dtype=np.int64, count=len(self.elements))


def multiplicative_coset(params: Parameters, gamma: int, label: Optional[CosetLabel] = None) -> Coset:
    """Orbit {γ l^k mod n} of γ under multiplication by l."""
    n, l = params.n, params.l
    if not 0 <= gamma < n:
        raise IndexRangeError(f"γ={gamma} outside [0, {n})")
    orbit = [gamma]
    e = gamma * l % n
    while e != gamma:
        orbit.append(e)
        e = e * l % n
    return Coset(label=label or label_of(params, gamma), representative=gamma, elements=tuple(orbit))


def additive_coset_form(params: Parameters, label: CosetLabel) -> Coset:
    """{p^i q^t x + p^s q^j y}: x over residues or non-residues mod p^{s-i}, y over units mod q^{t-j}.

    x runs over residues iff the class (q/p)^{t-j} is +1, the other way round
    for a starred label.
    """
    label.check(params)
    p, q, s, t, n = params.p, params.q, params.s, params.t, params.n
    i, j = label.i, label.j
    if i == s:
        xs: Iterable[int] = [0]
    else:
        qr = quadratic_residue_sets(p, s - i)
        use_residues = (params.q_class ** (t - j) == 1) != label.starred
        xs = qr.residues if use_residues else qr.nonresidues
    if j == t:
        ys: Iterable[int] = [0]
    else:
        mod = q ** (t - j)
        ys = [y for y in range(1, mod) if y % q]
    a, b = p**i * q**t, p**s * q**j
    xs_arr = np.asarray(list(xs), dtype=np.int64)
    ys_arr = np.asarray(list(ys), dtype=np.int64)
    elems = np.unique((a * xs_arr[:, None] + b * ys_arr[None, :]) % n)
    return Coset(label=label, representative=representative(params, label), elements=tuple(int(e) for e in elems))


@dataclass(frozen=True, eq=False)
class CosetSystem:
    params: Parameters
    cosets: Tuple[Coset, ...]
    index: Dict[CosetLabel, int]
    label_array: np.ndarray

    def coset(self, label: CosetLabel) -> Coset:
        try:
            return self.cosets[self.index[label]]
        except KeyError:
            raise IndexRangeError(f"no coset labelled {label.symbol()}") from None

    def label_of(self, e: int) -> CosetLabel:
        return self.cosets[int(self.label_array[e % self.params.n])].label

    @property
    def labels(self) -> List[CosetLabel]:
        return [c.label for c in self.cosets]

    @cached_property
    def representatives(self) -> np.ndarray:
        return np.array([c.representative for c in self.cosets], dtype=np.int64)

    def __len__(self) -> int:
        return len(self.cosets)


def enumerate_cosets(params: Parameters) -> CosetSystem:
    n = params.n
    cosets: List[Coset] = []
    owner = np.full(n, -1, dtype=np.int64)
    for k, label in enumerate(all_labels(params)):
        coset = multiplicative_coset(params, representative(params, label), label)
        if len(coset) != expected_size(params, label):
            raise ArithmeticConsistencyError(
                f"{label.symbol()} has {len(coset)} elements, expected {expected_size(params, label)}"
            )
        arr = coset.as_array()
        if (owner[arr] >= 0).any():
            raise ArithmeticConsistencyError(f"{label.symbol()} overlaps an earlier coset")
        owner[arr] = k
        cosets.append(coset)
    if (owner < 0).any():
        missing = int(np.flatnonzero(owner < 0)[0])
        raise ArithmeticConsistencyError(f"cosets do not cover Z_{n}: {missing} is missing")
    if len(cosets) != params.coset_count:
        raise ArithmeticConsistencyError(f"{len(cosets)} cosets, expected {params.coset_count}")
    logger.debug("enumerated %d cosets for n=%d", len(cosets), n)
    return CosetSystem(
        params=params,
        cosets=tuple(cosets),
        index={c.label: k for k, c in enumerate(cosets)},
        label_array=owner,
    )


# =========================
# Cyclotomic classes of order 2
# =========================

def cyclotomic_classes(params: Parameters) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """D0 = {g^{2k}, g^{2k} v}, D1 = g D0."""
    n, g, v = params.n, params.g, params.v
    half = phi(n) // 2
    d0 = set()
    x = 1
    for _ in range(half):
        d0.add(x)
        d0.add(x * v % n)
        x = x * g * g % n
    d1 = {e * g % n for e in d0}
    if len(d0) != half or d0 & d1:
        raise ArithmeticConsistencyError("D0 and D1 do not split Z*_n in half")
    return frozenset(d0), frozenset(d1)


# =========================
# Intersection counts (oracle)
# =========================

def intersection_count(params: Parameters, a: int, X: Coset, Y: Coset) -> int:
    """#{x in X : a + x mod n in Y} by direct enumeration."""
    n = params.n
    return sum(1 for x in X.elements if (a + x) % n in Y)


def intersection_counts(system: CosetSystem, A: CosetLabel, X: CosetLabel, Y: CosetLabel) -> np.ndarray:
    """The count #{x in X : a + x in Y} for every a in A, vectorised."""
    n = system.params.n
    a = system.coset(A).as_array()
    x = system.coset(X).as_array()
    hits = system.label_array[(a[:, None] + x[None, :]) % n] == system.index[Y]
    return hits.sum(axis=1)


def oracle_count(system: CosetSystem, A: CosetLabel, X: CosetLabel, Y: CosetLabel) -> int:
    """Count for a = representative of A, checked to be constant over A."""
    counts = intersection_counts(system, A, X, Y)
    if (counts != counts[0]).any():
        raise ArithmeticConsistencyError(
            f"#(a+{X.symbol()})∩{Y.symbol()} varies over a ∈ {A.symbol()}: {sorted(set(counts.tolist()))}"
        )
    return int(counts[0])
