"""The quotient ring F_l[x]/(x^n - 1) and the χ indicator polynomials."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence

import numpy as np

from cyclo.cosets import CosetLabel, CosetSystem

logger = logging.getLogger(__name__)

_INT64_SAFE = 1 << 62


@dataclass(frozen=True, eq=False)
class RingElement:
    coeffs: np.ndarray
    l: int

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=np.int64) % self.l
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "RingElement") -> None:
        if self.n != other.n or self.l != other.l:
            raise ValueError(f"ring mismatch: (n={self.n}, l={self.l}) vs (n={other.n}, l={other.l})")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.coeffs + other.coeffs, self.l)

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.coeffs - other.coeffs, self.l)

    def __neg__(self) -> "RingElement":
        return RingElement(-self.coeffs, self.l)

    def scale(self, c: int) -> "RingElement":
        return RingElement(self.coeffs * (c % self.l), self.l)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return ring_mul(self, other)
        return self.scale(int(other))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.l == other.l and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.l, self.coeffs.tobytes()))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs)

    def weight(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def to_json(self) -> List[int]:
        return [int(c) for c in self.coeffs]

    def to_text(self) -> str:
        terms = []
        for e in self.support():
            c = int(self.coeffs[e])
            terms.append(str(c) if e == 0 else f"{c}*x^{e}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"RingElement(n={self.n}, l={self.l}, {self.to_text()})"


def from_json(data: Sequence[int] | str, l: int) -> RingElement:
    if isinstance(data, str):
        data = json.loads(data)
    return RingElement(np.asarray(list(data), dtype=np.int64), l)


def zero(n: int, l: int) -> RingElement:
    return RingElement(np.zeros(n, dtype=np.int64), l)


def one(n: int, l: int) -> RingElement:
    c = np.zeros(n, dtype=np.int64)
    c[0] = 1
    return RingElement(c, l)


def monomial(e: int, n: int, l: int, c: int = 1) -> RingElement:
    v = np.zeros(n, dtype=np.int64)
    v[e % n] = c
    return RingElement(v, l)


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    """Cyclic convolution: c_k = Σ_{u+v ≡ k} a_u b_v."""
    a._check(b)
    n, l = a.n, a.l
    if n * (l - 1) ** 2 < _INT64_SAFE:
        full = np.convolve(a.coeffs, b.coeffs)
    else:
        full = np.convolve(a.coeffs.astype(object), b.coeffs.astype(object)) % l
    out = full[:n].copy()
    out[: n - 1] += full[n:]
    return RingElement(np.asarray(out % l, dtype=np.int64), l)


def power(a: RingElement, e: int) -> RingElement:
    result = one(a.n, a.l)
    base = a
    while e:
        if e & 1:
            result = ring_mul(result, base)
        e >>= 1
        if e:
            base = ring_mul(base, base)
    return result


def substitute(a: RingElement, k: int) -> RingElement:
    """a(x) ↦ a(x^k)."""
    n = a.n
    out = np.zeros(n, dtype=np.int64)
    np.add.at(out, (np.arange(n, dtype=np.int64) * k) % n, a.coeffs)
    return RingElement(out, a.l)


def linear_combination(terms: Iterable[tuple[int, RingElement]], n: int, l: int) -> RingElement:
    acc = np.zeros(n, dtype=np.int64)
    for c, r in terms:
        acc = (acc + (c % l) * r.coeffs) % l
    return RingElement(acc, l)


# =========================
# χ polynomials
# =========================

def chi(system: CosetSystem, label: CosetLabel) -> RingElement:
    """Σ_{e ∈ C} x^e."""
    n, l = system.params.n, system.params.l
    v = np.zeros(n, dtype=np.int64)
    v[system.coset(label).as_array()] = 1
    return RingElement(v, l)


def chi_table(system: CosetSystem) -> Dict[CosetLabel, RingElement]:
    return {label: chi(system, label) for label in system.labels}
