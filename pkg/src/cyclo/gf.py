"""Arithmetic in the splitting field F_{l^m} of x^n - 1 over F_l.

Elements are length-m coefficient vectors modulo a monic irreducible
polynomial. Products reduce through a precomputed (m-1) x m matrix whose
row k holds x^{m+k} mod f, so one multiplication is a convolution plus a
matrix product. Exponents are plain Python ints and may be arbitrarily large.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import count
from typing import Iterator, Optional, Tuple, Union

import numpy as np
from sympy import primefactors

from cyclo import poly
from cyclo.errors import ArithmeticConsistencyError, UnreachableResidueError
from cyclo.numtheory import Parameters, fits_int64, quadratic_residue_sets

logger = logging.getLogger(__name__)


def _reduction_matrix(modulus: np.ndarray, l: int) -> np.ndarray:
    m = len(modulus) - 1
    low = (-modulus[:m]) % l
    red = np.zeros((max(m - 1, 0), m), dtype=np.int64)
    row = low.copy()
    for k in range(m - 1):
        red[k] = row
        top = row[m - 1]
        row = np.concatenate(([0], row[: m - 1]))
        row = (row + top * low) % l
    return red


@dataclass(frozen=True, eq=False)
class ExtField:
    l: int
    m: int
    modulus: np.ndarray
    _red: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not fits_int64(self.m, self.l):
            raise ValueError(f"F_{{{self.l}^{self.m}}} products would overflow int64")
        mod = np.asarray(self.modulus, dtype=np.int64) % self.l
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.m}")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "_red", _reduction_matrix(mod, self.l))

    @property
    def order(self) -> int:
        return self.l**self.m

    def mulmod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        prod = np.convolve(a, b) % self.l
        m = self.m
        if len(prod) <= m:
            out = np.zeros(m, dtype=np.int64)
            out[: len(prod)] = prod
            return out
        return (prod[:m] + prod[m:] @ self._red) % self.l

    def reduce(self, coeffs) -> np.ndarray:
        """Residue of an arbitrary F_l polynomial modulo the field modulus."""
        _, r = poly.divmod_poly(np.asarray(coeffs, dtype=np.int64), self.modulus, self.l)
        out = np.zeros(self.m, dtype=np.int64)
        out[: len(r)] = r
        return out

    def element(self, coeffs) -> "ExtElement":
        return ExtElement(self, self.reduce(coeffs))

    def zero(self) -> "ExtElement":
        return ExtElement(self, np.zeros(self.m, dtype=np.int64))

    def one(self) -> "ExtElement":
        return self.scalar(1)

    def scalar(self, c: int) -> "ExtElement":
        v = np.zeros(self.m, dtype=np.int64)
        v[0] = c % self.l
        return ExtElement(self, v)

    def generator(self) -> "ExtElement":
        return self.element([0, 1])

    def from_index(self, k: int) -> "ExtElement":
        """Element whose coefficients are the base-l digits of k, constant first."""
        if not 0 <= k < self.order:
            raise ValueError(f"index {k} outside [0, {self.order})")
        v = np.zeros(self.m, dtype=np.int64)
        for pos in range(self.m):
            k, v[pos] = divmod(k, self.l)
        return ExtElement(self, v)

    def multiplication_matrix(self, b: "ExtElement") -> np.ndarray:
        """M with a @ M = a*b (mod l) for coefficient row vectors a."""
        rows = np.zeros((self.m, self.m), dtype=np.int64)
        row = b.coeffs.copy()
        low = (-self.modulus[: self.m]) % self.l
        for k in range(self.m):
            rows[k] = row
            top = row[self.m - 1]
            row = np.concatenate(([0], row[: self.m - 1]))
            row = (row + top * low) % self.l
        return rows

    def power_table(self, base: "ExtElement", count_: int) -> np.ndarray:
        """Rows base^0, base^1, ..., base^{count_-1}."""
        table = np.zeros((count_, self.m), dtype=np.int64)
        if count_ == 0:
            return table
        mat = self.multiplication_matrix(base)
        table[0, 0] = 1
        for u in range(1, count_):
            table[u] = (table[u - 1] @ mat) % self.l
        return table


class ExtElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtField, coeffs: np.ndarray) -> None:
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other: Union["ExtElement", int]) -> "ExtElement":
        if isinstance(other, ExtElement):
            if other.field is not self.field:
                raise ValueError("elements belong to different fields")
            return other
        return self.field.scalar(int(other))

    def __add__(self, other):
        o = self._coerce(other)
        return ExtElement(self.field, (self.coeffs + o.coeffs) % self.field.l)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return ExtElement(self.field, (self.coeffs - o.coeffs) % self.field.l)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return ExtElement(self.field, (-self.coeffs) % self.field.l)

    def __mul__(self, other):
        if not isinstance(other, ExtElement):
            return ExtElement(self.field, (self.coeffs * (int(other) % self.field.l)) % self.field.l)
        o = self._coerce(other)
        return ExtElement(self.field, self.field.mulmod(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ExtElement":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "ExtElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.order - 2)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.scalar(other)
        if not isinstance(other, ExtElement):
            return NotImplemented
        return other.field is self.field and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash(tuple(int(c) for c in self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def is_one(self) -> bool:
        return int(self.coeffs[0]) == 1 and not self.coeffs[1:].any()

    def in_prime_field(self) -> bool:
        return not self.coeffs[1:].any()

    def to_scalar(self) -> int:
        if not self.in_prime_field():
            raise ArithmeticConsistencyError(f"expected an element of F_{self.field.l}, got {self!r}")
        return int(self.coeffs[0])

    def __repr__(self) -> str:
        terms = [f"{int(c)}*a^{k}" if k else str(int(c)) for k, c in enumerate(self.coeffs) if c]
        return "ExtElement(" + (" + ".join(terms) or "0") + ")"


# =========================
# Construction of F_{l^m}
# =========================

def _is_irreducible(candidate: np.ndarray, l: int) -> bool:
    """Rabin's test: x^{l^m} = x mod f and gcd(x^{l^{m/r}} - x, f) = 1 for every prime r | m."""
    m = len(candidate) - 1
    ext = ExtField(l, m, candidate)
    x = ext.generator()
    checkpoints = {m // r for r in primefactors(m)}
    y = x
    for k in range(1, m + 1):
        y = y**l
        if k in checkpoints:
            diff = poly.trim((y - x).coeffs)
            if len(poly.gcd_poly(candidate, diff, l)) != 1:
                return False
    return y == x


def _candidates(l: int, m: int) -> Iterator[np.ndarray]:
    """Lower coefficient vectors by height h = max c_k, then by sum_k c_k (h+1)^k.

    Within one height the order agrees with sum_k c_k l^k, so all low
    coefficients move together instead of the constant term running through
    F_l first.
    """
    for h in range(1, l):
        for k in range((h + 1) ** m):
            low = np.zeros(m, dtype=np.int64)
            rest = k
            for pos in range(m):
                rest, low[pos] = divmod(rest, h + 1)
            if low[0] == 0 or low.max() < h:
                continue
            yield low


def find_irreducible(l: int, m: int) -> np.ndarray:
    """First monic irreducible of degree m over F_l, lowest degree first.

    Candidates are x^m + c_{m-1} x^{m-1} + ... + c_0 with c_0 ≠ 0, in the
    order of `_candidates`; degree 1 gives x.
    """
    if m < 1:
        raise ValueError(f"degree must be >= 1, got {m}")
    if m == 1:
        return np.array([0, 1], dtype=np.int64)
    for tried, low in enumerate(_candidates(l, m), start=1):
        candidate = np.concatenate((low, [1]))
        if _is_irreducible(candidate, l):
            logger.debug("irreducible of degree %d over F_%d found after %d candidates", m, l, tried)
            return candidate
    raise ArithmeticConsistencyError(f"no irreducible polynomial of degree {m} over F_{l}")


def splitting_field(params: Parameters) -> ExtField:
    m = params.extension_degree
    return ExtField(params.l, m, find_irreducible(params.l, m))


def primitive_nth_root(params: Parameters, ext: ExtField, index: int = 0) -> ExtElement:
    """The ``index``-th accepted α of exact order n in a fixed candidate sequence.

    Candidate k (k = l, l + 1, ...) is the element with base-l digit vector k,
    raised to (l^m - 1)/n. Indices below l are the elements of F_l, whose
    orders divide l - 1; n never does, since ord_n(l) = m >= 2.
    """
    n, l = params.n, params.l
    if (ext.order - 1) % n:
        raise ArithmeticConsistencyError(f"{n} does not divide {l}^{ext.m} - 1")
    cofactor = (ext.order - 1) // n
    accepted = 0
    for k in count(l):
        if k >= ext.order:
            break
        alpha = ext.from_index(k) ** cofactor
        if not (alpha**n).is_one():
            continue
        if (alpha ** (n // params.p)).is_one() or (alpha ** (n // params.q)).is_one():
            logger.debug("alpha candidate %d rejected: order is a proper divisor of %d", k, n)
            continue
        if accepted == index:
            logger.debug("alpha taken from candidate %d (accepted #%d)", k, index)
            return alpha
        accepted += 1
    raise ArithmeticConsistencyError(f"fewer than {index + 1} primitive {n}-th roots found")


# =========================
# Gauss sums
# =========================

@dataclass(frozen=True, eq=False)
class GaussData:
    ext: ExtField
    alpha: ExtElement
    beta: ExtElement
    residue_sum: int
    nonresidue_sum: int
    delta: int
    powers: np.ndarray

    def residue_pair(self) -> Tuple[int, int]:
        """(R, N) as used by the closed forms.

        For odd l these are (δ-1)/2 and (-1-δ)/2 with δ = 2R + 1, which
        reproduces the computed sums; for l = 2 the computed sums are used
        as they stand.
        """
        l = self.ext.l
        if l == 2:
            return self.residue_sum, self.nonresidue_sum
        half = pow(2, -1, l)
        return (self.delta - 1) * half % l, (-1 - self.delta) * half % l

    def power(self, u: int) -> ExtElement:
        return ExtElement(self.ext, self.powers[u % len(self.powers)].copy())


def gauss_data(params: Parameters, alpha: ExtElement, ext: Optional[ExtField] = None) -> GaussData:
    ext = ext or alpha.field
    p, l, n = params.p, params.l, params.n
    powers = ext.power_table(alpha, n)
    step = n // p
    beta = ExtElement(ext, powers[step].copy())

    qr = quadratic_residue_sets(p, 1)
    r_vec = powers[[x * step for x in qr.residues]].sum(axis=0) % l
    n_vec = powers[[x * step for x in qr.nonresidues]].sum(axis=0) % l
    residue_sum = ExtElement(ext, r_vec).to_scalar()
    nonresidue_sum = ExtElement(ext, n_vec).to_scalar()

    if (residue_sum + nonresidue_sum) % l != l - 1:
        raise ArithmeticConsistencyError(f"R + N = {residue_sum + nonresidue_sum} ≠ -1 mod {l}")
    if (residue_sum * nonresidue_sum - (p + 1) // 4) % l:
        raise ArithmeticConsistencyError(f"R*N ≠ (p+1)/4 mod {l} (R={residue_sum}, N={nonresidue_sum})")

    delta = (2 * residue_sum + 1) % l
    if (delta * delta + p) % l:
        raise ArithmeticConsistencyError(f"δ = {delta} does not square to -{p} mod {l}")
    if l == 2:
        if {residue_sum, nonresidue_sum} != {0, 1}:
            raise ArithmeticConsistencyError(f"over F_2 expected {{R, N}} = {{0, 1}}, got {residue_sum}, {nonresidue_sum}")
        if p % 8 != 7:
            raise ArithmeticConsistencyError(f"2 is a residue mod {p} only if p ≡ -1 mod 8")

    logger.info("Gauss sums for %s: R=%d N=%d δ=%d", params.as_tuple(), residue_sum, nonresidue_sum, delta)
    return GaussData(
        ext=ext,
        alpha=alpha,
        beta=beta,
        residue_sum=residue_sum,
        nonresidue_sum=nonresidue_sum,
        delta=delta,
        powers=powers,
    )


def build_gauss(params: Parameters, alpha_index: int = 0) -> GaussData:
    ext = splitting_field(params)
    alpha = primitive_nth_root(params, ext, index=alpha_index)
    return gauss_data(params, alpha, ext)


def find_alpha_index(params: Parameters, residue_sum: int, limit: int = 64) -> int:
    """Smallest ``alpha_index`` whose α gives R = ``residue_sum``.

    Every α gives the same unordered pair {R, N} (α^g swaps them), so a value
    outside that pair raises `UnreachableResidueError` at once.
    """
    ext = splitting_field(params)
    first = gauss_data(params, primitive_nth_root(params, ext), ext)
    reachable = tuple(sorted((first.residue_sum, first.nonresidue_sum)))
    if residue_sum % params.l not in reachable:
        raise UnreachableResidueError(
            f"R = {residue_sum % params.l} is not reachable over F_{params.l}: "
            f"every α gives {{R, N}} = {{{reachable[0]}, {reachable[1]}}}",
            reachable=reachable,
        )
    for index in range(limit):
        try:
            alpha = primitive_nth_root(params, ext, index=index)
        except ArithmeticConsistencyError:
            break
        if gauss_data(params, alpha, ext).residue_sum == residue_sum % params.l:
            return index
    raise ArithmeticConsistencyError(f"no α among the first {limit} candidates gives R = {residue_sum}")
