"""Number-theoretic primitives and validation of the parameter tuple (p, q, s, t, l).

The codes studied here have length n = p^s q^t over F_l under four standing
hypotheses:

- p, q, l are pairwise distinct primes, p and q odd, p ≡ 3 (mod 4);
- gcd(φ(p^s), φ(q^t)) = 2;
- l has order φ(p^s)/2 modulo p^s;
- l is a primitive root modulo q^t.

On top of these, l must be small enough that a sum of n + 1 products of
residues mod l fits in int64 (`fits_int64`); the numpy kernels in gf, poly,
ring and codes all accumulate in int64.

`validate_parameters` checks each of them and raises a `HypothesisError` that
names the first one violated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import count
from math import gcd
from typing import Optional, Tuple

from sympy import isprime, n_order, totient
from sympy.ntheory.modular import crt

from cyclo.errors import ArithmeticConsistencyError, HypothesisError, NotCoprimeError

logger = logging.getLogger(__name__)

INT64_PRODUCT_LIMIT = 1 << 62


# =========================
# Elementary functions
# =========================

def phi(m: int) -> int:
    return int(totient(m))


def fits_int64(terms: int, l: int) -> bool:
    """True when any sum of ``terms`` products of two residues mod l fits in int64."""
    return terms * (l - 1) ** 2 < INT64_PRODUCT_LIMIT


def mult_order(a: int, m: int) -> int:
    """Least τ ≥ 1 with a^τ ≡ 1 (mod m)."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if gcd(a, m) != 1:
        raise NotCoprimeError(f"gcd({a}, {m}) != 1, order undefined")
    return int(n_order(a % m, m))


def find_primitive_root(p: int, k: int) -> int:
    """Smallest g ≥ 2 generating Z*_{p^k}."""
    modulus = p**k
    target = phi(modulus)
    for g in count(2):
        if g % p and mult_order(g, modulus) == target:
            return g
    raise AssertionError("unreachable")


def crt_solve(r1: int, m1: int, r2: int, m2: int) -> int:
    if gcd(m1, m2) != 1:
        raise NotCoprimeError(f"moduli {m1} and {m2} are not coprime")
    x, _ = crt([m1, m2], [r1 % m1, r2 % m2])
    return int(x) % (m1 * m2)


def legendre(a: int, p: int) -> int:
    """Euler's criterion: +1 for a residue, -1 for a non-residue, 0 if p | a."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def valuation(a: int, prime: int, cap: int) -> int:
    """ν_prime(a) capped at ``cap``; a ≡ 0 counts as ``cap``."""
    if a % prime**cap == 0:
        return cap
    v = 0
    while a % prime == 0:
        a //= prime
        v += 1
    return v


# =========================
# Quadratic residues
# =========================

@dataclass(frozen=True)
class QRSets:
    prime: int
    exponent: int
    residues: Tuple[int, ...]
    nonresidues: Tuple[int, ...]

    def of_class(self, sign: int) -> Tuple[int, ...]:
        return self.residues if sign == 1 else self.nonresidues


def quadratic_residue_sets(p: int, k: int) -> QRSets:
    """Residues and non-residues of Z*_{p^k}, lifted from the mod-p classes.

    An element of Z*_{p^k} is a square iff its reduction mod p is, so
    R_k = {x + pλ : x ∈ R_1, 0 ≤ λ < p^{k-1}}.
    """
    base_r = [a for a in range(1, p) if legendre(a, p) == 1]
    base_n = [a for a in range(1, p) if legendre(a, p) == -1]
    lifts = range(p ** (k - 1))
    residues = tuple(sorted(x + p * lam for x in base_r for lam in lifts))
    nonresidues = tuple(sorted(x + p * lam for x in base_n for lam in lifts))
    return QRSets(prime=p, exponent=k, residues=residues, nonresidues=nonresidues)


# =========================
# Parameters
# =========================

@dataclass(frozen=True)
class Parameters:
    p: int
    q: int
    s: int
    t: int
    l: int
    g1: int
    g2: int
    g: int
    v: int
    qr_case: bool

    @property
    def n(self) -> int:
        return self.p**self.s * self.q**self.t

    @property
    def p_power(self) -> int:
        return self.p**self.s

    @property
    def q_power(self) -> int:
        return self.q**self.t

    @property
    def extension_degree(self) -> int:
        return phi(self.n) // 2

    @property
    def q_class(self) -> int:
        """Legendre symbol (q/p)."""
        return 1 if self.qr_case else -1

    @property
    def coset_count(self) -> int:
        return (2 * self.s + 1) * (self.t + 1)

    def p_part_size(self, i: int) -> int:
        """φ(p^{s-i})/2 for i < s, and 1 at the top level."""
        return 1 if i == self.s else phi(self.p ** (self.s - i)) // 2

    def q_part_size(self, j: int) -> int:
        """φ(q^{t-j}), equal to 1 at j = t."""
        return phi(self.q ** (self.t - j))

    def as_tuple(self) -> Tuple[int, int, int, int, int]:
        return (self.p, self.q, self.s, self.t, self.l)


def _require(ok: bool, hypothesis: str, message: str) -> None:
    if not ok:
        raise HypothesisError(message, hypothesis=hypothesis)


def validate_parameters(p: int, q: int, s: int, t: int, l: int, g: Optional[int] = None) -> Parameters:
    _require(s >= 1 and t >= 1, "exponent", f"exponents must be >= 1 (s={s}, t={t})")
    for name, value in (("p", p), ("q", q), ("l", l)):
        _require(bool(isprime(value)), "prime", f"{name}={value} is not prime")
    _require(p != 2 and q != 2, "prime", f"p and q must be odd primes (p={p}, q={q})")
    _require(len({p, q, l}) == 3, "distinct", f"p, q, l must be pairwise distinct (got {p}, {q}, {l})")
    _require(p % 4 == 3, "p-mod-4", f"p ≢ 3 mod 4 (p={p})")

    ps, qt = p**s, q**t
    _require(
        fits_int64(ps * qt + 1, l),
        "l-range",
        f"l={l} is too large for n={ps * qt}: (n+1)(l-1)^2 must stay below 2^62",
    )
    phi_p, phi_q = phi(ps), phi(qt)
    _require(
        gcd(phi_p, phi_q) == 2,
        "totient-gcd",
        f"gcd(φ(p^s), φ(q^t)) = gcd({phi_p}, {phi_q}) = {gcd(phi_p, phi_q)} ≠ 2",
    )

    ord_p = mult_order(l, ps)
    _require(
        ord_p == phi_p // 2,
        "order-mod-p",
        f"ord_{{p^s}}(l) ≠ φ(p^s)/2: ord_{ps}({l}) = {ord_p}, φ({ps})/2 = {phi_p // 2}",
    )
    ord_q = mult_order(l, qt)
    _require(
        ord_q == phi_q,
        "primitive-mod-q",
        f"l is not primitive mod q^t: ord_{qt}({l}) = {ord_q}, φ({qt}) = {phi_q}",
    )

    n = ps * qt
    if g is None:
        g1 = find_primitive_root(p, s)
        g2 = find_primitive_root(q, t)
        g = crt_solve(g1, ps, g2, qt)
    else:
        g %= n
        _require(
            gcd(g, n) == 1 and mult_order(g, ps) == phi_p and mult_order(g, qt) == phi_q,
            "root-override",
            f"g={g} is not a common primitive root mod {ps} and {qt}",
        )
        g1, g2 = g % ps, g % qt
    v = crt_solve(1, ps, g, qt)

    if mult_order(l, n) != phi(n) // 2:
        raise ArithmeticConsistencyError(f"ord_{n}({l}) != φ({n})/2 although the hypotheses hold")

    params = Parameters(
        p=p, q=q, s=s, t=t, l=l,
        g1=g1, g2=g2, g=g, v=v,
        qr_case=legendre(q, p) == 1,
    )
    logger.debug("validated %s: n=%d g=%d v=%d qr_case=%s", params.as_tuple(), n, g, v, params.qr_case)
    return params
