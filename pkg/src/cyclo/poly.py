"""Dense polynomials over F_l as int64 numpy arrays, lowest degree first.

The zero polynomial is the empty array. Every function returns a trimmed,
fully reduced array.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

Poly = np.ndarray


def trim(a: Poly) -> Poly:
    nz = np.flatnonzero(a)
    if nz.size == 0:
        return a[:0].astype(np.int64)
    return a[: nz[-1] + 1].astype(np.int64)


def add(a: Poly, b: Poly, l: int) -> Poly:
    size = max(len(a), len(b))
    out = np.zeros(size, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] += b
    return trim(out % l)


def sub(a: Poly, b: Poly, l: int) -> Poly:
    return add(a, (-np.asarray(b, dtype=np.int64)) % l, l)


def mul(a: Poly, b: Poly, l: int) -> Poly:
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    return trim(np.convolve(a % l, b % l) % l)


def scale(a: Poly, c: int, l: int) -> Poly:
    return trim((a * (c % l)) % l)


def monic(a: Poly, l: int) -> Poly:
    a = trim(a)
    if len(a) == 0:
        return a
    return scale(a, pow(int(a[-1]), -1, l), l)


def divmod_poly(a: Poly, b: Poly, l: int) -> Tuple[Poly, Poly]:
    a, b = trim(a % l), trim(b % l)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return np.zeros(0, dtype=np.int64), a
    inv_lead = pow(int(b[-1]), -1, l)
    rem = a.copy()
    quot = np.zeros(len(a) - len(b) + 1, dtype=np.int64)
    width = len(b)
    for k in range(len(quot) - 1, -1, -1):
        c = int(rem[k + width - 1]) * inv_lead % l
        if c:
            quot[k] = c
            rem[k : k + width] = (rem[k : k + width] - c * b) % l
    return trim(quot), trim(rem[: width - 1])


def gcd_poly(a: Poly, b: Poly, l: int) -> Poly:
    a, b = trim(a % l), trim(b % l)
    while len(b):
        _, r = divmod_poly(a, b, l)
        a, b = b, r
    return monic(a, l)


def x_power_minus_one(n: int, l: int) -> Poly:
    """x^n - 1."""
    out = np.zeros(n + 1, dtype=np.int64)
    out[0] = l - 1
    out[n] = 1
    return out


def geometric(step: int, terms: int) -> Poly:
    """1 + x^step + x^{2 step} + ... + x^{(terms-1) step}."""
    out = np.zeros((terms - 1) * step + 1, dtype=np.int64)
    out[::step] = 1
    return out