"""Minimal cyclic codes, their repetition structure and the duadic-type codes.

A code is stored by its generator polynomial g(x) | x^n - 1 (lowest degree
first). Codewords are m(x) g(x) for messages m of degree < k = n - deg g,
so the message space is enumerated directly through a k x n generator matrix.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from cyclo import poly
from cyclo.cosets import C, CosetLabel, CosetSystem
from cyclo.errors import ArithmeticConsistencyError, BudgetExceededError, IndexRangeError, SelectionShapeError
from cyclo.gf import GaussData
from cyclo.idempotents import idempotent, minimal_polynomial
from cyclo.numtheory import Parameters
from cyclo.ring import RingElement, substitute
from cyclo.settings import DEFAULT_BUDGET, DEFAULT_SHARD_SIZE

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Distance:
    value: int
    kind: str  # "exact" | "bound"

    def to_json(self) -> Dict[str, object]:
        return {"value": self.value, "kind": self.kind}


@dataclass(frozen=True, eq=False)
class CodeSpec:
    n: int
    l: int
    generator: np.ndarray
    distance: Optional[Distance] = None
    provenance: str = ""
    odd_like_period: Optional[int] = None
    inner_length: Optional[int] = None

    @property
    def dimension(self) -> int:
        return self.n - (len(self.generator) - 1)

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "l": self.l,
            "generator": [int(c) for c in self.generator],
            "k": self.dimension,
            "d": self.distance.to_json() if self.distance else None,
            "provenance": self.provenance,
        }


def _quotient_of_xn_minus_one(n: int, l: int, divisor: np.ndarray, what: str) -> np.ndarray:
    q, r = poly.divmod_poly(poly.x_power_minus_one(n, l), divisor, l)
    if len(r):
        raise ArithmeticConsistencyError(f"{what} does not divide x^{n} - 1")
    return q


def minimal_code(system: CosetSystem, gauss: GaussData, label: CosetLabel) -> CodeSpec:
    """The minimal ideal generated by (x^n - 1)/M_γ."""
    P = system.params
    M = minimal_polynomial(system, gauss, label)
    gen = _quotient_of_xn_minus_one(P.n, P.l, M.poly, f"M for {label.symbol()}")
    distance, provenance = None, "minimal ideal"
    if label.i == P.s and label.j == P.t:
        distance, provenance = Distance(P.n, "exact"), "repetition code"
    elif label.i == P.s:
        distance = Distance(2 * P.p_power * P.q**label.j, "exact")
        provenance = "repeated parity code"
    code = CodeSpec(n=P.n, l=P.l, generator=gen, distance=distance, provenance=provenance)
    if code.dimension != len(system.coset(label)):
        raise ArithmeticConsistencyError(f"dimension {code.dimension} ≠ |{label.symbol()}|")
    return code


def generator_matrix(code: CodeSpec) -> np.ndarray:
    """Rows x^r g(x), r < k."""
    k, n = code.dimension, code.n
    G = np.zeros((k, n), dtype=np.int64)
    for r in range(k):
        G[r, r : r + len(code.generator)] = code.generator
    return G


# =========================
# Message-space enumeration
# =========================

def _messages(start: int, stop: int, k: int, l: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.zeros((len(idx), k), dtype=np.int64)
    for c in range(k):
        digits[:, c] = idx % l
        idx = idx // l
    return digits


def _shard_min(G: np.ndarray, l: int, start: int, stop: int,
               keep: Optional[Callable[[np.ndarray], np.ndarray]]) -> Optional[int]:
    words = (_messages(start, stop, G.shape[0], l) @ G) % l
    weights = np.count_nonzero(words, axis=1)
    mask = weights > 0
    if keep is not None:
        mask &= keep(words)
    if not mask.any():
        return None
    return int(weights[mask].min())


def _enumerate_min(code: CodeSpec, budget: int, shard_size: int, workers: int,
                   keep: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> Optional[int]:
    l, k = code.l, code.dimension
    total = l**k
    if total - 1 > budget:
        raise BudgetExceededError(total - 1, budget)
    G = generator_matrix(code)
    shards = [(a, min(a + shard_size, total)) for a in range(0, total, shard_size)]
    logger.debug("enumerating %d codewords in %d shards (workers=%d)", total - 1, len(shards), workers)
    if workers > 1 and len(shards) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda ab: _shard_min(G, l, ab[0], ab[1], keep), shards))
    else:
        results = [_shard_min(G, l, a, b, keep) for a, b in shards]
    found = [r for r in results if r is not None]
    return min(found) if found else None


def min_distance_exhaustive(
    code: CodeSpec,
    budget: int = DEFAULT_BUDGET,
    shard_size: int = DEFAULT_SHARD_SIZE,
    workers: int = 1,
) -> int:
    d = _enumerate_min(code, budget, shard_size, workers)
    if d is None:
        raise ArithmeticConsistencyError("code has no nonzero codeword")
    return d


# =========================
# Odd-like words
# =========================

def fold(words: np.ndarray, period: int, l: int) -> np.ndarray:
    """(Σ_{e ≡ r mod period} c_e)_r for each row."""
    n = words.shape[-1]
    return words.reshape(*words.shape[:-1], n // period, period).sum(axis=-2) % l


def is_odd_like(word: np.ndarray, period: int, l: int) -> bool:
    """A word is odd-like iff it is not divisible by x^period - 1."""
    return bool(fold(np.asarray(word, dtype=np.int64), period, l).any())


@dataclass(frozen=True)
class OddLikeResult:
    value: Optional[int]
    kind: str  # "exact" | "sampled"
    examined: int
    bound: Optional[int]

    @property
    def consistent(self) -> bool:
        return self.bound is None or self.value is None or self.value >= self.bound

    @property
    def verdict(self) -> str:
        if not self.consistent:
            return "bound-violated"
        return "exact" if self.kind == "exact" else "bound-consistent"


def odd_like_min_weight(
    code: CodeSpec,
    budget: int = DEFAULT_BUDGET,
    shard_size: int = DEFAULT_SHARD_SIZE,
    workers: int = 1,
    samples: Optional[int] = None,
) -> OddLikeResult:
    """Minimum weight over odd-like codewords; sampled when the message space exceeds the budget."""
    if code.odd_like_period is None:
        raise ValueError("code has no odd-like period")
    period, l = code.odd_like_period, code.l
    bound = code.distance.value if code.distance and code.distance.kind == "bound" else None

    def keep(words: np.ndarray) -> np.ndarray:
        return fold(words, period, l).any(axis=1)

    total = l**code.dimension - 1
    try:
        value = _enumerate_min(code, budget, shard_size, workers, keep)
        result = OddLikeResult(value, "exact", total, bound)
    except BudgetExceededError:
        count_ = samples or min(budget, 1 << 16)
        logger.info("odd-like search needs %d codewords, sampling %d instead", total, count_)
        rng = np.random.default_rng(0)
        G = generator_matrix(code)
        msgs = rng.integers(0, l, size=(count_, code.dimension), dtype=np.int64)
        words = (msgs @ G) % l
        weights = np.count_nonzero(words, axis=1)
        mask = (weights > 0) & keep(words)
        value = int(weights[mask].min()) if mask.any() else None
        result = OddLikeResult(value, "sampled", count_, bound)
    if not result.consistent:
        logger.warning("odd-like weight %s below the bound %s (%s)", result.value, bound, code.provenance)
    return result


# =========================
# Repetition structure
# =========================

@dataclass(frozen=True, eq=False)
class RepetitionDecomposition:
    inner: CodeSpec
    factor: int
    generator: np.ndarray


def repetition_decomposition(system: CosetSystem, gauss: GaussData, j: int) -> RepetitionDecomposition:
    """The code of C(s,j) as the inner code <x^{q^{t-j-1}} - 1> of length q^{t-j}, repeated p^s q^j times."""
    P = system.params
    if not 0 <= j < P.t:
        raise IndexRangeError(f"j={j} outside 0 <= j < {P.t}")
    inner_len = P.q ** (P.t - j)
    factor = P.p_power * P.q**j
    inner_gen = poly.x_power_minus_one(P.q ** (P.t - j - 1), P.l)
    inner = CodeSpec(n=inner_len, l=P.l, generator=inner_gen, distance=Distance(2, "exact"),
                     provenance="parity code")
    full = poly.mul(inner_gen, poly.geometric(inner_len, factor), P.l)
    expected = minimal_code(system, gauss, C(P.s, j)).generator
    if not np.array_equal(full, expected):
        raise ArithmeticConsistencyError(f"repetition generator differs from the code of C({P.s},{j})")
    return RepetitionDecomposition(inner=inner, factor=factor, generator=full)


def repeat(word: np.ndarray, factor: int) -> np.ndarray:
    return np.tile(np.asarray(word, dtype=np.int64), factor)


# =========================
# Duadic-type codes
# =========================

@dataclass(frozen=True, eq=False)
class SelectionMatrix:
    A: np.ndarray
    anchor: Tuple[int, int] = (0, 0)

    @classmethod
    def build(cls, params: Parameters, A: Sequence[Sequence[int]] | np.ndarray,
              anchor: Optional[Tuple[int, int]] = None) -> "SelectionMatrix":
        i0, j0 = anchor or (0, 0)
        if not (0 <= i0 < params.s and 0 <= j0 <= params.t):
            raise IndexRangeError(f"anchor ({i0},{j0}) needs 0 <= i < {params.s}, 0 <= j <= {params.t}")
        arr = np.asarray(A, dtype=np.int64)
        shape = (params.s - i0, params.t + 1 - j0)
        if arr.shape != shape:
            raise SelectionShapeError(f"selection matrix has shape {arr.shape}, expected {shape}")
        if not np.isin(arr, (0, 1)).all():
            raise SelectionShapeError("selection matrix entries must be 0 or 1")
        return cls(A=arr, anchor=(i0, j0))

    def chosen(self) -> List[CosetLabel]:
        """d^{(0)} = M of C(i,j), d^{(1)} = M of C*(i,j), shifted by the anchor."""
        i0, j0 = self.anchor
        return [
            CosetLabel(i0 + a, j0 + b, bool(self.A[a, b]))
            for a in range(self.A.shape[0])
            for b in range(self.A.shape[1])
        ]


def all_selections(params: Parameters, anchor: Optional[Tuple[int, int]] = None) -> List[SelectionMatrix]:
    i0, j0 = anchor or (0, 0)
    rows, cols = params.s - i0, params.t + 1 - j0
    out = []
    for bits in range(1 << (rows * cols)):
        A = np.array([(bits >> k) & 1 for k in range(rows * cols)], dtype=np.int64).reshape(rows, cols)
        out.append(SelectionMatrix.build(params, A, (i0, j0)))
    return out


def _ceil_sqrt(x: int) -> int:
    r = isqrt(x)
    return r if r * r == x else r + 1


def duadic_code(
    system: CosetSystem,
    gauss: GaussData,
    A: SelectionMatrix | Sequence[Sequence[int]] | np.ndarray,
    anchor: Optional[Tuple[int, int]] = None,
) -> CodeSpec:
    """g_A = Π d^{(a_ij)}_{ij}, times the minimal polynomials outside the anchored block.

    Without an anchor the code has dimension (p^s+1) q^t / 2 and odd-like
    weight at least sqrt(p^s). Anchored at (i, j) it is the (p^i q^j)-fold
    repetition of the same construction at length p^{s-i} q^{t-j}.
    """
    P = system.params
    sel = A if isinstance(A, SelectionMatrix) else SelectionMatrix.build(P, A, anchor)
    i0, j0 = sel.anchor
    factors = list(sel.chosen())
    factors += [lab for lab in system.labels if lab.i < i0 or lab.j < j0]
    gen = np.array([1], dtype=np.int64)
    for lab in factors:
        gen = poly.mul(gen, minimal_polynomial(system, gauss, lab).poly, P.l)
    _quotient_of_xn_minus_one(P.n, P.l, gen, "g_A")

    inner_len = P.p ** (P.s - i0) * P.q ** (P.t - j0)
    scale = P.p**i0 * P.q**j0
    bound = scale * _ceil_sqrt(P.p ** (P.s - i0))
    code = CodeSpec(
        n=P.n,
        l=P.l,
        generator=gen,
        distance=Distance(bound, "bound"),
        provenance="odd-like square-root bound" + (f" (repeated {scale}x)" if scale > 1 else ""),
        odd_like_period=P.q ** (P.t - j0),
        inner_length=inner_len,
    )
    expected_k = (P.p ** (P.s - i0) + 1) * P.q ** (P.t - j0) // 2
    if code.dimension != expected_k:
        raise ArithmeticConsistencyError(f"duadic dimension {code.dimension} ≠ {expected_k}")
    return code


def product_check(code: CodeSpec, params: Parameters, word: np.ndarray) -> bool:
    """a(x) a(x^g) is a multiple of 1 + x^{q^t} + ... + x^{(p^s-1) q^t}, on the inner block."""
    inner_len = code.inner_length or code.n
    period = code.odd_like_period or params.q_power
    a = RingElement(np.asarray(word, dtype=np.int64)[:inner_len], params.l)
    b = a * substitute(a, params.g % inner_len)
    J = poly.geometric(period, inner_len // period)
    _, r = poly.divmod_poly(b.coeffs, J, params.l)
    return len(r) == 0


def codeword(code: CodeSpec, message: Sequence[int]) -> np.ndarray:
    msg = np.zeros(code.dimension, dtype=np.int64)
    msg[: len(message)] = message
    return (msg @ generator_matrix(code)) % code.l


# =========================
# Sums of minimal ideals
# =========================

def ideal_code(system: CosetSystem, gauss: GaussData, labels: Iterable[CosetLabel]) -> Tuple[CodeSpec, RingElement]:
    """⊕ of the minimal ideals of ``labels``: generator (x^n-1)/Π M_γ and idempotent Σ θ_γ."""
    P = system.params
    labels = list(dict.fromkeys(labels))
    prod = np.array([1], dtype=np.int64)
    theta = RingElement(np.zeros(P.n, dtype=np.int64), P.l)
    for lab in labels:
        prod = poly.mul(prod, minimal_polynomial(system, gauss, lab).poly, P.l)
        theta = theta + idempotent(system, gauss, lab).poly
    gen = _quotient_of_xn_minus_one(P.n, P.l, prod, "Π M")
    code = CodeSpec(n=P.n, l=P.l, generator=gen, provenance="sum of minimal ideals")
    expected = sum(len(system.coset(lab)) for lab in labels)
    if code.dimension != expected:
        raise ArithmeticConsistencyError(f"ideal dimension {code.dimension} ≠ {expected}")
    return code, theta
