"""Truncated nested-sum evaluation of multiple zeta and zeta-star values.

For an index ``(k_1, ..., k_n)`` the partial sums

    S_j(m) = S_j(m - 1) + m^(-k_j) * S_{j+1}(m - 1)      (zeta)
    S_j(m) = S_j(m - 1) + m^(-k_j) * S_{j+1}(m)          (zeta-star)

with ``S_{n+1} = 1`` are built innermost level first as prefix sums over
``m = 1 .. M``; the result is ``S_1(M)``.  Inner levels are accumulated in
extended precision and the outermost level with :func:`math.fsum`.

The reported ``tail_bound`` is the heuristic envelope
``safety * (1 + ln M)^(depth-1) * M^(1-k_1) / (k_1 - 1)``.  It is not a
proven bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DivergentIndex, NonAdmissibleWord, PreconditionViolation
from .free_algebra import Index, Poly, index_from_word

DEFAULT_M = 100_000


@dataclass(frozen=True)
class TruncationParams:
    M: int = DEFAULT_M
    safety: Fraction = Fraction(10)

    def __post_init__(self):
        if self.M < 10:
            raise ValueError("M must be >= 10")
        if self.safety < 1:
            raise ValueError("safety must be >= 1")


@dataclass(frozen=True)
class NumericResult:
    value: float
    tail_bound: float
    M_used: int


def tail_bound(idx, params: TruncationParams) -> float:
    k1, depth, M = idx[0], len(idx), params.M
    return float(params.safety) * (1 + math.log(M)) ** (depth - 1) * M ** (1 - k1) / (k1 - 1)


@lru_cache(maxsize=4096)
def _nested_sum(idx: tuple, M: int, star: bool) -> float:
    m = np.arange(1, M + 1, dtype=np.longdouble)
    inner = np.ones(M + 1, dtype=np.longdouble)  # inner[m] = S_{j+1}(m), m = 0..M
    for k in reversed(idx[1:]):
        weights = inner[1:] if star else inner[:-1]
        level = np.empty(M + 1, dtype=np.longdouble)
        level[0] = 0
        np.cumsum(m ** (-k) * weights, out=level[1:])
        inner = level
    weights = inner[1:] if star else inner[:-1]
    terms = (m ** (-idx[0]) * weights).astype(np.float64)
    return math.fsum(terms[::-1])


def _check_index(idx) -> tuple:
    idx = tuple(Index(idx))
    if not idx or idx[0] < 2:
        raise DivergentIndex(f"index {idx} is empty or has first part 1")
    return idx


def zeta_num(idx, params: TruncationParams = TruncationParams()) -> NumericResult:
    idx = _check_index(idx)
    return NumericResult(_nested_sum(idx, params.M, False), tail_bound(idx, params), params.M)


def zeta_star_num(idx, params: TruncationParams = TruncationParams()) -> NumericResult:
    idx = _check_index(idx)
    return NumericResult(_nested_sum(idx, params.M, True), tail_bound(idx, params), params.M)


def _evaluate(p: Poly, params: TruncationParams, fn) -> NumericResult:
    value, bound = [], 0.0
    for w, c in p:
        if not w:
            value.append(float(c))
            continue
        if not (w[0] == "x" and w[-1] == "y"):
            raise NonAdmissibleWord(w)
        r = fn(index_from_word(w), params)
        value.append(float(c) * r.value)
        bound += abs(float(c)) * r.tail_bound
    return NumericResult(math.fsum(value), bound, params.M)


def evaluate_Z(p: Poly, params: TruncationParams = TruncationParams()) -> NumericResult:
    """Linear extension of ``x^(k1-1) y ... x^(kn-1) y -> zeta(k1, ..., kn)``, ``1 -> 1``."""
    return _evaluate(p, params, zeta_num)


def evaluate_Z_bar(p: Poly, params: TruncationParams = TruncationParams()) -> NumericResult:
    return _evaluate(p, params, zeta_star_num)


class Variant(enum.Enum):
    MZV = "MZV"
    MZSV = "MZSV"


@dataclass
class CSFReport:
    ks: Index
    variant: Variant
    lhs: float
    rhs: float
    tail_bound: float
    tolerance: float

    @property
    def diff(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def passed(self) -> bool:
        return self.diff < self.tolerance


def csf_numeric_check(ks, variant: Variant = Variant.MZV, params: TruncationParams = TruncationParams(),
                      tolerance: float = 1e-3) -> CSFReport:
    """Evaluate both sides of the cyclic sum formula for ``ks`` straight from the index."""
    ks = Index(ks)
    variant = Variant(variant)
    if not ks or all(k == 1 for k in ks):
        raise PreconditionViolation("cyclic sum formula needs some part > 1")
    fn = zeta_num if variant is Variant.MZV else zeta_star_num
    lhs, rhs, bound = [], [], 0.0
    for j in range(len(ks)):
        rot = ks[j:] + ks[:j]
        for i in range(1, rot[0]):
            r = fn((rot[0] - i + 1,) + rot[1:] + (i,), params)
            lhs.append(r.value)
            bound += r.tail_bound
        if variant is Variant.MZV:
            r = zeta_num((rot[0] + 1,) + rot[1:], params)
            rhs.append(r.value)
            bound += r.tail_bound
    if variant is Variant.MZSV:
        k = ks.weight
        r = zeta_num((k + 1,), params)
        rhs.append(k * r.value)
        bound += k * r.tail_bound
    return CSFReport(ks, variant, math.fsum(lhs), math.fsum(rhs), bound, tolerance)
