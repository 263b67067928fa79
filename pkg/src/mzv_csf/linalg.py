"""Exact sparse linear algebra over Q for spans of polynomials.

Rows are polynomials of one weight; columns are the words that occur.  Two
eliminations are provided:

* :func:`exact_rank` clears denominators and runs fraction-free sparse
  elimination on Python integers, keeping every row primitive (content 1)
  so entries stay small.  Pivot rows are keyed by their leading column and
  input rows are fed sparsest first, which keeps fill-in low.
* :func:`modular_rank` reduces a dense copy modulo a prime with numpy.
  It is an independent code path used to cross-check :func:`exact_rank`.

:func:`membership` does Fraction-valued elimination that also tracks each
pivot row as a combination of the original generators, so a positive answer
comes with a certificate that is re-expanded and checked before returning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Sequence

import numpy as np

from .errors import InternalInconsistency, WeightMismatch
from .free_algebra import Poly, Word, poly_sum, sort_key

# primes in (2^30, 2^31): products of two residues fit in int64
_PRIMES = (
    1073741827, 1073741831, 1073741833, 1073741839, 1073741843,
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
)


@dataclass
class LinearSystem:
    """Generators of a subspace of the weight-``weight`` part of Q<x, y>."""

    weight: int
    rows: list[Poly]
    labels: list[Hashable] = field(default_factory=list)
    columns: list[Word] = field(default_factory=list)

    def __post_init__(self):
        if not self.labels:
            self.labels = list(range(len(self.rows)))
        if len(self.labels) != len(self.rows):
            raise ValueError("one label per row required")
        support = set()
        for p in self.rows:
            if not p.is_homogeneous(self.weight) and p:
                raise WeightMismatch(f"generator {p} is not homogeneous of weight {self.weight}")
            support.update(w for w, _ in p.items())
        if self.columns:
            missing = support - set(self.columns)
            if missing:
                raise ValueError(f"row support outside columns: {sorted(missing)[:3]}")
        else:
            self.columns = sorted(support, key=sort_key)

    @property
    def column_index(self) -> dict[Word, int]:
        return {w: i for i, w in enumerate(self.columns)}

    def integer_rows(self) -> list[dict[int, int]]:
        """Rows scaled to primitive integer vectors, keyed by column number."""
        idx = self.column_index
        out = []
        for p in self.rows:
            if not p:
                continue
            den = lcm(*(c.denominator for _, c in p.items() if type(c) is not int))
            vec = {idx[w]: int(c * den) for w, c in p.items()}
            out.append(_primitive(vec))
        return out

    def distinct_integer_rows(self) -> list[dict[int, int]]:
        """Integer rows with duplicates removed; rank is unchanged.

        Primitive rows have a positive leading entry, so rows equal up to a
        rational factor become identical.
        """
        seen = set()
        out = []
        for vec in self.integer_rows():
            key = frozenset(vec.items())
            if key not in seen:
                seen.add(key)
                out.append(vec)
        return out


def _primitive(vec: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = min(vec)
    if vec[lead] < 0:
        g = -g
    if g == 1:
        return vec
    return {c: v // g for c, v in vec.items()}


def _reduce_int(vec: dict[int, int], pivots: dict[int, dict[int, int]]) -> dict[int, int]:
    while vec:
        lead = min(vec)
        piv = pivots.get(lead)
        if piv is None:
            return vec
        a, b = piv[lead], vec[lead]
        g = gcd(a, b)
        a, b = a // g, b // g
        new = {c: a * v for c, v in vec.items()} if a != 1 else dict(vec)
        for c, v in piv.items():
            t = new.get(c, 0) - b * v
            if t:
                new[c] = t
            else:
                new.pop(c, None)
        vec = _primitive(new) if new else new
    return vec


def echelon_int(rows: Sequence[dict[int, int]]) -> dict[int, dict[int, int]]:
    """Fraction-free row echelon form; returns pivot rows keyed by leading column."""
    pivots: dict[int, dict[int, int]] = {}
    for vec in sorted(rows, key=len):
        red = _reduce_int(vec, pivots)
        if red:
            pivots[min(red)] = red
    return pivots


def modular_rank(rows: Sequence[dict[int, int]], ncols: int, p: int) -> int:
    """Rank over GF(p) of integer rows, by dense elimination in numpy."""
    if not rows:
        return 0
    A = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, vec in enumerate(rows):
        for c, v in vec.items():
            A[i, c] = v % p
    rank = 0
    m = A.shape[0]
    for col in range(ncols):
        if rank == m:
            break
        nz = np.nonzero(A[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), -1, p)
        A[rank] = (A[rank] * inv) % p
        below = rank + 1 + np.nonzero(A[rank + 1:, col])[0]
        if below.size:
            f = A[below, col][:, None]
            A[below] = (A[below] - (f * A[rank]) % p) % p
        rank += 1
    return rank


def exact_rank(sys: LinearSystem, primes: int = 2, seed: int | None = None) -> int:
    """Rank over Q, cross-checked against the rank modulo ``primes`` random large primes.

    For an integer matrix the rank mod p never exceeds the rank over Q, and
    equals it for all but finitely many p; any disagreement is treated as an
    internal error rather than as bad luck.
    """
    rows = sys.distinct_integer_rows()
    rank = len(echelon_int(rows))
    rng = random.Random(seed)
    for p in rng.sample(_PRIMES, primes):
        r = modular_rank(rows, len(sys.columns), p)
        if r != rank:
            raise InternalInconsistency(
                f"exact rank {rank} disagrees with rank {r} modulo {p} (weight {sys.weight})"
            )
    return rank


# -- membership -------------------------------------------------------------------

@dataclass
class MembershipCertificate:
    member: bool
    combination: list[tuple[Hashable, Fraction]] = field(default_factory=list)

    def expand(self, sys: LinearSystem) -> Poly:
        by_label = dict(zip(sys.labels, sys.rows))
        return poly_sum(by_label[lab].scale(c) for lab, c in self.combination)


class SpanEchelon:
    """Reduced echelon basis of a :class:`LinearSystem` with provenance.

    Each pivot row is stored with its expression in the generators, so
    reductions of queries produce explicit combinations.
    """

    def __init__(self, sys: LinearSystem):
        self.sys = sys
        self.col = {w: i for i, w in enumerate(sys.columns)}
        self.pivots: dict[int, tuple[dict[int, Fraction], dict[int, Fraction]]] = {}
        order = sorted(range(len(sys.rows)), key=lambda i: len(sys.rows[i]))
        for i in order:
            p = sys.rows[i]
            if not p:
                continue
            vec = {self.col[w]: Fraction(c) for w, c in p.items()}
            vec, combo = self._reduce(vec, {i: Fraction(1)})
            if vec:
                lead = min(vec)
                inv = 1 / vec[lead]
                vec = {c: v * inv for c, v in vec.items()}
                combo = {g: v * inv for g, v in combo.items()}
                self.pivots[lead] = (vec, combo)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec, combo):
        vec, combo = dict(vec), dict(combo)
        while vec:
            lead = min(vec)
            entry = self.pivots.get(lead)
            if entry is None:
                break
            pvec, pcombo = entry
            f = vec[lead]
            for c, v in pvec.items():
                t = vec.get(c, 0) - f * v
                if t:
                    vec[c] = t
                else:
                    vec.pop(c, None)
            for g, v in pcombo.items():
                t = combo.get(g, 0) - f * v
                if t:
                    combo[g] = t
                else:
                    combo.pop(g, None)
        return vec, combo

    def membership(self, q: Poly) -> MembershipCertificate:
        if q and not q.is_homogeneous(self.sys.weight):
            raise WeightMismatch(f"query is not homogeneous of weight {self.sys.weight}")
        if any(w not in self.col for w, _ in q.items()):
            return MembershipCertificate(False)
        vec = {self.col[w]: Fraction(c) for w, c in q.items()}
        rest, combo = self._reduce(vec, {})
        if rest:
            return MembershipCertificate(False)
        # vec - sum(combo) == 0 with combo tracking subtracted generators
        cert = MembershipCertificate(
            True, sorted(((self.sys.labels[g], -v) for g, v in combo.items()), key=lambda t: str(t[0]))
        )
        if cert.expand(self.sys) != q:
            raise InternalInconsistency("membership certificate does not reproduce the query")
        return cert


def membership(sys: LinearSystem, q: Poly) -> MembershipCertificate:
    return SpanEchelon(sys).membership(q)
