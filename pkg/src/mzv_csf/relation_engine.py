"""Spans of relations and the mechanized identity checks built on them."""

from __future__ import annotations

import enum
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .cyclic_operators import CyclicVariant, cyclic_derivative, rho, rho_bar
from .errors import PreconditionViolation
from .free_algebra import (
    X,
    Y,
    Index,
    Poly,
    Space,
    classify,
    compositions,
    count_cyclic_classes,
    enumerate_words,
    poly_sum,
)
from .linalg import LinearSystem, MembershipCertificate, SpanEchelon, exact_rank
from .zeta_maps import (
    Z_POLY,
    a_element,
    a_product,
    apply_alpha_tilde,
    gamma,
    left_mul_x,
    phi,
    star,
    star_bar,
    star_many,
    strip_left_x,
    z_poly,
    zword_poly,
)


class SpanVariant(enum.Enum):
    STAR = "STAR"
    STAR_BAR = "STAR_BAR"


def hy_words(d: int) -> list[str]:
    """Degree-``d`` words ending in y (a basis of the degree-d part of H y)."""
    return enumerate_words(d, Space.H1) if d >= 1 else []


def kawashima_span(weight: int, variant: SpanVariant = SpanVariant.STAR) -> LinearSystem:
    """Generators ``x phi(u * v)`` (or ``x alpha~(u *bar v)``) with ``deg u + deg v = weight - 1``.

    Unordered pairs are taken once; generators that vanish are dropped.
    """
    if weight < 3:
        raise PreconditionViolation("Kawashima spans start at weight 3")
    variant = SpanVariant(variant)
    rows, labels = [], []
    total = weight - 1
    for a in range(1, total // 2 + 1):
        left, right = hy_words(a), hy_words(total - a)
        for u in left:
            for v in right:
                if a == total - a and v < u:
                    continue
                pu, pv = Poly.word(u), Poly.word(v)
                if variant is SpanVariant.STAR:
                    g = left_mul_x(phi(star(pu, pv)))
                else:
                    g = left_mul_x(apply_alpha_tilde(star_bar(pu, pv)))
                if g:
                    rows.append(g)
                    labels.append((u, v))
    return LinearSystem(weight, rows, labels)


_ECHELON_CACHE: dict = {}


def kawashima_echelon(weight: int, variant: SpanVariant = SpanVariant.STAR) -> SpanEchelon:
    key = (weight, SpanVariant(variant))
    if key not in _ECHELON_CACHE:
        _ECHELON_CACHE[key] = SpanEchelon(kawashima_span(weight, variant))
    return _ECHELON_CACHE[key]


def rho_membership(n: int, w: str, bar: bool = False) -> MembershipCertificate:
    """Is ``rho_n(w)`` (or ``rho-bar_n(w)``) in the Kawashima span of its weight?"""
    op = rho_bar if bar else rho
    q = op(n, Poly.word(w))
    variant = SpanVariant.STAR_BAR if bar else SpanVariant.STAR
    return kawashima_echelon(len(w) + n, variant).membership(q)


# -- rho_n on A-differences ------------------------------------------------------

@dataclass
class KeyPropResult:
    lhs: Poly
    rhs: Poly

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def _check_keyprop_args(n: int, ks) -> Index:
    ks = Index(ks)
    if not ks:
        raise PreconditionViolation("index must be nonempty")
    if n < 1 or ks[0] < n:
        raise PreconditionViolation(f"need k_1 >= n >= 1, got n={n}, k_1={ks[0]}")
    return ks


def key_prop_argument(n: int, ks) -> Poly:
    ks = _check_keyprop_args(n, ks)
    return a_element(ks.weight - n + 1) - a_product((ks[0] - n + 1,) + ks[1:])


def key_prop_lhs(n: int, ks) -> Poly:
    return phi(strip_left_x(rho(n, key_prop_argument(n, ks))))


def key_prop_rhs(ks) -> Poly:
    """``sum_{m=2}^l (-1)^(l-m)/m sum_j sum_alpha H(j, alpha)`` with cyclic subscripts."""
    ks = Index(ks)
    l = len(ks)
    terms = []
    for m in range(2, l + 1):
        coeff = Fraction((-1) ** (l - m), m)
        for j in range(l):
            for alpha in compositions_into(l, m):
                terms.append(harmonic_block_product(ks, j, alpha).scale(coeff))
    return poly_sum(terms)


def compositions_into(l: int, m: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``l`` with exactly ``m`` parts."""
    for cuts in itertools.combinations(range(1, l), m - 1):
        bounds = (0,) + cuts + (l,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def cyclic_blocks(l: int, j: int, alpha) -> list[list[int]]:
    """0-based positions of the consecutive cyclic blocks starting at ``j``."""
    out, start = [], j
    for a in alpha:
        out.append([(start + t) % l for t in range(a)])
        start += a
    return out


def harmonic_block_product(ks, j: int, alpha) -> Poly:
    """``H(j, alpha)``: harmonic product of the z-words of the cyclic blocks (``j`` is 0-based)."""
    blocks = cyclic_blocks(len(ks), j, alpha)
    return star_many(*(zword_poly([ks[i] for i in b]) for b in blocks))


def key_prop_check(n: int, ks) -> KeyPropResult:
    ks = _check_keyprop_args(n, ks)
    return KeyPropResult(key_prop_lhs(n, ks), key_prop_rhs(ks))


def key_prop_lhs_closed_form(n: int, ks) -> Poly:
    """``z_{k_1+...+k_l} + (-1)^l sum_j z_{k_j} ... z_{k_l} z_{k_1} ... z_{k_{j-1}}``."""
    ks = _check_keyprop_args(n, ks)
    l = len(ks)
    rotations = [zword_poly(ks[j:] + ks[:j]) for j in range(l)]
    return z_poly(ks.weight) + poly_sum(rotations).scale((-1) ** l)


# -- ordered set partitions (the U / I_i bookkeeping) --------------------------------

def _set_partitions(items: list) -> Iterator[list[frozenset]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] | {first}] + part[i + 1:]
        yield part + [frozenset([first])]


def ordered_set_partitions(l: int) -> list[tuple[frozenset, ...]]:
    out = []
    for part in _set_partitions(list(range(l))):
        out.extend(itertools.permutations(part))
    return out


def _component_of(k: tuple[frozenset, ...]) -> dict[int, int]:
    return {i: pos for pos, comp in enumerate(k) for i in comp}


def precedes(k: tuple[frozenset, ...], i: int, j: int) -> bool:
    """Does position ``i`` sit in a component strictly left of the one holding ``j``?"""
    where = _component_of(k)
    return where[i] < where[j]


@dataclass
class PartitionReport:
    ks: Index
    U_size: int
    I_sizes: list[int]
    sum_identity: bool
    union_identity: bool
    h_expansion: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sum_identity and self.union_identity and self.h_expansion


def partition_tuple_oracle(ks) -> PartitionReport:
    """Materialize U and the sets I_i for ``ks`` and check the identities they satisfy.

    * the z-words of all tuples in U sum to ``z_{k_1} * ... * z_{k_l}``;
    * U minus the one-component tuple is the union of the I_i, where I_i
      holds the tuples with ``k_i`` strictly left of ``k_{i+1}`` (cyclically);
    * each block product ``H(j, alpha)`` is the sum over tuples in which
      consecutive members of a block appear in strictly increasing components.

    Tuples are kept as ordered set partitions of positions, so the checks
    are symbolic in the parts; the word identities use the given values.
    """
    ks = Index(ks)
    l = len(ks)
    if l == 0 or l > 6:
        raise PreconditionViolation("partition oracle supports 1 <= l <= 6")
    U = ordered_set_partitions(l)
    I = [{k for k in U if precedes(k, i, (i + 1) % l)} for i in range(l)]

    def W(k) -> Poly:
        return zword_poly([sum(ks[i] for i in comp) for comp in k])

    failures = []
    sum_identity = poly_sum(W(k) for k in U) == star_many(*(z_poly(k) for k in ks))
    if not sum_identity:
        failures.append("sum of W over U differs from the harmonic product")
    whole = (frozenset(range(l)),)
    union = set().union(*I) if I else set()
    union_identity = set(U) - {whole} == union
    if not union_identity:
        failures.append("U minus the single-component tuple is not the union of the I_i")
    h_ok = True
    for m in range(1, l + 1):
        for j in range(l):
            for alpha in compositions_into(l, m):
                blocks = cyclic_blocks(l, j, alpha)
                inner = [b[t] for b in blocks for t in range(len(b) - 1)]
                members = [k for k in U if all(k in I[r] for r in inner)]
                if poly_sum(W(k) for k in members) != harmonic_block_product(ks, j, alpha):
                    h_ok = False
                    failures.append(f"H expansion fails for j={j + 1}, alpha={alpha}")
    return PartitionReport(ks, len(U), [len(s) for s in I], sum_identity, union_identity, h_ok, failures)


# -- special evaluations and z_k images -----------------------------------------------

def cyclic_double_sum(ks) -> Poly:
    """``sum_j sum_{i<k_j} z_{k_j-i+1} z_{k_{j+1}} ... z_{k_{j-1}} z_i``."""
    ks = Index(ks)
    out = []
    for j in range(len(ks)):
        rot = ks[j:] + ks[:j]
        for i in range(1, rot[0]):
            out.append(zword_poly((rot[0] - i + 1,) + rot[1:] + (i,)))
    return poly_sum(out)


def cyclic_x_sum(ks) -> Poly:
    """``sum_j x z_{k_{j+1}} ... z_{k_l} z_{k_1} ... z_{k_j}``."""
    ks = Index(ks)
    return poly_sum(left_mul_x(zword_poly(ks[j + 1:] + ks[:j + 1])) for j in range(len(ks)))


def cyclic_sum_expansion(ks) -> Poly:
    return cyclic_double_sum(ks) - cyclic_x_sum(ks)


def cyclic_derivative_difference(w: str, split: int = 1) -> Poly:
    """``(C-bar_w - C_w)(1)``."""
    return (cyclic_derivative(CyclicVariant.C_BAR, w, None, split)
            - cyclic_derivative(CyclicVariant.C, w, None, split))


def derivative_difference_check(ks) -> bool:
    w = zword_poly(ks).words()[0]
    return cyclic_derivative_difference(w) == cyclic_sum_expansion(ks)


def special_evaluations_check(ks) -> bool:
    ks = Index(ks)
    if not ks:
        raise PreconditionViolation("index must be nonempty")
    k = ks.weight
    first = rho(1, zword_poly(ks)) == cyclic_sum_expansion(ks)
    arg = gamma(zword_poly(ks)) - Poly.word(X * k)
    second = rho_bar(1, arg) == cyclic_double_sum(ks) - z_poly(k + 1).scale(k)
    return first and second


def a_star_z_expansion_check(n: int, k: int) -> bool:
    """``A_{k-1} * z_n == sum_{i=1}^k A_{k-i} x^(n-1) A_i``."""
    lhs = star(a_element(k - 1), z_poly(n))
    xs = Poly.word(X * (n - 1))
    rhs = poly_sum(a_element(k - i) * xs * a_element(i) for i in range(1, k + 1))
    return lhs == rhs


def prop4_check(n: int, k: int) -> bool:
    """``rho_n(z_k) == x phi(A_{k-1} * z_n)``, together with the expansion used to prove it."""
    if n < 1 or k < 1:
        raise PreconditionViolation("n, k >= 1")
    main = rho(n, z_poly(k)) == left_mul_x(phi(star(a_element(k - 1), z_poly(n))))
    return main and a_star_z_expansion_check(n, k)


def cor3_check(n: int, k: int) -> bool:
    """``rho_n(y z_k) == x phi(A_{k-1} * z_{n+1} - A_k * z_n)``."""
    if n < 1 or k < 1:
        raise PreconditionViolation("n, k >= 1")
    lhs = rho(n, Poly.word(Y) * z_poly(k))
    inner = star(a_element(k - 1), z_poly(n + 1)) - star(a_element(k), z_poly(n))
    via_shift = rho(n + 1, z_poly(k)) - rho(n, Poly.word(X) * z_poly(k))
    return lhs == left_mul_x(phi(inner)) and lhs == via_shift


def rho_shift_check(n: int, w: str) -> bool:
    return rho(n, Z_POLY * Poly.word(w)) == rho(n + 1, Poly.word(w))


# -- A-monomial basis -------------------------------------------------------------

def a_difference_generators(d: int) -> list[tuple[Index, Poly]]:
    return [(c, a_element(d) - a_product(c)) for c in compositions(d) if len(c) >= 2]


def lemma2_basis_check(d: int) -> bool:
    """The degree-d differences ``A_K - A_{k_1} ... A_{k_l}`` (l >= 2) form a basis of Ch-H^1_(d)."""
    if not 2 <= d <= 12:
        raise PreconditionViolation("basis check supports 2 <= d <= 12")
    gens = a_difference_generators(d)
    dim = 2 ** (d - 1) - 1
    if len(gens) != dim:
        return False
    support = {w for _, g in gens for w, _ in g.items()}
    if not all(classify(w).in_check_h1 for w in support):
        return False
    sys = LinearSystem(d, [g for _, g in gens], [c for c, _ in gens])
    return exact_rank(sys) == dim


# -- dimension table ----------------------------------------------------------------

def rho_span(weight: int, n: int, bar: bool = False) -> LinearSystem:
    op = rho_bar if bar else rho
    d = weight - n
    words = enumerate_words(d, Space.CHECK_H1)
    return LinearSystem(weight, [op(n, Poly.word(w)) for w in words], words)


def csf_dimension(weight: int, n: int, bar: bool = False) -> int:
    return exact_rank(rho_span(weight, n, bar))


@dataclass
class DimTable:
    entries: dict[tuple[int, int], int]

    @property
    def weights(self) -> list[int]:
        return sorted({w for w, _ in self.entries})

    def to_json(self) -> str:
        rows = [{"weight": w, "n": n, "dim": d} for (w, n), d in sorted(self.entries.items())]
        return json.dumps({"entries": rows})

    @classmethod
    def from_json(cls, text: str) -> "DimTable":
        data = json.loads(text)
        return cls({(e["weight"], e["n"]): e["dim"] for e in data["entries"]})

    def to_text(self) -> str:
        weights = self.weights
        ns = sorted({n for _, n in self.entries})
        head = ["weight d+n"] + [str(w) for w in weights]
        lines = [head]
        for n in ns:
            lines.append([f"n={n}"] + [str(self.entries.get((w, n), "")) for w in weights])
        width0 = max(len(r[0]) for r in lines)
        widths = [max(len(r[i]) for r in lines) for i in range(1, len(head))]
        out = []
        for r in lines:
            cells = [c.rjust(wd) for c, wd in zip(r[1:], widths)]
            out.append(r[0].ljust(width0) + " | " + " ".join(cells))
            if r is head:
                out.append("-" * len(out[-1]))
        return "\n".join(out)


def _entry(args):
    weight, n, bar = args
    return (weight, n), csf_dimension(weight, n, bar)


def dims_table(max_weight: int, bar: bool = False, workers: int | None = None) -> DimTable:
    """``dim CSF_d^n`` for every weight ``d + n`` from 3 to ``max_weight``."""
    if max_weight < 3:
        raise PreconditionViolation("max_weight must be >= 3")
    jobs = [(w, n, bar) for w in range(3, max_weight + 1) for n in range(1, w - 1)]
    if workers is None:
        workers = int(os.environ.get("CSF_THREADS", "1") or 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_entry, jobs))
    else:
        results = [_entry(j) for j in jobs]
    return DimTable(dict(results))


def totient_dimension(d: int) -> int:
    """``-2 + (1/d) sum_{m | d} phi(d/m) 2^m``: necklaces of length d minus the two constant ones."""
    if d < 2:
        raise PreconditionViolation("d must be >= 2")
    return count_cyclic_classes(d) - 2


def prop5_check(n: int, d: int) -> bool:
    """Each ``rho_{n+1}(w)``, ``w`` in Ch-H^1_(d), lies in the span of ``rho_n`` on degree d+1."""
    if n < 1 or d < 2:
        raise PreconditionViolation("need n >= 1, d >= 2")
    span = SpanEchelon(rho_span(d + 1 + n, n))
    return all(span.membership(rho(n + 1, Poly.word(w))).member
               for w in enumerate_words(d, Space.CHECK_H1))


def saturation_ranks(weight: int) -> tuple[int, int]:
    """Rank of all ``rho_n`` images at a fixed output weight, and of the ``n = 1`` images alone."""
    rows = []
    for n in range(1, weight - 1):
        rows.extend(rho_span(weight, n).rows)
    union = exact_rank(LinearSystem(weight, rows))
    return union, exact_rank(rho_span(weight, 1))
