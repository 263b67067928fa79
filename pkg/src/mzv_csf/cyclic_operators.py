"""Tensor-valued derivations and the cyclic operators rho_n, rho-bar_n, partial_n.

Each operator exists twice.  The tensor path builds ``C_n(w)`` (or its
star / outer variants) in ``H^{(n+1)}`` from the letter values and the
Leibniz rule, then multiplies the slots out.  The fast path writes the
product down directly, per word ``u_1 ... u_l``:

    rho_n     : sum_j sgn(u_j) x u_{j+1..l} z^(n-1) u_{1..j-1} y
    rho_bar_n : sum_j sgn(u_j) x g(u_{j+1..l}) y^(n-1) g(u_{1..j-1}) y,  g = gamma^-1
    partial_n : sum_j sgn(u_j) u_{1..j-1} x z^(n-1) y u_{j+1..l}

with ``sgn(x) = 1``, ``sgn(y) = -1`` and ``z = x + y``.  The fast path is
used everywhere else; the tensor path exists to check it.
"""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .free_algebra import X, Y, Coeff, Poly, Word, poly_sum
from .zeta_maps import AutomorphismName, word_image

Slots = tuple


class Tensor:
    """A Q-linear combination of ``rank``-tuples of words."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Mapping[Slots, Coeff] | Iterable[tuple[Slots, Coeff]] = ()):
        if rank < 2:
            raise ValueError("tensor rank must be >= 2")
        self.rank = rank
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for slots, c in items:
            slots = tuple(slots)
            if len(slots) != rank:
                raise ValueError(f"expected {rank} slots, got {len(slots)}")
            acc[slots] = acc.get(slots, 0) + c
        self._terms = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def zero(cls, rank: int) -> "Tensor":
        return cls(rank)

    @classmethod
    def pure(cls, *slots: Poly) -> "Tensor":
        """Expanded tensor product of polynomials, one per slot."""
        acc: dict = {}
        for combo in itertools.product(*(list(p.items()) for p in slots)):
            key = tuple(w for w, _ in combo)
            c = 1
            for _, v in combo:
                c *= v
            acc[key] = acc.get(key, 0) + c
        return cls(len(slots), acc)

    def items(self):
        return self._terms.items()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __add__(self, other: "Tensor") -> "Tensor":
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return Tensor(self.rank, acc)

    def __neg__(self) -> "Tensor":
        return Tensor(self.rank, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c: Coeff) -> "Tensor":
        return Tensor(self.rank, {k: v * c for k, v in self._terms.items()})

    def _act(self, p: Poly, f: Callable[[Slots, Word], Slots]) -> "Tensor":
        acc: dict = {}
        for slots, c in self._terms.items():
            for w, a in p.items():
                key = f(slots, w)
                acc[key] = acc.get(key, 0) + c * a
        return Tensor(self.rank, acc)

    def __repr__(self) -> str:
        body = " + ".join(
            f"{Fraction(c)}*({' (x) '.join(s or '1' for s in k)})"
            for k, c in sorted(self._terms.items())
        )
        return f"Tensor({self.rank}, {body or '0'})"


def diamond_left(a: Poly, t: Tensor) -> Tensor:
    """``a <> (w_1 (x) ... (x) w_{n+1}) = w_1 (x) ... (x) a w_{n+1}``."""
    return t._act(a, lambda s, w: s[:-1] + (w + s[-1],))


def diamond_right(t: Tensor, b: Poly) -> Tensor:
    """``(w_1 (x) ... (x) w_{n+1}) <> b = w_1 b (x) w_2 (x) ... (x) w_{n+1}``."""
    return t._act(b, lambda s, w: (s[0] + w,) + s[1:])


def outer_left(a: Poly, t: Tensor) -> Tensor:
    return t._act(a, lambda s, w: (w + s[0],) + s[1:])


def outer_right(t: Tensor, b: Poly) -> Tensor:
    return t._act(b, lambda s, w: s[:-1] + (s[-1] + w,))


def multiply_out(t: Tensor) -> Poly:
    acc: dict = {}
    for slots, c in t.items():
        w = "".join(slots)
        acc[w] = acc.get(w, 0) + c
    return Poly._from_dict(acc)


# -- tensor path ---------------------------------------------------------------

_Z = Poly._from_dict({X: 1, Y: 1})
_SIGN = {X: 1, Y: -1}


@lru_cache(maxsize=None)
def _letter_tensor(n: int, bar: bool) -> Tensor:
    x, y = Poly.word(X), Poly.word(Y)
    if bar:
        return Tensor.pure(x, *([y] * n))
    return Tensor.pure(x, *([_Z] * (n - 1)), y)


class OperatorKind(enum.Enum):
    RHO = "rho"
    RHO_BAR = "rho_bar"
    PARTIAL = "partial"


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")


@lru_cache(maxsize=None)
def _tensor_on_word(kind: OperatorKind, n: int, w: Word) -> Tensor:
    # Leibniz rule split after the first letter
    if not w:
        return Tensor.zero(n + 1)
    head, rest = w[0], w[1:]
    base = _letter_tensor(n, kind is OperatorKind.RHO_BAR).scale(_SIGN[head])
    if not rest:
        return base
    tail = _tensor_on_word(kind, n, rest)
    if kind is OperatorKind.RHO:
        return diamond_right(base, Poly.word(rest)) + diamond_left(Poly.word(head), tail)
    if kind is OperatorKind.RHO_BAR:
        g = AutomorphismName.GAMMA_INV
        return diamond_right(base, word_image(g, rest)) + diamond_left(word_image(g, head), tail)
    return outer_right(base, Poly.word(rest)) + outer_left(Poly.word(head), tail)


def _tensor_map(kind: OperatorKind, n: int, p: Poly) -> Tensor:
    _check_n(n)
    out = Tensor.zero(n + 1)
    for w, c in p.items():
        out = out + _tensor_on_word(kind, n, w).scale(c)
    return out


def c_n(n: int, p: Poly) -> Tensor:
    return _tensor_map(OperatorKind.RHO, n, p)


def c_bar_n(n: int, p: Poly) -> Tensor:
    return _tensor_map(OperatorKind.RHO_BAR, n, p)


def d_n(n: int, p: Poly) -> Tensor:
    return _tensor_map(OperatorKind.PARTIAL, n, p)


def rho_tensor_path(n: int, p: Poly) -> Poly:
    return multiply_out(c_n(n, p))


def rho_bar_tensor_path(n: int, p: Poly) -> Poly:
    return multiply_out(c_bar_n(n, p))


def partial_tensor_path(n: int, p: Poly) -> Poly:
    return multiply_out(d_n(n, p))


# -- fast path -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _middle_words(n: int) -> tuple[Word, ...]:
    # expansion of z^(n-1): every word of length n-1, coefficient 1
    return tuple("".join(t) for t in itertools.product(X + Y, repeat=n - 1))


@lru_cache(maxsize=4096)
def _rho_word(n: int, w: Word) -> Poly:
    acc: dict = {}
    mids = _middle_words(n)
    for j, u in enumerate(w):
        s = _SIGN[u]
        head, tail = X + w[j + 1:], w[:j] + Y
        for m in mids:
            key = head + m + tail
            acc[key] = acc.get(key, 0) + s
    return Poly._from_dict(acc)


@lru_cache(maxsize=4096)
def _rho_bar_word(n: int, w: Word) -> Poly:
    g = AutomorphismName.GAMMA_INV
    acc: dict = {}
    mid = Y * (n - 1)
    for j, u in enumerate(w):
        s = _SIGN[u]
        right = word_image(g, w[:j])
        for a, ca in word_image(g, w[j + 1:]).items():
            for b, cb in right.items():
                key = X + a + mid + b + Y
                acc[key] = acc.get(key, 0) + s * ca * cb
    return Poly._from_dict(acc)


@lru_cache(maxsize=4096)
def _partial_word(n: int, w: Word) -> Poly:
    acc: dict = {}
    mids = _middle_words(n)
    for j, u in enumerate(w):
        s = _SIGN[u]
        for m in mids:
            key = w[:j] + X + m + Y + w[j + 1:]
            acc[key] = acc.get(key, 0) + s
    return Poly._from_dict(acc)


def _fast(fn, n: int, p: Poly) -> Poly:
    _check_n(n)
    if len(p) == 1:
        (w, c), = p.items()
        return fn(n, w).scale(c)
    return poly_sum(fn(n, w).scale(c) for w, c in p.items())


def rho(n: int, p: Poly) -> Poly:
    """``rho_n = M_n C_n``; zero on constants."""
    return _fast(_rho_word, n, p)


def rho_bar(n: int, p: Poly) -> Poly:
    return _fast(_rho_bar_word, n, p)


def partial(n: int, p: Poly) -> Poly:
    """The derivation with ``x -> x z^(n-1) y`` and ``y -> -x z^(n-1) y``."""
    return _fast(_partial_word, n, p)


def apply_operator(kind: OperatorKind, n: int, p: Poly) -> Poly:
    kind = OperatorKind(kind)
    return {OperatorKind.RHO: rho, OperatorKind.RHO_BAR: rho_bar, OperatorKind.PARTIAL: partial}[kind](n, p)


# -- cyclic derivatives -----------------------------------------------------------

class CyclicVariant(enum.Enum):
    C = "c"
    C_BAR = "cbar"


def _cyclic_base(variant: CyclicVariant, letter: str, W: Poly) -> Poly:
    # C_y = C-bar_x = L_x R_y ; C_x = C-bar_y = 0
    active = Y if variant is CyclicVariant.C else X
    if letter != active:
        return Poly.zero()
    return Poly._from_dict({X + w + Y: c for w, c in W.items()})


def cyclic_derivative(variant: CyclicVariant, w: Word, W: Poly | None = None, split: int = 1) -> Poly:
    """Evaluate ``phi_w(W)`` from ``phi_{w1 w2}(W) = phi_{w1}(w2 W) + phi_{w2}(W w1)``.

    ``split`` picks where each word is cut: a positive value counts letters
    from the left, a negative one from the right; it is clamped so that both
    halves are nonempty.  The result does not depend on it.
    """
    variant = CyclicVariant(variant)
    W = Poly.one() if W is None else W
    if not w:
        return Poly.zero()
    if len(w) == 1:
        return _cyclic_base(variant, w, W)
    k = split if split > 0 else len(w) + split
    k = min(max(k, 1), len(w) - 1)
    w1, w2 = w[:k], w[k:]
    return (cyclic_derivative(variant, w1, Poly.word(w2) * W, split)
            + cyclic_derivative(variant, w2, W * Poly.word(w1), split))
