"""Algebra maps on Q<x, y> and the harmonic products.

Automorphisms are given by their letter images and extended
multiplicatively; ``d`` and ``alpha~`` act on H^1 by transforming everything
before the final ``y``.  The two quasi-shuffle products are computed on
compositions by the usual head recursion

    z_p w * z_q w' = z_p (w * z_q w') + z_q (z_p w * w') +/- z_{p+q} (w * w')

(``+`` for the MZV product, ``-`` for the star version), memoized on index
pairs.  :func:`stuffle_oracle` enumerates quasi-shuffles directly and shares
no code with the recursion.
"""

from __future__ import annotations

import enum
import itertools
from functools import lru_cache

from .errors import NotInH1, NotLeftDivisible
from .free_algebra import (
    X,
    Y,
    Index,
    Poly,
    Word,
    index_from_word,
    word_from_index,
)


class AutomorphismName(enum.Enum):
    GAMMA = "gamma"
    GAMMA_INV = "gamma-inv"
    PHI = "phi"
    ALPHA = "alpha"


_LETTER_IMAGES = {
    AutomorphismName.GAMMA: {X: {"x": 1}, Y: {"x": 1, "y": 1}},
    AutomorphismName.GAMMA_INV: {X: {"x": 1}, Y: {"y": 1, "x": -1}},
    AutomorphismName.PHI: {X: {"x": 1, "y": 1}, Y: {"y": -1}},
    AutomorphismName.ALPHA: {X: {"y": 1}, Y: {"x": 1}},
}


@lru_cache(maxsize=None)
def _word_image(name: AutomorphismName, w: Word) -> Poly:
    if not w:
        return Poly.one()
    head = _word_image(name, w[:-1])
    letter = _LETTER_IMAGES[name][w[-1]]
    acc = {}
    for u, c in head.items():
        for a, s in letter.items():
            acc[u + a] = acc.get(u + a, 0) + c * s
    return Poly._from_dict(acc)


def word_image(name: AutomorphismName, w: Word) -> Poly:
    return _word_image(AutomorphismName(name), w)


def apply_automorphism(name: AutomorphismName, p: Poly) -> Poly:
    name = AutomorphismName(name)
    return p.map_words(lambda w: _word_image(name, w))


def gamma(p: Poly) -> Poly:
    return apply_automorphism(AutomorphismName.GAMMA, p)


def gamma_inv(p: Poly) -> Poly:
    return apply_automorphism(AutomorphismName.GAMMA_INV, p)


def phi(p: Poly) -> Poly:
    return apply_automorphism(AutomorphismName.PHI, p)


def alpha(p: Poly) -> Poly:
    return apply_automorphism(AutomorphismName.ALPHA, p)


def _require_h1(p: Poly) -> None:
    for w, _ in p.items():
        if w and w[-1] != Y:
            raise NotInH1(f"word {w!r} does not end in y")


def _before_last_y(name: AutomorphismName, p: Poly) -> Poly:
    _require_h1(p)

    def image(w: Word) -> Poly:
        if not w:
            return Poly.one()
        return _word_image(name, w[:-1]) * Poly._from_dict({Y: 1})

    return p.map_words(image)


def apply_d(p: Poly) -> Poly:
    """``d(wy) = gamma(w) y`` on H^1, ``d(1) = 1``."""
    return _before_last_y(AutomorphismName.GAMMA, p)


def apply_d_inv(p: Poly) -> Poly:
    return _before_last_y(AutomorphismName.GAMMA_INV, p)


def apply_alpha_tilde(p: Poly) -> Poly:
    """``alpha~(wy) = alpha(w) y`` on H^1, ``alpha~(1) = 1``."""
    return _before_last_y(AutomorphismName.ALPHA, p)


def left_mul_x(p: Poly) -> Poly:
    return Poly._from_dict({X + w: c for w, c in p.items()})


def strip_left_x(p: Poly) -> Poly:
    out = {}
    for w, c in p.items():
        if not w.startswith(X):
            raise NotLeftDivisible(f"word {w or '1'!r} does not start with x")
        out[w[1:]] = c
    return Poly._from_dict(out)


# -- harmonic products ---------------------------------------------------------

@lru_cache(maxsize=None)
def _quasi_shuffle(a: tuple, b: tuple, sign: int) -> dict:
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    p, q = a[0], b[0]
    out: dict = {}
    for head, (left, right), s in (
        (p, (a[1:], b), 1),
        (q, (a, b[1:]), 1),
        (p + q, (a[1:], b[1:]), sign),
    ):
        for t, c in _quasi_shuffle(left, right, sign).items():
            key = (head,) + t
            out[key] = out.get(key, 0) + s * c
    return {k: v for k, v in out.items() if v}


def _bilinear_product(p: Poly, q: Poly, sign: int) -> Poly:
    _require_h1(p)
    _require_h1(q)
    acc: dict = {}
    for u, a in p.items():
        iu = tuple(index_from_word(u))
        for v, b in q.items():
            for t, c in _quasi_shuffle(iu, tuple(index_from_word(v)), sign).items():
                w = word_from_index(t)
                acc[w] = acc.get(w, 0) + a * b * c
    return Poly._from_dict(acc)


def star(p: Poly, q: Poly) -> Poly:
    """Harmonic (stuffle) product on H^1."""
    return _bilinear_product(p, q, 1)


def star_bar(p: Poly, q: Poly) -> Poly:
    """Star-version harmonic product: the merged term enters with a minus sign."""
    return _bilinear_product(p, q, -1)


def star_many(*factors: Poly) -> Poly:
    out = Poly.one()
    for f in factors:
        out = star(out, f)
    return out


def stuffle_oracle(a, b) -> Poly:
    """Sum over all quasi-shuffles of two compositions, by direct enumeration.

    A quasi-shuffle of lengths r and s into length t is a pair of strictly
    increasing position maps whose images cover ``range(t)``; positions hit
    by both maps receive the sum of the two parts.
    """
    a, b = tuple(a), tuple(b)
    r, s = len(a), len(b)
    acc: dict = {}
    for t in range(max(r, s), r + s + 1):
        for pa in itertools.combinations(range(t), r):
            rest = [i for i in range(t) if i not in pa]
            # b must cover every slot a misses; the remaining b-slots overlap a
            need = s - len(rest)
            if need < 0:
                continue
            for overlap in itertools.combinations(pa, need):
                pb = sorted(rest + list(overlap))
                out = [0] * t
                for i, k in zip(pa, a):
                    out[i] += k
                for i, k in zip(pb, b):
                    out[i] += k
                w = word_from_index(out)
                acc[w] = acc.get(w, 0) + 1
    return Poly._from_dict(acc)


# -- A_j ---------------------------------------------------------------------

Z_POLY = Poly._from_dict({X: 1, Y: 1})


@lru_cache(maxsize=None)
def a_element(j: int) -> Poly:
    """``A_0 = 1`` and ``A_j = (x + y)^(j-1) y``."""
    if j < 0:
        raise ValueError("j must be >= 0")
    if j == 0:
        return Poly.one()
    return (Z_POLY ** (j - 1)) * Poly._from_dict({Y: 1})


def a_product(parts) -> Poly:
    """Expanded ``A_{k_1} ... A_{k_l}``: every letter is free except the y closing each block."""
    template = "".join("?" * (k - 1) + Y for k in parts)
    slots = template.count("?")
    pieces = template.split("?")
    out = {}
    for fill in itertools.product(X + Y, repeat=slots):
        w = pieces[0] + "".join(a + b for a, b in zip(fill, pieces[1:]))
        out[w] = 1
    return Poly._from_dict(out)


def z_poly(k: int) -> Poly:
    """``z_k = x^(k-1) y`` as a polynomial."""
    return Poly._from_dict({word_from_index((k,)): 1})


def zword_poly(idx) -> Poly:
    return Poly._from_dict({word_from_index(Index(idx)): 1})

