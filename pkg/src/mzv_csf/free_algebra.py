"""Words, polynomials and compositions in the free algebra Q<x, y>.

A word is represented by a plain ``str`` over the letters ``"x"`` and ``"y"``;
the empty string is the unit.  Strings are immutable and hash quickly, which
is all the algebra needs.  :class:`Poly` is an immutable finite Q-linear
combination of words with exact coefficients (``int`` when integral,
otherwise :class:`fractions.Fraction`).

Under the z-encoding ``z_k = x^(k-1) y`` a composition ``(k_1, ..., k_l)``
corresponds to the word ``z_{k_1} ... z_{k_l}``.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Union

from .errors import NotInH1, ParseError

Word = str
Coeff = Union[int, Fraction]

X = "x"
Y = "y"
UNIT = ""


class Letter(enum.Enum):
    X = "x"
    Y = "y"

    @property
    def sign(self) -> int:
        return 1 if self is Letter.X else -1


def check_word(w: str) -> Word:
    if not isinstance(w, str) or w.strip("xy"):
        raise ParseError(f"not a word over {{x, y}}: {w!r}")
    return w


def _norm(c) -> Coeff:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


def sort_key(w: Word):
    """Canonical monomial order: degree first, then lexicographic with x < y."""
    return (len(w), w)


class Poly:
    """An element of Q<x, y>.

    Construction normalizes: zero coefficients are dropped and integral
    fractions are stored as ``int``.  Instances are never mutated.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Coeff] | Iterable[tuple[Word, Coeff]] | None = None):
        acc: dict[Word, Coeff] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                check_word(w)
                acc[w] = acc.get(w, 0) + _norm(c)
        self._terms = {w: _norm(c) for w, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _from_dict(cls, d: dict) -> "Poly":
        # trusted constructor: keys are valid words, values int/Fraction
        p = object.__new__(cls)
        p._terms = {w: (c if type(c) is int or c.denominator != 1 else c.numerator)
                    for w, c in d.items() if c}
        p._hash = None
        return p

    @classmethod
    def word(cls, w: Word, coeff: Coeff = 1) -> "Poly":
        return cls({check_word(w): coeff})

    @classmethod
    def zero(cls) -> "Poly":
        return cls._from_dict({})

    @classmethod
    def one(cls) -> "Poly":
        return cls._from_dict({UNIT: 1})

    @property
    def terms(self) -> Mapping[Word, Coeff]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, w: Word) -> Coeff:
        return self._terms.get(w, 0)

    def words(self) -> list[Word]:
        return sorted(self._terms, key=sort_key)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[Word, Coeff]]:
        for w in self.words():
            yield w, self._terms[w]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({UNIT: _norm(other)} if other != 0 else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly._from_dict({UNIT: _norm(other)})
        if isinstance(other, str):
            return Poly.word(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to Poly")

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        d = dict(self._terms)
        for w, c in other._terms.items():
            d[w] = d.get(w, 0) + c
        return Poly._from_dict(d)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._from_dict({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c: Coeff) -> "Poly":
        c = _norm(c)
        if c == 0:
            return Poly.zero()
        return Poly._from_dict({w: v * c for w, v in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return concat_product(self, self._coerce(other))

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return concat_product(self._coerce(other), self)

    def __pow__(self, k: int) -> "Poly":
        out = Poly.one()
        for _ in range(k):
            out = out * self
        return out

    def degrees(self) -> set[int]:
        return {len(w) for w in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if degree is None:
            return len(ds) <= 1
        return ds <= {degree}

    def map_words(self, f: Callable[[Word], "Poly"]) -> "Poly":
        """Linear extension of a word-level map ``f``."""
        acc: dict[Word, Coeff] = {}
        for w, c in self._terms.items():
            for u, v in f(w)._terms.items():
                acc[u] = acc.get(u, 0) + c * v
        return Poly._from_dict(acc)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def concat_product(p: Poly, q: Poly) -> Poly:
    acc: dict[Word, Coeff] = {}
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            w = u + v
            acc[w] = acc.get(w, 0) + a * b
    return Poly._from_dict(acc)


def poly_sum(polys: Iterable[Poly]) -> Poly:
    acc: dict[Word, Coeff] = {}
    for p in polys:
        for w, c in p._terms.items():
            acc[w] = acc.get(w, 0) + c
    return Poly._from_dict(acc)


# -- text formats ------------------------------------------------------------

def format_coeff(c: Coeff) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_word(w: Word) -> str:
    return w if w else "1"


def format_poly(p: Poly) -> str:
    """``c1*w1 + c2*w2 - ...`` in canonical order; ``0`` for the zero polynomial."""
    if not p:
        return "0"
    parts = []
    for i, (w, c) in enumerate(p):
        body = f"{format_coeff(abs(c))}*{format_word(w)}"
        if i == 0:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TERM_RE = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([xy]+|1(?![\d/]))?\s*"
)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text == "1":
        return UNIT
    if not text or text.strip("xy"):
        raise ParseError(f"invalid word {text!r}: expected [xy]+ or 1")
    return text


def parse_poly(text: str) -> Poly:
    """Parse the signed-sum text format.  Also accepts bare words, ``2yy`` and ``0``."""
    s = text.strip()
    if s == "0":
        return Poly.zero()
    if not s:
        raise ParseError("empty polynomial")
    pos = 0
    acc: dict[Word, Coeff] = {}
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        sign, num, word = m.group(1), m.group(2), m.group(3)
        if m.end() == pos or (num is None and word is None) or (sign is None and not first):
            raise ParseError(f"cannot parse polynomial {text!r} near position {pos}")
        c = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            c = -c
        w = UNIT if word in (None, "1") else word
        acc[w] = acc.get(w, 0) + c
        pos = m.end()
        first = False
    return Poly._from_dict({w: _norm(c) for w, c in acc.items()})


# -- compositions ------------------------------------------------------------

class Index(tuple):
    """A composition ``(k_1, ..., k_l)`` of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for k in parts:
            if not isinstance(k, int) or isinstance(k, bool) or k < 1:
                raise ParseError(f"index parts must be integers >= 1, got {parts!r}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def admissible(self) -> bool:
        return not self or self[0] >= 2

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Index({tuple(self)!r})"


def parse_index(text: str) -> Index:
    text = text.strip()
    if not text:
        return Index()
    try:
        return Index(int(t) for t in text.split(","))
    except ValueError as exc:
        raise ParseError(f"invalid index {text!r}: expected comma-separated positive integers") from exc


def z(k: int) -> Word:
    return X * (k - 1) + Y


def word_from_index(idx: Iterable[int]) -> Word:
    return "".join(z(k) for k in idx)


def index_from_word(w: Word) -> Index:
    if w and not w.endswith(Y):
        raise NotInH1(f"word {w!r} does not end in y")
    return Index(len(block) + 1 for block in w.split(Y)[:-1])


def compositions(n: int) -> Iterator[Index]:
    """All compositions of ``n`` (the empty one when ``n == 0``), in lexicographic order."""
    if n == 0:
        yield Index()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield Index((first,) + rest)


# -- subspaces ---------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceFlags:
    in_h1: bool
    in_h0: bool
    in_check_h1: bool
    in_check_h: bool


def classify(w: Word) -> SubspaceFlags:
    in_h1 = not w or w.endswith(Y)
    in_h0 = not w or (w.startswith(X) and w.endswith(Y))
    mixed = X in w and Y in w
    return SubspaceFlags(
        in_h1=in_h1,
        in_h0=in_h0,
        in_check_h1=bool(w) and in_h1 and X in w,
        in_check_h=mixed,
    )


class Space(enum.Enum):
    H = "H"
    H1 = "H1"
    H0 = "H0"
    CHECK_H1 = "CHECK_H1"
    CHECK_H = "CHECK_H"


_SPACE_TEST = {
    Space.H: lambda f: True,
    Space.H1: lambda f: f.in_h1,
    Space.H0: lambda f: f.in_h0,
    Space.CHECK_H1: lambda f: f.in_check_h1,
    Space.CHECK_H: lambda f: f.in_check_h,
}


def enumerate_words(d: int, space: Space = Space.H) -> list[Word]:
    """Degree-``d`` words of the given subspace in lexicographic order."""
    test = _SPACE_TEST[Space(space)]
    return [w for w in ("".join(t) for t in itertools.product(X + Y, repeat=d)) if test(classify(w))]


def rotate(w: Word, k: int) -> Word:
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def cyclic_canonical(w: Word) -> Word:
    """Least rotation of ``w`` under x < y."""
    return min((w[i:] + w[:i] for i in range(len(w))), default=w)


def count_cyclic_classes(d: int) -> int:
    """Number of binary necklaces of length ``d`` (rotation classes of degree-d words)."""
    from sympy import divisors, totient

    if d < 1:
        raise ValueError("d must be >= 1")
    total = sum(int(totient(d // m)) * 2**m for m in divisors(d))
    assert total % d == 0
    return total // d
