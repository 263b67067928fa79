import random
from fractions import Fraction

import pytest
import sympy

from mzv_csf.cyclic_operators import rho
from mzv_csf.errors import InternalInconsistency, WeightMismatch
from mzv_csf.free_algebra import Poly, Space, enumerate_words, parse_poly
from mzv_csf.linalg import LinearSystem, SpanEchelon, exact_rank, membership, modular_rank


def P(text):
    return parse_poly(text)


def sympy_rank(sys):
    idx = sys.column_index
    m = sympy.zeros(len(sys.rows), len(sys.columns))
    for i, p in enumerate(sys.rows):
        for w, c in p.items():
            m[i, idx[w]] = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
    return m.rank()


def test_rank_examples():
    assert exact_rank(LinearSystem(3, [P("xyy - xxy")])) == 1
    assert exact_rank(LinearSystem(3, [P("xyy - xxy"), P("2*xyy - 2*xxy")])) == 1
    rows = [rho(1, Poly.word(w)) for w in enumerate_words(3, Space.CHECK_H1)]
    assert exact_rank(LinearSystem(4, rows)) == 2


def test_rank_of_zero_system():
    assert exact_rank(LinearSystem(3, [Poly.zero(), Poly.zero()])) == 0


def test_system_rejects_mixed_weight():
    with pytest.raises(WeightMismatch):
        LinearSystem(3, [P("xy")])
    with pytest.raises(ValueError):
        LinearSystem(2, [P("xy")], columns=["yy"])


def random_system(gen, weight=5, nrows=12, density=4):
    words = enumerate_words(weight)
    rows = []
    for _ in range(nrows):
        terms = [(gen.choice(words), Fraction(gen.randint(-4, 4), gen.randint(1, 3))) for _ in range(density)]
        rows.append(Poly(terms))
    return LinearSystem(weight, rows)


def test_rank_against_sympy():
    gen = random.Random(11)
    for _ in range(25):
        sys = random_system(gen, nrows=gen.randint(1, 20))
        assert exact_rank(sys, seed=gen.randint(0, 99)) == sympy_rank(sys)


def test_rank_dependent_combinations():
    gen = random.Random(3)
    base = random_system(gen, nrows=5).rows
    combos = [sum((b.scale(gen.randint(-2, 2)) for b in base), Poly.zero()) for _ in range(10)]
    sys = LinearSystem(5, base + combos)
    assert exact_rank(sys) == exact_rank(LinearSystem(5, base)) == sympy_rank(LinearSystem(5, base))


def test_rank_metamorphic_scaling_and_permutation():
    gen = random.Random(5)
    for _ in range(10):
        sys = random_system(gen, weight=6, nrows=20, density=5)
        r = exact_rank(sys)
        rows = [p.scale(Fraction(gen.choice([-3, -1, 2, 5]), gen.choice([1, 7]))) for p in sys.rows]
        gen.shuffle(rows)
        assert exact_rank(LinearSystem(6, rows)) == r


def test_modular_rank_flags_disagreement(monkeypatch):
    import mzv_csf.linalg as la
    monkeypatch.setattr(la, "modular_rank", lambda rows, ncols, p: 99)
    with pytest.raises(InternalInconsistency):
        la.exact_rank(LinearSystem(3, [P("xyy - xxy")]))


def test_modular_rank_small_prime_drops_rank():
    # rows (1, 1), (1, 4): rank 2 over Q, rank 1 modulo 3
    rows = [{0: 1, 1: 1}, {0: 1, 1: 4}]
    assert modular_rank(rows, 2, 3) == 1
    assert modular_rank(rows, 2, 1_000_000_007) == 2


def test_membership_examples():
    sys = LinearSystem(3, [P("xyy - xxy")], labels=["g"])
    cert = membership(sys, P("xyy - xxy"))
    assert cert.member and cert.combination == [("g", 1)]
    assert not membership(sys, P("xxy")).member
    assert not membership(sys, P("yyy")).member
    with pytest.raises(WeightMismatch):
        membership(sys, P("xy"))


def test_membership_certificate_reconstructs():
    gen = random.Random(8)
    for _ in range(10):
        sys = random_system(gen, nrows=6)
        coeffs = [Fraction(gen.randint(-3, 3), gen.randint(1, 4)) for _ in sys.rows]
        q = sum((p.scale(c) for p, c in zip(sys.rows, coeffs)), Poly.zero())
        cert = SpanEchelon(sys).membership(q)
        assert cert.member
        assert cert.expand(sys) == q


def test_zero_is_member():
    sys = LinearSystem(3, [P("xyy - xxy")])
    cert = membership(sys, Poly.zero())
    assert cert.member and cert.combination == []
