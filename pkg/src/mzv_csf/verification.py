"""Named verification suites: each one sweeps an identity over a bounded range.

Every suite returns a :class:`SuiteReport` with pass/fail counts and the first
counterexample.  Default bounds are the ranges the acceptance tests require.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .cyclic_operators import (
    CyclicVariant,
    c_n,
    cyclic_derivative,
    diamond_left,
    diamond_right,
    partial,
    partial_tensor_path,
    rho,
    rho_bar,
    rho_bar_tensor_path,
    rho_tensor_path,
)
from .errors import UnknownSuite
from .free_algebra import X, Y, Index, Poly, Space, compositions, enumerate_words, rotate
from .numeric_zeta import TruncationParams, Variant, csf_numeric_check, evaluate_Z, evaluate_Z_bar
from .relation_engine import (
    cor3_check,
    cyclic_derivative_difference,
    derivative_difference_check,
    a_star_z_expansion_check,
    rho_shift_check,
    key_prop_check,
    key_prop_lhs,
    key_prop_lhs_closed_form,
    lemma2_basis_check,
    partition_tuple_oracle,
    prop4_check,
    prop5_check,
    rho_membership,
    saturation_ranks,
    special_evaluations_check,
)
from .zeta_maps import (
    Z_POLY,
    apply_alpha_tilde,
    apply_d,
    left_mul_x,
    phi,
    star,
    star_bar,
    z_poly,
)


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    failed: int = 0
    first_counterexample: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, case: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_counterexample is None:
                self.first_counterexample = case

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{self.name}: {status} ({self.passed} passed, {self.failed} failed)"
        if self.first_counterexample:
            line += f"; first counterexample: {self.first_counterexample}"
        return line


def words_up_to(max_degree: int, min_degree: int = 1, space: Space = Space.H) -> Iterable[str]:
    for d in range(min_degree, max_degree + 1):
        yield from enumerate_words(d, space)


def indices_up_to(max_weight: int) -> Iterable[Index]:
    for k in range(1, max_weight + 1):
        yield from compositions(k)


def lemma1(max_degree: int = 10) -> SuiteReport:
    rep = SuiteReport("lemma1")
    for w in words_up_to(max_degree):
        base = rho(1, Poly.word(w))
        for k in range(1, len(w)):
            rep.record(rho(1, Poly.word(rotate(w, k))) == base, f"w={w}, rotation {k}")
    return rep


def lemma3(max_degree: int = 8, max_n: int = 3) -> SuiteReport:
    rep = SuiteReport("lemma3")
    for n in range(1, max_n + 1):
        for w in words_up_to(max_degree):
            p = Poly.word(w)
            rep.record(rho(n, p) == apply_d(rho_bar(n, p)), f"n={n}, w={w}")
    return rep


def eq13(max_degree: int = 8, max_n: int = 3) -> SuiteReport:
    rep = SuiteReport("eq13")
    for n in range(1, max_n + 1):
        for w in words_up_to(max_degree):
            rep.record(rho_shift_check(n, w), f"n={n}, w={w}")
    return rep


def tensor(max_degree: int = 8, max_n: int = 3) -> SuiteReport:
    """Closed forms against the tensor-path evaluation, plus the Leibniz rules."""
    rep = SuiteReport("tensor")
    for n in range(1, max_n + 1):
        for w in words_up_to(max_degree):
            p = Poly.word(w)
            rep.record(rho(n, p) == rho_tensor_path(n, p), f"rho n={n}, w={w}")
            rep.record(rho_bar(n, p) == rho_bar_tensor_path(n, p), f"rho_bar n={n}, w={w}")
            rep.record(partial(n, p) == partial_tensor_path(n, p), f"partial n={n}, w={w}")
            for k in range(1, len(w)):
                a, b = Poly.word(w[:k]), Poly.word(w[k:])
                leibniz = diamond_right(c_n(n, a), b) + diamond_left(a, c_n(n, b))
                rep.record(c_n(n, p) == leibniz, f"Leibniz n={n}, {w[:k]}|{w[k:]}")
                rep.record(partial(n, p) == partial(n, a) * b + a * partial(n, b),
                           f"derivation n={n}, {w[:k]}|{w[k:]}")
    return rep


def prop1(max_degree: int = 8) -> SuiteReport:
    rep = SuiteReport("prop1")
    for w in words_up_to(max_degree):
        lhs = rho(1, Poly.word(w))
        rep.record(lhs == cyclic_derivative_difference(w), f"w={w}")
        for split in (-1, 2):
            for v in CyclicVariant:
                rep.record(cyclic_derivative(v, w, None, split) == cyclic_derivative(v, w),
                           f"split independence {v.value}, w={w}, split={split}")
    return rep


def eq6(max_weight: int = 8) -> SuiteReport:
    rep = SuiteReport("eq6")
    for ks in indices_up_to(max_weight):
        rep.record(derivative_difference_check(ks), f"ks={ks}")
    return rep


def eq10(max_weight: int = 7) -> SuiteReport:
    rep = SuiteReport("eq10")
    for w in words_up_to(max_weight, space=Space.H1):
        p = Poly.word(w)
        rep.record(phi(apply_d(p)) == -apply_d(apply_alpha_tilde(p)), f"w={w}")
    return rep


def eq11(max_weight: int = 7) -> SuiteReport:
    rep = SuiteReport("eq11")
    words = [""] + list(words_up_to(max_weight - 1, space=Space.H1))
    for u in words:
        for v in words:
            if len(u) + len(v) > max_weight:
                continue
            pu, pv = Poly.word(u), Poly.word(v)
            rep.record(apply_d(star_bar(pu, pv)) == star(apply_d(pu), apply_d(pv)), f"u={u or 1}, v={v or 1}")
    return rep


def _random_word(rng: random.Random, lo: int, hi: int) -> str:
    return "".join(rng.choice(X + Y) for _ in range(rng.randint(lo, hi)))


def lemma4(samples: int = 200, seed: int = 0, max_degree: int = 4) -> SuiteReport:
    """``z w * z_q w' = z (w * z_q w') + z_q (z w * w')`` on random instances."""
    rep = SuiteReport("lemma4")
    rng = random.Random(seed)
    for _ in range(samples):
        w = Poly.word(_random_word(rng, 0, max_degree - 1) + Y)
        w2 = Poly.word(_random_word(rng, 0, max_degree - 1) + Y) if rng.random() < 0.8 else Poly.one()
        q = rng.randint(1, 4)
        zq_w2 = z_poly(q) * w2
        lhs = star(Z_POLY * w, zq_w2)
        rhs = Z_POLY * star(w, zq_w2) + z_poly(q) * star(Z_POLY * w, w2)
        rep.record(lhs == rhs, f"w={w}, w'={w2}, q={q}")
    return rep


def prop4(max_sum: int = 9) -> SuiteReport:
    rep = SuiteReport("prop4")
    for n in range(1, max_sum):
        for k in range(1, max_sum - n + 1):
            rep.record(prop4_check(n, k), f"rho_n(z_k) n={n}, k={k}")
            rep.record(a_star_z_expansion_check(n, k), f"A_(k-1) * z_n expansion n={n}, k={k}")
            rep.record(cor3_check(n, k), f"rho_n(y z_k) n={n}, k={k}")
    return rep


def prop5(max_d: int = 7, max_n: int = 3) -> SuiteReport:
    rep = SuiteReport("prop5")
    for n in range(1, max_n + 1):
        for d in range(2, max_d + 1):
            rep.record(prop5_check(n, d), f"n={n}, d={d}")
    return rep


def keyprop(max_weight: int = 7, max_n: int = 3) -> SuiteReport:
    rep = SuiteReport("keyprop")
    for ks in indices_up_to(max_weight):
        for n in range(1, min(ks[0], max_n) + 1):
            res = key_prop_check(n, ks)
            rep.record(res.equal, f"n={n}, ks={ks}: lhs={res.lhs}, rhs={res.rhs}")
            rep.record(key_prop_lhs(n, ks) == key_prop_lhs_closed_form(n, ks), f"closed form n={n}, ks={ks}")
    return rep


SYMBOLIC_PARTS = (1, 2, 4, 8, 16, 32)


def eq7eq8(max_depth: int = 4) -> SuiteReport:
    """Ordered-set-partition identities, with parts whose subset sums are all distinct."""
    rep = SuiteReport("eq7eq8")
    for l in range(1, max_depth + 1):
        for ks in {SYMBOLIC_PARTS[:l], tuple(reversed(SYMBOLIC_PARTS[:l])), (1,) * l, tuple(range(1, l + 1))}:
            r = partition_tuple_oracle(ks)
            rep.record(r.ok, f"ks={ks}: {r.failures}")
    return rep


def special(max_weight: int = 7) -> SuiteReport:
    rep = SuiteReport("special")
    for ks in indices_up_to(max_weight):
        rep.record(special_evaluations_check(ks), f"ks={ks}")
    return rep


def lemma2(max_d: int = 12) -> SuiteReport:
    rep = SuiteReport("lemma2")
    for d in range(2, max_d + 1):
        rep.record(lemma2_basis_check(d), f"d={d}")
    return rep


def _membership_sweep(name: str, bar: bool, max_weight: int, max_n: int) -> SuiteReport:
    rep = SuiteReport(name)
    for n in range(1, max_n + 1):
        for w in words_up_to(max_weight - n, min_degree=2, space=Space.CHECK_H1):
            cert = rho_membership(n, w, bar=bar)
            rep.record(cert.member, f"n={n}, w={w}")
    return rep


def kawashima(max_weight: int = 9, max_n: int = 3) -> SuiteReport:
    return _membership_sweep("kawashima", False, max_weight, max_n)


def prop3(max_weight: int = 9, max_n: int = 3) -> SuiteReport:
    """Star-side inclusion, plus the map identity ``d x alpha~(u *bar v) = -x phi(d u * d v)``."""
    rep = _membership_sweep("prop3", True, max_weight, max_n)
    for u in words_up_to(max_weight - 2, space=Space.H1):
        for v in words_up_to(max_weight - 1 - len(u), space=Space.H1):
            pu, pv = Poly.word(u), Poly.word(v)
            lhs = apply_d(left_mul_x(apply_alpha_tilde(star_bar(pu, pv))))
            rhs = -left_mul_x(phi(star(apply_d(pu), apply_d(pv))))
            rep.record(lhs == rhs, f"u={u}, v={v}")
    return rep


def saturation(max_weight: int = 10) -> SuiteReport:
    rep = SuiteReport("saturation")
    for wt in range(3, max_weight + 1):
        union, first = saturation_ranks(wt)
        rep.record(union == first, f"weight {wt}: all-n rank {union} vs n=1 rank {first}")
    return rep


def numeric(max_weight: int = 7, max_n: int = 2, M: int = 100_000, tolerance: float = 1e-3,
            strict: bool = False) -> SuiteReport:
    """Numeric vanishing of rho / rho_bar images and the small cyclic sum formulas.

    Each case passes when the residual is below ``max(tolerance, tail bound)``;
    with ``strict`` the tail bound is ignored.
    """
    rep = SuiteReport("numeric")
    params = TruncationParams(M=M)
    worst = (0.0, "")

    def allowed(r) -> float:
        return tolerance if strict else max(tolerance, r.tail_bound)

    for n in range(1, max_n + 1):
        for w in words_up_to(max_weight - n, min_degree=2, space=Space.CHECK_H1):
            p = Poly.word(w)
            for label, r in (("Z(rho)", evaluate_Z(rho(n, p), params)),
                             ("Zbar(rho_bar)", evaluate_Z_bar(rho_bar(n, p), params))):
                case = f"{label} n={n}, w={w}: {r.value:.3e}"
                rep.record(abs(r.value) < allowed(r), case)
                worst = max(worst, (abs(r.value), case))
    for w in words_up_to(min(max_weight, 6), min_degree=2, space=Space.H0):
        p = Poly.word(w)
        a, b = evaluate_Z_bar(p, params), evaluate_Z(apply_d(p), params)
        tol = tolerance if strict else max(tolerance, a.tail_bound + b.tail_bound)
        rep.record(abs(a.value - b.value) < tol, f"Zbar vs Z.d w={w}: {a.value - b.value:.3e}")
    for ks, variant in (((2,), Variant.MZV), ((2,), Variant.MZSV), ((2, 1), Variant.MZV), ((2, 1), Variant.MZSV)):
        r = csf_numeric_check(ks, variant, params, tolerance)
        ok = r.passed if strict else r.diff < max(tolerance, r.tail_bound)
        rep.record(ok, f"CSF {variant.value} ks={ks}: diff {r.diff:.3e}")
    if worst[1]:
        rep.notes.append(f"largest residual: {worst[1]}")
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "lemma1": lemma1,
    "lemma3": lemma3,
    "lemma4": lemma4,
    "eq10": eq10,
    "eq11": eq11,
    "eq13": eq13,
    "prop1": prop1,
    "prop3": prop3,
    "prop4": prop4,
    "prop5": prop5,
    "keyprop": keyprop,
    "eq6": eq6,
    "eq7eq8": eq7eq8,
    "special": special,
    "lemma2": lemma2,
    "kawashima": kawashima,
    "numeric": numeric,
    "tensor": tensor,
    "saturation": saturation,
}


def run_suite(name: str, **bounds) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}") from None
    return fn(**bounds)
