import pytest

from mzv_csf.cyclic_operators import rho, rho_bar
from mzv_csf.errors import PreconditionViolation
from mzv_csf.free_algebra import Index, Poly, compositions, count_cyclic_classes, parse_poly
from mzv_csf.linalg import LinearSystem, exact_rank, membership
from mzv_csf.relation_engine import (
    DimTable,
    SpanVariant,
    a_difference_generators,
    cor3_check,
    csf_dimension,
    cyclic_sum_expansion,
    derivative_difference_check,
    dims_table,
    kawashima_span,
    key_prop_check,
    key_prop_lhs,
    key_prop_lhs_closed_form,
    lemma2_basis_check,
    ordered_set_partitions,
    partition_tuple_oracle,
    prop4_check,
    prop5_check,
    rho_membership,
    rho_shift_check,
    saturation_ranks,
    special_evaluations_check,
    totient_dimension,
)
from mzv_csf.zeta_maps import apply_alpha_tilde, left_mul_x, star_bar


def P(text):
    return parse_poly(text)


def test_kawashima_span_weight_3():
    star_sys = kawashima_span(3, SpanVariant.STAR)
    assert star_sys.rows == [P("xyy - xxy")]
    bar_sys = kawashima_span(3, SpanVariant.STAR_BAR)
    # direct evaluation of x alpha~(y *bar y)
    expected = left_mul_x(apply_alpha_tilde(star_bar(P("y"), P("y"))))
    assert bar_sys.rows == [expected] == [P("2*xxy - xyy")]


def test_kawashima_span_weight_4_dedupes_pairs():
    sys = kawashima_span(4)
    assert sorted(sys.labels) == [("y", "xy"), ("y", "yy")]
    with pytest.raises(PreconditionViolation):
        kawashima_span(2)


def test_membership_in_kawashima_span():
    assert membership(kawashima_span(3), rho(1, P("xy"))).member
    cert = rho_membership(1, "xy")
    assert cert.member and cert.combination == [(("y", "y"), 1)]
    cert = rho_membership(1, "xy", bar=True)
    assert cert.member
    assert cert.expand(kawashima_span(3, SpanVariant.STAR_BAR)) == rho_bar(1, P("xy"))


def test_kawashima_inclusion_small_weights():
    from mzv_csf.free_algebra import Space, enumerate_words
    for weight in range(3, 7):
        for n in range(1, min(3, weight - 2) + 1):
            for w in enumerate_words(weight - n, Space.CHECK_H1):
                assert rho_membership(n, w).member
                assert rho_membership(n, w, bar=True).member


def test_key_prop_examples():
    r = key_prop_check(1, (1, 1))
    assert r.lhs == r.rhs == P("xy + 2*yy") and r.equal
    r = key_prop_check(1, (3,))
    assert r.lhs == r.rhs == Poly.zero()
    assert key_prop_check(2, (2, 1)).equal
    with pytest.raises(PreconditionViolation):
        key_prop_check(3, (2, 1))


def test_key_prop_closed_form():
    assert key_prop_lhs_closed_form(1, (1, 1)) == P("xy + 2*yy")
    assert key_prop_lhs_closed_form(1, (2,)) == Poly.zero()
    assert key_prop_lhs_closed_form(1, (2, 1)) == P("xxy + xyy + yxy")
    for weight in range(1, 6):
        for ks in compositions(weight):
            for n in range(1, min(ks[0], 3) + 1):
                assert key_prop_lhs(n, ks) == key_prop_lhs_closed_form(n, ks)
                assert key_prop_check(n, ks).equal


def test_partition_oracle_sizes():
    assert len(ordered_set_partitions(2)) == 3
    rep = partition_tuple_oracle((2, 1, 3))
    assert rep.U_size == 13
    assert rep.I_sizes[0] == 5
    assert rep.ok, rep.failures
    with pytest.raises(PreconditionViolation):
        partition_tuple_oracle((1,) * 7)


def test_partition_oracle_with_distinct_parts():
    for ks in [(1,), (1, 2), (1, 2, 4), (1, 2, 4, 8), (3, 1, 1)]:
        rep = partition_tuple_oracle(ks)
        assert rep.ok, (ks, rep.failures)


def test_z_k_images():
    assert prop4_check(3, 1)
    assert prop4_check(1, 2)
    assert cor3_check(1, 2)
    for n in range(1, 5):
        for k in range(1, 6 - n):
            assert prop4_check(n, k) and cor3_check(n, k)


def test_special_evaluations():
    for ks in [(2,), (2, 1), (1, 1, 1), (3, 1, 2)]:
        assert special_evaluations_check(ks)
    # rho-bar_1(gamma(xy) - xx) = z_2 z_1 - 2 z_3
    assert rho_bar(1, P("xy + xx - xx")) == P("xyy - 2*xxy")


def test_derivative_difference():
    for ks in compositions(5):
        assert derivative_difference_check(ks)
    # no double-sum terms for ks = (1); only -x z_1 survives
    assert cyclic_sum_expansion((1,)) == rho(1, P("y")) == P("-xy")


def test_rho_shift():
    assert rho_shift_check(2, "yxy")


def test_lemma2_small():
    assert lemma2_basis_check(2)
    assert lemma2_basis_check(3)
    assert a_difference_generators(2) == [(Index((1, 1)), P("xy"))]
    with pytest.raises(PreconditionViolation):
        lemma2_basis_check(13)


def test_dims_small_entries():
    table = dims_table(7)
    assert table.entries[(3, 1)] == 1
    assert table.entries[(7, 3)] == 7
    assert table.entries[(7, 1)] == 12
    assert set(table.entries) == {(w, n) for w in range(3, 8) for n in range(1, w - 1)}
    assert DimTable.from_json(table.to_json()) == table
    text = table.to_text()
    assert text.splitlines()[0].startswith("weight d+n")
    assert "n=5" in text


def test_dims_parallel_matches_serial():
    assert dims_table(6, workers=2) == dims_table(6, workers=1)


def test_csf_dimension_uses_exact_rank():
    from mzv_csf.relation_engine import rho_span
    assert csf_dimension(5, 2) == exact_rank(rho_span(5, 2)) == 3


@pytest.mark.parametrize("d, expected", [(2, 1), (4, 4), (7, 18)])
def test_totient_dimension(d, expected):
    assert totient_dimension(d) == expected
    assert totient_dimension(d) == count_cyclic_classes(d) - 2


@pytest.mark.parametrize("n, d", [(1, 2), (2, 3), (1, 5)])
def test_prop5_examples(n, d):
    assert prop5_check(n, d)


def test_saturation_small():
    for weight in range(3, 8):
        union, first = saturation_ranks(weight)
        assert union == first
