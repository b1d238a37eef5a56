from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import positive_fractions
from tropcrystal.errors import InvalidRank, SingularPoint
from tropcrystal.expr import Var, eval_pos
from tropcrystal.fundrep import (
    FundVector,
    apply_e,
    apply_f,
    apply_Y,
    basis_labels,
    build_V1,
    build_V2,
    cartan_matrix,
    closed_form_X,
    closed_form_Y,
    e_label,
    f_label,
    format_rational,
    parse_rational,
    weight_pairing,
)

RANKS = range(2, 7)


def test_cartan_matrix_small_ranks():
    assert cartan_matrix(2).a == ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))
    assert cartan_matrix(3).a == (
        (2, -1, 0, -1),
        (-1, 2, -1, 0),
        (0, -1, 2, -1),
        (-1, 0, -1, 2),
    )


@pytest.mark.parametrize("n", RANKS)
def test_cartan_matrix_is_symmetric_with_zero_row_sums(n):
    a = cartan_matrix(n)
    for i in range(n + 1):
        assert sum(a[i, j] for j in range(n + 1)) == 0
        for j in range(n + 1):
            assert a[i, j] == a[j, i]


@pytest.mark.parametrize("bad", [0, 1, -3, 2.0, "3"])
def test_rank_is_validated(bad):
    with pytest.raises(InvalidRank):
        cartan_matrix(bad)


@pytest.mark.parametrize("n", RANKS)
def test_basis_size(n):
    assert len(basis_labels(n)) == comb(n + 1, 2)


@pytest.mark.parametrize("n", RANKS)
def test_basis_actions_are_partial_inverses(n):
    for k in range(n + 1):
        for lab in basis_labels(n):
            down = f_label(k, lab, n)
            if down is not None:
                assert e_label(k, down, n) == lab
                assert f_label(k, down, n) is None  # f_k^2 = 0
            up = e_label(k, lab, n)
            if up is not None:
                assert f_label(k, up, n) == lab


@pytest.mark.parametrize("n", RANKS)
def test_f_lowers_weight_by_simple_root(n):
    a = cartan_matrix(n)
    for k in range(n + 1):
        for lab in basis_labels(n):
            down = f_label(k, lab, n)
            if down is None:
                continue
            for j in range(n + 1):
                assert weight_pairing(down, j, n) == weight_pairing(lab, j, n) - a[j, k]


@pytest.mark.parametrize("n", RANKS)
def test_weights_have_level_zero(n):
    # varpi_2 has level 1 but the classical weights of W are level 0
    for lab in basis_labels(n):
        assert sum(weight_pairing(lab, k, n) for k in range(n + 1)) == 0


@pytest.mark.parametrize("n", RANKS)
def test_string_lengths_bounded_by_one(n):
    # f_k kills b iff <wt b, alpha_k> <= 0 on a minuscule-type module
    for k in range(n + 1):
        for lab in basis_labels(n):
            pairing = weight_pairing(lab, k, n)
            assert pairing in (-1, 0, 1)
            assert (f_label(k, lab, n) is not None) == (pairing == 1)
            assert (e_label(k, lab, n) is not None) == (pairing == -1)


def test_vector_arithmetic_and_json():
    v = FundVector(3, {(1, 2): Fraction(1, 2), (2, 4): Fraction(3)})
    w = FundVector(3, {(1, 2): Fraction(-1, 2)})
    s = v + w
    assert s.support() == [(2, 4)]
    assert v.scale(2)[(1, 2)] == 1
    assert FundVector.from_json(v.to_json()) == v
    assert v.to_json()["coeffs"][0] == {"i": 1, "j": 2, "value": "1/2"}
    with pytest.raises(ValueError):
        FundVector(3, {(3, 3): 1})


def test_rational_formatting():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(5) == "5/1"
    assert parse_rational(" -7/21 ") == Fraction(-1, 3)


def test_Y_needs_nonzero_parameter():
    with pytest.raises(SingularPoint):
        apply_Y(1, Fraction(0), FundVector.unit(2, (1, 2)))


def test_apply_e_undoes_apply_f_on_vectors():
    v = FundVector(3, {(1, 2): 2, (2, 3): 5, (1, 4): 1})
    assert apply_e(2, apply_f(2, v)) == FundVector(3, {(1, 2): 2})


def test_V1_coefficients_frozen():
    # values from the constructive product, n=3, x=(1,2,3,4)
    got = build_V1(3, [Fraction(v) for v in (1, 2, 3, 4)])
    assert dict(got.items()) == {
        (1, 2): Fraction(4),
        (1, 3): Fraction(5, 2),
        (1, 4): Fraction(3),
        (2, 3): Fraction(2),
        (2, 4): Fraction(4),
        (3, 4): Fraction(1),
    }


@pytest.mark.parametrize("n", RANKS)
def test_V1_has_full_support(n):
    v = build_V1(n, [Fraction(1)] * (2 * n - 2))
    assert v.support() == basis_labels(n)


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(positive_fractions(), min_size=2 * n - 2, max_size=2 * n - 2))))
def test_closed_forms_match_products(case):
    n, coords = case
    assert dict(build_V1(n, coords).items()) == closed_form_X(n, coords)
    assert dict(build_V2(n, coords).items()) == closed_form_Y(n, coords)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_closed_forms_match_symbolically(n):
    names = [f"x{k}" for k in range(2, 2 * n)]
    symbols = [Var(name) for name in names]
    values = [Fraction(k * k + 1, k + 2) for k in range(2, 2 * n)]
    binding = dict(zip(names, values))
    for build, closed in ((build_V1, closed_form_X), (build_V2, closed_form_Y)):
        built = build(n, symbols)
        closed_sym = closed(n, symbols)
        assert set(built.support()) == set(closed_sym)
        for lab in built:
            assert eval_pos(built[lab], binding) == eval_pos(closed_sym[lab], binding)
