from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import positive_fractions, torus_points
from tropcrystal import geom
from tropcrystal.errors import SingularPoint
from tropcrystal.fundrep import build_V1, build_V2, cartan_matrix
from tropcrystal.geom import (
    SUITES,
    TorusPoint,
    geom_e,
    geom_e0_via_conjugation,
    geom_eps,
    geom_gamma,
    run_suite,
    schubert_e_v1,
    sigma_bar,
    sigma_bar_inv,
    verify_axioms,
)

F = Fraction


def pt(*values):
    return TorusPoint(len(values) // 2 + 1, tuple(F(v) for v in values))


def test_point_validation_and_json():
    with pytest.raises(SingularPoint):
        pt(1, 0)
    with pytest.raises(ValueError):
        TorusPoint(3, (F(1),) * 3)
    x = pt("1/2", 3, "7/5", 2)
    assert x.to_json() == {"n": 3, "x": ["1/2", "3/1", "7/5", "2/1"]}
    assert TorusPoint.from_json(x.to_json()) == x
    assert TorusPoint.parse(3, "1/2,3,7/5,2") == x
    assert x.x(1) == x.x(6) == 1


def test_frozen_actions():
    ones = pt(1, 1, 1, 1)
    assert geom_e(2, F(2), ones).coords == (F(4, 3), 1, 1, F(3, 2))
    assert geom_e(0, F(4), pt(3, 5)).coords == (F(3, 4), F(5, 4))
    assert sigma_bar(pt(3, 5)).coords == (F(5, 3), F(1, 3))
    x = pt(1, 2, 3, 4)
    assert geom_gamma(0, x) == F(1, 6)
    assert geom_eps(0, x) == F(5, 2)


def test_zero_parameter_rejected():
    with pytest.raises(SingularPoint):
        geom_e(1, F(0), pt(1, 1))


@given(torus_points(), positive_fractions(), positive_fractions(), st.data())
def test_action_law(x, c1, c2, data):
    i = data.draw(st.integers(0, x.n))
    assert geom_e(i, c1, geom_e(i, c2, x)) == geom_e(i, c1 * c2, x)
    assert geom_e(i, F(1), x) == x


@given(torus_points(), positive_fractions(), st.data())
def test_gamma_and_eps_scaling(x, c, data):
    a = cartan_matrix(x.n)
    i = data.draw(st.integers(0, x.n))
    moved = geom_e(i, c, x)
    assert geom_eps(i, moved) == geom_eps(i, x) / c
    for j in range(x.n + 1):
        assert geom_gamma(j, moved) == c ** a[i, j] * geom_gamma(j, x)


@given(torus_points(), positive_fractions(), st.data())
def test_word_formulas_agree(x, c, data):
    i = data.draw(st.integers(1, x.n))
    assert schubert_e_v1(i, c, x) == geom_e(i, c, x)


@given(torus_points(n_values=(2, 3, 4, 5, 6)))
def test_sigma_bar_transports_V1(x):
    n = x.n
    y = sigma_bar(x)
    assert sigma_bar_inv(y) == x
    assert build_V2(n, list(y.coords)) == build_V1(n, list(x.coords)).scale(1 / x.x(n))


@given(torus_points(), positive_fractions())
def test_e0_conjugation_route(x, c):
    assert geom_e0_via_conjugation(c, x) == geom_e(0, c, x)


@given(torus_points(), positive_fractions())
def test_product_of_gammas_is_invariant(x, c):
    # sum of the columns of the Cartan matrix vanishes, so prod gamma_i is e-invariant
    def total(p):
        out = F(1)
        for i in range(p.n + 1):
            out *= geom_gamma(i, p)
        return out

    for i in range(x.n + 1):
        assert total(geom_e(i, c, x)) == total(x)


@pytest.mark.parametrize("suite", SUITES)
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_suites_pass(suite, n):
    report = run_suite(suite, n, trials=8, seed=11)
    assert report.passed, report.failures[:3]
    assert report.checks > 0 or (suite == "eq43" and n < 4)


def test_suite_report_json():
    report = verify_axioms(3, trials=3, seed=5)
    data = report.to_json()
    assert data["suite"] == "all" and data["failures"] == [] and data["checks"] == report.checks
    with pytest.raises(ValueError):
        run_suite("nope", 3, 1, 0)


def test_flipped_c_factor_is_caught(monkeypatch):
    # mutation control: swap the two products in the numerator's c
    def flipped(i, c, x):
        n = x.n
        left = x.x(i) * x.x(n + i)
        right = x.x(i + 1) * x.x(n + i - 1)
        return (left + c * right) / (c * left + right)

    monkeypatch.setattr(geom, "c_factor", flipped)
    report = run_suite("axioms", 4, trials=3, seed=1)
    assert not report.passed
