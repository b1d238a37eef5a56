import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import lattice_points
from tropcrystal import udiso
from tropcrystal.fundrep import cartan_matrix
from tropcrystal.geom import TorusPoint, geom_e, geom_eps, geom_gamma
from tropcrystal.pcrystal import INF, CrystalElt
from tropcrystal.udiso import (
    LatticePoint,
    Region,
    omega,
    omega_inv,
    ud_e,
    ud_e_tilde,
    ud_eps,
    ud_f_tilde,
    ud_phi,
    ud_wt,
    verify_iso,
    verify_ud_mechanical,
)


def lp(*values):
    return LatticePoint(len(values) // 2 + 1, values)


def test_point_validation_and_json():
    with pytest.raises(ValueError):
        LatticePoint(3, (1, 2, 3))
    p = lp(1, -2, 3, 0)
    assert p.to_json() == {"n": 3, "x": [1, -2, 3, 0]}
    assert LatticePoint.from_json(p.to_json()) == p
    assert LatticePoint.parse(3, "1,-2,3,0") == p
    assert p.x(1) == p.x(6) == 0


def test_frozen_values():
    p = lp(1, 2, 3, 4)
    assert ud_eps(0, p) == 1
    assert ud_wt(0, p) == -5
    assert ud_f_tilde(2, p) == lp(0, 2, 3, 4)
    assert ud_f_tilde(0, lp(0, 0, 0, 0)) == lp(0, 1, 1, 1)
    b = omega(p)
    assert (b.b1, b.b2) == ((3, 1, -4), (1, 1, -2))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_origin_is_neutral(n):
    zero = LatticePoint(n, (0,) * (2 * n - 2))
    for i in range(n + 1):
        assert ud_wt(i, zero) == ud_eps(i, zero) == 0


def test_omega_inverse_domain():
    with pytest.raises(ValueError):
        omega_inv(CrystalElt(2, 1, (1, 0), (1, 0)))
    with pytest.raises(ValueError):
        omega_inv(CrystalElt(2, INF, (1, 0), (0, 0)))


@given(lattice_points(), st.integers(-5, 5), st.integers(-5, 5), st.data())
def test_action_law(p, c1, c2, data):
    i = data.draw(st.integers(0, p.n))
    assert ud_e(i, c1, ud_e(i, c2, p)) == ud_e(i, c1 + c2, p)
    assert ud_e(i, 0, p) == p


@given(lattice_points(), st.data())
def test_explicit_f_matches_general_action(p, data):
    i = data.draw(st.integers(0, p.n))
    assert ud_f_tilde(i, p) == ud_e(i, -1, p)


@given(lattice_points(), st.data())
def test_crystal_rules(p, data):
    n = p.n
    a = cartan_matrix(n)
    i = data.draw(st.integers(0, n))
    fp = ud_f_tilde(i, p)
    assert ud_e_tilde(i, fp) == p
    assert ud_eps(i, fp) == ud_eps(i, p) + 1
    assert ud_phi(i, fp) == ud_phi(i, p) - 1
    for j in range(n + 1):
        assert ud_wt(j, fp) == ud_wt(j, p) - a[j, i]


@given(lattice_points())
def test_omega_round_trip(p):
    b = omega(p)
    assert b.is_valid()
    assert omega_inv(b) == p


@given(lattice_points(n_values=(2, 3, 4)), st.integers(-6, 6), st.data())
def test_leading_exponent_of_geometric_action(p, c, data):
    # independent route: evaluate the rational maps at x_k = T**x_k, c = T**c
    base = Fraction(2) ** 160
    n = p.n
    i = data.draw(st.integers(0, n))

    def exponent(value: Fraction) -> int:
        return round((math.log(value.numerator) - math.log(value.denominator)) / math.log(base))

    x = TorusPoint(n, tuple(base**v for v in p.coords))
    moved = geom_e(i, base**c, x)
    assert tuple(exponent(v) for v in moved.coords) == ud_e(i, c, p).coords
    assert exponent(geom_eps(i, x)) == ud_eps(i, p)
    assert exponent(geom_gamma(i, x)) == ud_wt(i, p)


def test_region_config():
    with pytest.raises(ValueError):
        Region()
    with pytest.raises(ValueError):
        Region(box=2, trials=3, seed=0)
    with pytest.raises(ValueError):
        Region(trials=3)
    assert len(list(Region(box=1).points(2))) == 9
    sample = list(Region(trials=5, seed=3, radius=4).points(3))
    assert sample == list(Region(trials=5, seed=3, radius=4).points(3))
    assert all(abs(v) <= 4 for q in sample for v in q.coords)


@pytest.mark.parametrize("n,region", [(2, Region(box=2)), (3, Region(box=1)), (4, Region(trials=300, seed=2)), (6, Region(trials=200, seed=4))])
def test_small_iso_and_mechanical(n, region):
    for run in (verify_iso, verify_ud_mechanical):
        report = run(n, region)
        assert report.passed, report.failures[:3]
        assert report.to_json()["region"] == region.to_json()


def test_flipped_tie_break_is_caught(monkeypatch):
    # mutation control: choose the other branch when beta_i == beta_{i+1}
    original = udiso.ud_f_tilde

    def flipped(i, p):
        if 2 <= i <= p.n - 1 and p.beta(i) == p.beta(i + 1):
            return p.shifted({p.n + i: -1})
        return original(i, p)

    monkeypatch.setattr(udiso, "ud_f_tilde", flipped)
    report = verify_iso(3, Region(box=1))
    assert not report.passed
    assert all("omega f" in f["identity"] for f in report.failures)


def test_negated_eps_is_caught(monkeypatch):
    original = udiso.ud_eps
    monkeypatch.setattr(udiso, "ud_eps", lambda i, p: -original(i, p) if 2 <= i <= p.n - 1 else original(i, p))
    assert not verify_iso(4, Region(trials=50, seed=0)).passed
