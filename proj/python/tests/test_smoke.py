import cmath
import math
from fractions import Fraction

import pytest

import sczech


def test_field_constants():
    f = sczech.Field(-7)
    assert f.d_K == -7
    assert abs(f.area - math.sqrt(7) / 2) < 1e-15
    assert abs(f.e2_0 - 0.934423537768746) < 1e-12
    assert abs(f.t - math.pi / f.area) < 1e-12
    assert abs(sczech.Field(-4).e2_0) < 1e-10


def test_bad_discriminant():
    with pytest.raises(sczech.Error):
        sczech.Field(-12)
    with pytest.raises(ValueError):
        sczech.Field(5)


def test_ring():
    f = sczech.Field(-7)
    w = sczech.QuadInt(0, 1)
    assert f.mul(w, w) == sczech.QuadInt(-2, 1)  # w^2 = w - 2
    assert f.norm((3, 2)) == 23  # 9 + 6 + 4*2
    assert len(f.coprime_residues((1, 1))) == f.euler_phi((1, 1))


def test_e1_is_odd_and_periodic():
    f = sczech.Field(-8)
    z = 0.31 + 0.17j
    assert abs(f.E1(-z) + f.E1(z)) < 1e-12
    assert abs(f.E1(z + 1) - f.E1(z)) < 1e-12
    assert abs(f.E1(z + f.omega) - f.E1(z)) < 1e-12


def test_dedekind_and_phi():
    f = sczech.Field(-7)
    assert f.D(1, 0) == 0
    c, d = sczech.QuadInt(2, 1), sczech.QuadInt(1)
    assert abs(f.d_tilde(c, d) - f.d_tilde(c, d + c)) < 1e-12
    m = f.bezout(c, d)
    t = [sczech.QuadInt(1), sczech.QuadInt(0, 1), sczech.QuadInt(0), sczech.QuadInt(1)]
    assert abs(f.phi_tilde(t) - f.area) < 1e-12
    p = f.phi(m)
    assert abs(p + p.conjugate()) < 1e-10


def test_classical():
    assert sczech.classical_s(5, 2) == Fraction(0)
    assert sczech.classical_s(7, 3) + sczech.classical_s(3, 7) == Fraction(-1, 4) + Fraction(1, 12) * (
        Fraction(7, 3) + Fraction(3, 7) + Fraction(1, 21)
    )


def test_kloosterman_and_counts():
    f = sczech.Field(-7)
    c = sczech.QuadInt(1, 1)
    s = f.s_infinity(0, 0, c, 0)
    assert abs(s - f.euler_phi(c)) < 1e-12
    rec = f.identity_check(c, 1.7)
    assert rec["residual_unshifted"] < 1e-9
    assert f.coset_count(1.5)["N_X"] == 3
    assert f.sweep_conventions()["selected"] == "c3"


def test_equidist():
    f = sczech.Field(-7)
    pts = f.equidist([4, 6], 1.0, modes=2, bins=8)
    assert [p["X"] for p in pts] == [4, 6]
    for p in pts:
        assert sum(p["histogram"]) == p["count"]
        assert 1 / (2 * p["count"]) <= p["discrepancy"] <= 1
    w = f.weyl_sum(5, 0.0, 1)
    assert abs(complex(w["normalized"]["re"], w["normalized"]["im"]) - 1) < 1e-15
    assert sczech.star_discrepancy([0.0]) == 1.0
    with pytest.raises(sczech.Error):
        sczech.star_discrepancy([])
