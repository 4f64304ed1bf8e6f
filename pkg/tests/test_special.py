"""Special-function layer: theta, velocity field, eta, 2F1."""

import math

import numpy as np
import pytest
import scipy.integrate
import scipy.special

from cylsle import (
    DomainError,
    SeriesPrecision,
    dedekind_eta,
    hypergeom_2f1,
    theta1,
    v_double_prime,
    v_field,
    v_prime,
)
from cylsle.special import v_family

PI = math.pi
TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# theta1
# ---------------------------------------------------------------------------

def test_theta1_odd_zero():
    for p in (0.5, 1.0, math.pi, 4.0):
        assert theta1(0.0, p) == 0.0


def test_theta1_antisymmetry():
    z = 0.3 + 0.1j
    p = 1.0
    assert abs(theta1(-z, p) + theta1(z, p)) < 1e-13


def test_theta1_representations_agree():
    # z = 1/4 is cylinder coordinate x = pi/2
    a = theta1(0.25, 1.0, representation="direct_series")
    b = theta1(0.25, 1.0, representation="modular_series")
    assert abs(a - b) < 1e-12 * abs(a)


@pytest.mark.parametrize("p", [2.6, 2.9, math.pi, 3.4, 3.8])
def test_theta1_consistency_band(p):
    for z in (0.1, 0.37, 0.5 + 0.2j, 0.81):
        d = theta1(z, p, representation="direct_series")
        m = theta1(z, p, representation="modular_series")
        assert abs(d - m) <= 1e-11 * max(1.0, abs(d))


def test_theta1_rejects_bad_modulus():
    with pytest.raises(DomainError):
        theta1(0.25, -1.0)
    with pytest.raises(DomainError):
        theta1(0.25, 0.0)


# ---------------------------------------------------------------------------
# velocity field
# ---------------------------------------------------------------------------

def _v_naive(x, p, n_terms=60):
    total = 1.0 / math.tan(0.5 * x)
    for n in range(1, n_terms):
        if 2.0 * n * p > 700.0:
            break
        total += 4.0 * math.sin(n * x) / (math.exp(2.0 * n * p) - 1.0)
    return total


def test_v_zero_at_pi():
    for p in (0.5, 1.0, 2.0, 8.0):
        assert abs(v_field(PI, p)) < 1e-14


def test_v_infinite_modulus_is_cot():
    assert v_field(PI / 2, math.inf) == pytest.approx(1.0, abs=1e-15)


def test_v_quarter_circle_value():
    # oracle: direct summation of the defining series
    assert v_field(PI / 2, 1.0) == pytest.approx(_v_naive(PI / 2, 1.0), abs=1e-12)


def test_v_matches_naive_on_grid():
    for x in np.linspace(0.2, TWO_PI - 0.2, 13):
        for p in (0.4, 0.9, 1.7, 3.5):
            assert v_field(x, p) == pytest.approx(_v_naive(x, p, 400), abs=2e-13)


def test_v_pole_raises():
    with pytest.raises(DomainError):
        v_field(0.0, 1.0)
    with pytest.raises(DomainError):
        v_field(TWO_PI, 1.0)


def test_v_oddness_and_periodicity():
    for x in np.linspace(0.1, TWO_PI - 0.1, 21):
        for p in (0.3, 0.7, 1.5, 5.0):
            v = v_field(x, p)
            assert v_field(-x, p) == pytest.approx(-v, abs=1e-12)
            assert v_field(TWO_PI - x, p) == pytest.approx(-v, abs=1e-12)
            assert v_field(x + TWO_PI, p) == pytest.approx(v, abs=1e-12)


def test_v_derivatives_match_finite_differences():
    h = 1e-4
    for x, p in [(1.3, 1.0), (2.5, 0.6), (4.4, 2.2)]:
        fd1 = (v_field(x + h, p) - v_field(x - h, p)) / (2 * h)
        fd2 = (v_field(x + h, p) - 2 * v_field(x, p) + v_field(x - h, p)) / h**2
        assert v_prime(x, p) == pytest.approx(fd1, abs=1e-6)
        assert v_double_prime(x, p) == pytest.approx(fd2, abs=1e-5)


def test_v_burgers_equation():
    # dv/dp = v v' + v'' with the p-derivative by central difference
    h = 1e-4
    for x in np.arange(0.2, TWO_PI - 0.19, 0.2):
        for p in (0.5, 1.0, 2.0, 4.0):
            dvdp = (v_field(x, p + h) - v_field(x, p - h)) / (2 * h)
            v, vp, vpp = v_family(x, p)
            assert abs(dvdp - v * vp - vpp) < 1e-6


def test_v_modular_identity():
    # v(x,p) = (i pi / p) v(i pi x / p, pi^2 / p) - x / p
    for p in (0.5, 1.0, 2.0, 3.0):
        for x in np.arange(0.5, 5.6, 0.5):
            lhs = v_field(x, p)
            rhs = (1j * PI / p) * v_field(1j * PI * x / p, PI * PI / p) - x / p
            assert abs(lhs - rhs) < 1e-8


def test_v_representation_band():
    for p in (2.7, 3.0, math.pi, 3.3, 3.6):
        for x in (0.3, 1.1, 2.8, 4.0, 5.9):
            d = v_field(x, p, representation="direct_series")
            m = v_field(x, p, representation="modular_series")
            assert abs(d - m) <= 1e-11 * max(1.0, abs(d))


# ---------------------------------------------------------------------------
# Dedekind eta
# ---------------------------------------------------------------------------

def test_eta_at_i():
    # eta(i), reached at p = pi; independent oracle Gamma(1/4)/(2 pi^(3/4))
    oracle = math.gamma(0.25) / (2.0 * PI ** 0.75)
    assert dedekind_eta(PI) == pytest.approx(oracle, abs=1e-12)


def test_eta_modular_property():
    p = 0.7
    lhs = dedekind_eta(p, representation="direct_series")
    rhs = math.sqrt(PI / p) * dedekind_eta(PI * PI / p, representation="direct_series")
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_eta_large_modulus_prefactor():
    p = 60.0
    assert dedekind_eta(p) * math.exp(p / 12.0) == pytest.approx(1.0, abs=1e-12)


def test_eta_representation_band():
    for p in (2.8, math.pi, 3.5):
        d = dedekind_eta(p, representation="direct_series")
        m = dedekind_eta(p, representation="modular_series")
        assert abs(d - m) <= 1e-11 * d


# ---------------------------------------------------------------------------
# hypergeometric
# ---------------------------------------------------------------------------

def test_2f1_at_zero():
    for a, b, c in [(0.5, 2.0, 1.5), (1.0, 1.0, 2.0), (0.3, 0.7, 1.9)]:
        assert hypergeom_2f1(a, b, c, 0.0) == 1.0


def test_2f1_arctangent_case():
    # 2F1(1/2, 1; 3/2; -w^2) = arctan(w)/w at w = 1
    assert hypergeom_2f1(0.5, 1.0, 1.5, -1.0) == pytest.approx(PI / 4.0, abs=1e-13)


def _euler_integral_2f1(a, b, c, z):
    # Euler representation with the (symmetric) parameter order chosen so
    # that c > b > 0: 2F1(a,b;c;z) = B(b, c-b)^-1 int t^(b-1)(1-t)^(c-b-1)(1-zt)^(-a)
    if not c > b > 0:
        a, b = b, a
    assert c > b > 0
    coef = math.gamma(c) / (math.gamma(b) * math.gamma(c - b))
    val, err = scipy.integrate.quad(
        lambda t: t ** (b - 1.0) * (1.0 - t) ** (c - b - 1.0) * (1.0 - z * t) ** (-a),
        0.0,
        1.0,
        epsabs=1e-13,
        epsrel=1e-13,
        limit=200,
    )
    return coef * val


def test_2f1_pfaff_vs_euler_integral():
    got = hypergeom_2f1(0.5, 2.0, 1.5, -1.0)
    assert got == pytest.approx(_euler_integral_2f1(0.5, 2.0, 1.5, -1.0), abs=1e-10)
    assert got == pytest.approx(float(scipy.special.hyp2f1(0.5, 2.0, 1.5, -1.0)), abs=1e-12)


@pytest.mark.parametrize("z", [-0.3, -1.0, -8.0, -25.0, -80.0, -2500.0])
@pytest.mark.parametrize("a,b,c", [
    (0.5, 2.0, 1.5),     # passage family, kappa = 2
    (0.5, 1.5, 1.5),     # passage family, kappa = 8/3 (integral route)
    (0.5, 0.8, 1.5),     # passage family, generic kappa
    (0.4, 1.3, 2.2),     # generic parameters (inversion route)
])
def test_2f1_negative_axis_against_scipy(a, b, c, z):
    ref = float(scipy.special.hyp2f1(a, b, c, z))
    assert hypergeom_2f1(a, b, c, z) == pytest.approx(ref, rel=1e-10, abs=1e-12)


def test_2f1_domain_errors():
    with pytest.raises(DomainError):
        hypergeom_2f1(0.5, 1.0, 0.0, -1.0)
    with pytest.raises(DomainError):
        hypergeom_2f1(0.5, 1.0, -2.0, -1.0)
    with pytest.raises(DomainError):
        hypergeom_2f1(0.5, 1.0, 1.5, 0.995)


def test_precision_policy_is_validated():
    with pytest.raises(DomainError):
        SeriesPrecision(rel_tol=2.0)
    with pytest.raises(DomainError):
        SeriesPrecision(max_terms=2)
    with pytest.raises(DomainError):
        SeriesPrecision(switch_threshold=-1.0)
