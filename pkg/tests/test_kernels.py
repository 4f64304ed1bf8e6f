"""Excursion kernel, Green's function, partition function, drift."""

import math

import numpy as np
import pytest

from cylsle import (
    DomainError,
    dedekind_eta,
    excursion_kernel,
    excursion_kernel_prime,
    greens_function,
    partition_function,
    sde_drift,
    v_field,
    v_prime,
)
from cylsle.kernels import _h_double_prime
from cylsle.precision import DEFAULT_PRECISION
from cylsle.special import v_family

PI = math.pi
TWO_PI = 2.0 * math.pi


def _h_naive_direct(x, p, n_terms=400):
    total = 1.0 / (TWO_PI * math.sin(0.5 * x) ** 2) - 1.0 / (p * PI)
    for n in range(1, n_terms):
        if 2.0 * n * p > 700.0:
            break
        total -= (4.0 / PI) * n * math.cos(n * x) / (math.exp(2.0 * n * p) - 1.0)
    return total


def _h_naive_images(x, p, span=40):
    return (PI / (2.0 * p * p)) * sum(
        1.0 / math.sinh(PI * (x - TWO_PI * n) / (2.0 * p)) ** 2
        for n in range(-span, span + 1)
        if abs(PI * (x - TWO_PI * n) / (2.0 * p)) < 350.0
    )


# ---------------------------------------------------------------------------
# excursion kernel
# ---------------------------------------------------------------------------

def test_h_infinite_modulus_at_pi():
    kv = excursion_kernel(PI, math.inf)
    assert kv.value == pytest.approx(1.0 / TWO_PI, abs=1e-15)


def test_h_at_pi_unit_modulus_both_series():
    # independent oracles: naive direct summation and naive image summation
    direct_oracle = _h_naive_direct(PI, 1.0)
    image_oracle = _h_naive_images(PI, 1.0)
    assert direct_oracle == pytest.approx(image_oracle, rel=1e-12)
    got = excursion_kernel(PI, 1.0).value
    assert got == pytest.approx(direct_oracle, rel=1e-12)
    assert got == pytest.approx(6.5004e-4, rel=1e-3)  # magnitude lock


def test_h_velocity_identity():
    # H = -(1/pi)(v' + 1/p) at (pi/2, 2)
    x, p = PI / 2, 2.0
    lhs = excursion_kernel(x, p).value
    rhs = -(v_prime(x, p) + 1.0 / p) / PI
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_h_representation_tags():
    assert excursion_kernel(1.0, 4.0).representation_used == "direct_series"
    assert excursion_kernel(1.0, 1.0).representation_used == "modular_series"
    assert excursion_kernel(1.0, 1.0, representation="direct_series").representation_used == "direct_series"


def test_h_pole():
    with pytest.raises(DomainError):
        excursion_kernel(0.0, 1.0)
    with pytest.raises(DomainError):
        excursion_kernel(TWO_PI, 1.0)


def test_h_positivity_and_evenness():
    for x in np.linspace(0.15, TWO_PI - 0.15, 23):
        for p in (0.2, 0.6, 1.3, 3.0, 10.0):
            h = excursion_kernel(x, p).value
            assert h > 0.0
            assert excursion_kernel(TWO_PI - x, p).value == pytest.approx(h, abs=1e-12 * max(1, h))


def test_h_both_representations_agree():
    for x in np.linspace(0.2, TWO_PI - 0.2, 17):
        for p in (0.5, 1.0, 2.0, 3.0):
            d = excursion_kernel(x, p, representation="direct_series").value
            m = excursion_kernel(x, p, representation="modular_series").value
            assert abs(d - m) <= 1e-10 * max(1.0, abs(d))
            dp = excursion_kernel_prime(x, p, representation="direct_series").value
            mp_ = excursion_kernel_prime(x, p, representation="modular_series").value
            assert abs(dp - mp_) <= 1e-10 * max(1.0, abs(dp))


def test_h_identity_with_velocity_everywhere():
    # -p pi H = p v' + 1, both sides from analytic series
    for x in np.arange(0.2, TWO_PI - 0.19, 0.2):
        for p in (0.5, 1.0, 2.0, 4.0):
            h = excursion_kernel(x, p).value
            _, vp, _ = v_family(x, p)
            assert -p * PI * h == pytest.approx(p * vp + 1.0, abs=1e-12 * max(1.0, abs(p * vp + 1.0)))


def test_h_evolution_residual():
    # dH/dp = (v' - 1/p) H + v H' + H'' with the p-derivative by finite
    # difference and all spatial derivatives analytic.  The -1/p is forced
    # by H = -(v' + 1/p)/pi together with the Burgers equation.
    h_fd = 1e-4
    for x in np.arange(0.4, TWO_PI - 0.39, 0.4):
        for p in (0.6, 1.0, 2.0, 4.0):
            dhdp = (
                excursion_kernel(x, p + h_fd).value
                - excursion_kernel(x, p - h_fd).value
            ) / (2.0 * h_fd)
            v, vp, _ = v_family(x, p)
            h = excursion_kernel(x, p).value
            hp = excursion_kernel_prime(x, p).value
            hpp = _h_double_prime(x, p, DEFAULT_PRECISION)
            assert abs(dhdp - (vp - 1.0 / p) * h - v * hp - hpp) < 1e-6


def test_hprime_matches_finite_difference():
    h_fd = 1e-5
    for x, p in [(1.2, 0.8), (2.7, 1.5), (4.9, 3.5)]:
        fd = (
            excursion_kernel(x + h_fd, p).value - excursion_kernel(x - h_fd, p).value
        ) / (2.0 * h_fd)
        assert excursion_kernel_prime(x, p).value == pytest.approx(fd, rel=1e-5, abs=1e-8)


# ---------------------------------------------------------------------------
# Green's function
# ---------------------------------------------------------------------------

def test_greens_boundary_zero():
    assert greens_function(1.0 + 0.0j, 2.0 + 0.6j, 1.0) == 0.0


def test_greens_symmetry():
    a = greens_function(1 + 0.3j, 2 + 0.6j, 1.0)
    b = greens_function(2 + 0.6j, 1 + 0.3j, 1.0)
    assert a == pytest.approx(b, abs=1e-12)
    assert a >= 0.0


def test_greens_against_double_sum():
    z, z0, p = 1.0 + 0.25j, 2.5 + 0.5j, 1.5
    x, y = z.real, z.imag
    x0, y0 = z0.real, z0.imag
    total = 0.0
    for n in range(-6, 7):
        for k in range(1, 80):
            total += (
                (2.0 / PI)
                * math.sin(PI * k * y / p)
                * math.sin(PI * k * y0 / p)
                / k
                * math.exp(-PI * k * abs(x - x0 - TWO_PI * n) / p)
            )
    assert greens_function(z, z0, p) == pytest.approx(total, abs=1e-8)


def test_greens_coincident_raises():
    with pytest.raises(DomainError):
        greens_function(1 + 0.3j, 1 + 0.3j, 1.0)


def test_greens_strict_interior_flag():
    with pytest.raises(DomainError):
        greens_function(1.0 + 0.0j, 2 + 0.6j, 1.0, strict_interior=True)


def test_h_is_mixed_normal_derivative_of_greens():
    # H(x - x0, p) = d^2 G / dy dy0 at the lower boundary; with G vanishing
    # on the boundary the mixed second difference reduces to G(h, h)/h^2
    h = 1e-3
    for sep, p in [(PI / 2, 1.0), (2.5, 1.6)]:
        g = greens_function(complex(sep, h), complex(0.0, h), p)
        assert g / h**2 == pytest.approx(excursion_kernel(sep, p).value, abs=1e-4)


# ---------------------------------------------------------------------------
# partition function
# ---------------------------------------------------------------------------

def test_partition_function_at_self_dual_point():
    eta_i = math.gamma(0.25) / (2.0 * PI ** 0.75)
    assert partition_function(PI) == pytest.approx(eta_i**2, abs=1e-12)


def test_partition_function_modular_self_consistency():
    p = 2.0
    lhs = partition_function(p)
    rhs = dedekind_eta(PI * PI / p) ** 2  # eta(i pi / p)^2
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_partition_function_large_modulus():
    p = 40.0
    assert partition_function(p) * (PI / p) * math.exp(p / 6.0) == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# drift
# ---------------------------------------------------------------------------

def test_drift_zero_at_symmetry_point():
    for q in (0.5, 1.0, 2.0):
        assert abs(sde_drift(PI, q)) < 1e-10


def test_drift_near_pole_asymptotics():
    b = sde_drift(0.01, 1.0)
    assert b == pytest.approx(-2.0 / 0.01, rel=0.05)
    b = sde_drift(TWO_PI - 0.01, 1.0)
    assert b == pytest.approx(+2.0 / 0.01, rel=0.05)


def test_drift_reflection_antisymmetry():
    for y, q in [(1.0, 1.3), (2.2, 0.4), (0.6, 3.6)]:
        assert sde_drift(TWO_PI - y, q) == pytest.approx(-sde_drift(y, q), abs=1e-10)


def test_drift_strongly_pushes_into_boundaries():
    # near either endpoint the drift points at the nearer boundary
    for q in (0.05, 0.5, 2.0, 5.0):
        assert sde_drift(0.05, q) < -10.0
        assert sde_drift(TWO_PI - 0.05, q) > 10.0


def test_drift_domain():
    with pytest.raises(DomainError):
        sde_drift(0.0, 1.0)
    with pytest.raises(DomainError):
        sde_drift(7.0, 1.0)
