"""Lattice spectral determinant and its regularized continuum limit."""

import math

import mpmath
import pytest

from cylsle import (
    CATALAN,
    DomainError,
    LatticeDomain,
    dedekind_eta,
    log_det_bruteforce,
    log_det_exact,
    regularize,
)
from cylsle.spectral import t_factor

PI = math.pi


def test_smallest_lattice_determinant():
    # M = 2, L = 2: eigenvalues 4 - 2 cos(pi/2) - 2 cos(pi m) -> {2, 6}
    dom = LatticeDomain(2, 2)
    assert log_det_exact(dom) == pytest.approx(math.log(12.0), abs=1e-12)
    assert log_det_bruteforce(dom) == pytest.approx(math.log(12.0), abs=1e-12)


def test_t_factor_at_half_height():
    # cos(pi l / L) = 0 gives t = ln(2 + sqrt(3))
    assert t_factor(2, 4) == pytest.approx(math.log(2.0 + math.sqrt(3.0)), abs=1e-12)


def test_catalan_constant_literal():
    assert CATALAN == pytest.approx(float(mpmath.catalan), abs=1e-15)


def test_exact_vs_bruteforce():
    dom = LatticeDomain(16, 8)
    assert log_det_exact(dom) == pytest.approx(log_det_bruteforce(dom), abs=1e-10)


def test_bruteforce_size_guard():
    with pytest.raises(DomainError):
        log_det_bruteforce(LatticeDomain(256, 128))


def test_lattice_domain_validation():
    with pytest.raises(DomainError):
        LatticeDomain(1, 8)
    with pytest.raises(DomainError):
        LatticeDomain(8, 1)
    assert LatticeDomain(60, 10).p == pytest.approx(2 * PI * 10 / 60, abs=1e-15)


def test_log_det_increasing_in_size():
    for M in (4, 8, 16, 32):
        for L in (4, 8, 16):
            base = log_det_exact(LatticeDomain(M, L))
            assert log_det_exact(LatticeDomain(M + 2, L)) > base
            assert log_det_exact(LatticeDomain(M, L + 1)) > base


def test_winding_sector_low_mode_approximation():
    # 2 sum ln(1 - e^{-M t_l}) vs the same sum with t_l -> pi l / L; the
    # agreement needs both a safe aspect ratio and a fine mesh
    for M, L in [(240, 40), (96, 16)]:
        exact = 2.0 * sum(
            math.log1p(-math.exp(-M * t_factor(l, L))) for l in range(1, L)
        )
        approx = 0.0
        l = 1
        while True:
            term = math.exp(-PI * M * l / L)
            if term < 1e-16:
                break
            approx += 2.0 * math.log1p(-term)
            l += 1
        assert abs(exact - approx) < 1e-8


def test_regularized_report_fields_consistent():
    dom = LatticeDomain(40, 20)
    rep = regularize(dom)
    assert rep.regularized == pytest.approx(
        rep.log_det - rep.bulk_term - rep.surface_term, abs=1e-12
    )
    assert rep.discrepancy == pytest.approx(rep.regularized - rep.eta_target, abs=1e-12)
    assert rep.bulk_term == pytest.approx(4.0 * dom.M * dom.L * CATALAN / PI, abs=1e-12)
    assert rep.surface_term == pytest.approx(
        -0.5 * dom.M * math.log(3.0 + 2.0 * math.sqrt(2.0)), abs=1e-12
    )


def test_eta_target_two_expressions():
    # 2 ln eta(i pi / p) = ln[(p / pi) eta(i p / pi)^2] by the modular step
    p = PI / 2
    lhs = 2.0 * math.log(dedekind_eta(PI * PI / p))
    rhs = math.log((p / PI) * dedekind_eta(p) ** 2)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_self_dual_convergence():
    discrepancies = []
    for M in (40, 80, 160):
        rep = regularize(LatticeDomain(M, M // 2))  # p = pi
        discrepancies.append(abs(rep.discrepancy))
    assert discrepancies[0] > discrepancies[1] > discrepancies[2]
    assert discrepancies[-1] < 1e-2


def test_aspect_ratio_scaling():
    # the remainder decays faster than 1/L; measured rate is 1/L^2, so a
    # mesh doubling at fixed p divides the discrepancy by ~4
    d1 = regularize(LatticeDomain(80, 40)).discrepancy
    d2 = regularize(LatticeDomain(160, 80)).discrepancy
    assert 0.2 <= d2 / d1 <= 0.35
