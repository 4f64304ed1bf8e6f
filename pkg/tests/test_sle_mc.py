"""SDE Monte Carlo of the lifted difference process."""

import math

import pytest

from cylsle import (
    DomainError,
    McEstimate,
    SdeRunConfig,
    SideArc,
    left_passage,
    left_passage_arc,
    simulate_arc_passage,
    simulate_passage,
)

PI = math.pi
TWO_PI = 2.0 * math.pi


def test_config_validation():
    with pytest.raises(DomainError):
        SdeRunConfig(n_samples=0)
    with pytest.raises(DomainError):
        SdeRunConfig(n_samples=10, dt_max=-1.0)
    with pytest.raises(DomainError):
        SdeRunConfig(n_samples=10, workers=0)


def test_symmetry_point():
    est = simulate_passage(PI, 1.0, SdeRunConfig(n_samples=20000, seed=101, workers=2))
    assert abs(est.mean - 0.5) < 3.0 * est.stderr
    assert est.n + est.n_unresolved == 20000
    assert est.n_unresolved <= 0.01 * 20000
    assert not est.flagged


def test_against_closed_form():
    x, p = PI / 2, 4.0
    est = simulate_passage(x, p, SdeRunConfig(n_samples=20000, seed=7, workers=2))
    assert abs(est.mean - left_passage(x, p)) < 3.0 * est.stderr


def test_small_modulus_against_asymptotic():
    x, p = PI - 0.5, 0.4
    est = simulate_passage(x, p, SdeRunConfig(n_samples=30000, seed=13, workers=2))
    target = 3.8805e-4
    assert abs(est.mean - target) < 3.0 * max(est.stderr, 1e-4)


def test_exchange_symmetry():
    p = 1.0
    a = simulate_passage(2.0, p, SdeRunConfig(n_samples=15000, seed=23, workers=2))
    b = simulate_passage(TWO_PI - 2.0, p, SdeRunConfig(n_samples=15000, seed=24, workers=2))
    sigma = math.hypot(a.stderr, b.stderr)
    assert abs(a.mean + b.mean - 1.0) < 3.0 * sigma


def test_determinism_for_fixed_seed_and_workers():
    cfg = SdeRunConfig(n_samples=5000, seed=99, workers=2)
    a = simulate_passage(2.0, 1.0, cfg)
    b = simulate_passage(2.0, 1.0, cfg)
    assert a == b


def test_stderr_binomial_scaling():
    a = simulate_passage(2.5, 1.5, SdeRunConfig(n_samples=8000, seed=5, workers=2))
    b = simulate_passage(2.5, 1.5, SdeRunConfig(n_samples=16000, seed=5, workers=2))
    ratio = b.stderr / a.stderr
    assert abs(ratio - 1.0 / math.sqrt(2.0)) < 0.2 * (1.0 / math.sqrt(2.0))


def test_dt_refinement_stability():
    x, p = 2.0, 1.0
    coarse = simulate_passage(x, p, SdeRunConfig(n_samples=20000, seed=31, workers=2))
    fine = simulate_passage(
        x, p, SdeRunConfig(n_samples=20000, seed=31, workers=2, dt_max=5e-4)
    )
    assert abs(coarse.mean - fine.mean) < max(coarse.stderr, 1e-4)


def test_domain_errors():
    cfg = SdeRunConfig(n_samples=10)
    with pytest.raises(DomainError):
        simulate_passage(0.0, 1.0, cfg)
    with pytest.raises(DomainError):
        simulate_passage(7.0, 1.0, cfg)
    with pytest.raises(DomainError):
        simulate_passage(1.0, math.inf, cfg)


def test_arc_infinite_modulus_analytic():
    arc = SideArc(PI / 2, PI)
    est = simulate_arc_passage(arc, math.inf, SdeRunConfig(n_samples=100, seed=1))
    assert est.mean == pytest.approx(0.25, abs=1e-12)
    assert est.stderr == 0.0


def test_arc_against_closed_form():
    arc, p = SideArc(PI / 2, 3 * PI / 2), 2.0
    est = simulate_arc_passage(arc, p, SdeRunConfig(n_samples=20000, seed=77, workers=2))
    assert abs(est.mean - left_passage_arc(arc, p)) < 3.0 * est.stderr


def test_arc_degenerate_matches_point():
    a, p = 2.0, 1.0
    arc = SideArc(a, a + 1e-3)
    est = simulate_arc_passage(arc, p, SdeRunConfig(n_samples=20000, seed=55, workers=2))
    assert abs(est.mean - left_passage(a, p)) < 3.0 * max(est.stderr, 1e-4)


def test_mc_estimate_fields():
    e = McEstimate(mean=0.25, stderr=0.01, n=100, n_left=25, n_unresolved=3)
    assert e.flagged
    e = McEstimate(mean=0.25, stderr=0.01, n=1000, n_left=250, n_unresolved=3)
    assert not e.flagged
