"""Monte Carlo estimation of the left-passage probability by direct
simulation of the lifted difference process.

Only the one-dimensional difference Y = X - W is simulated: its dynamics
are autonomous,

    dY = [ v(Y, q) + 2 (ln H)'(Y, q) ] dt + sqrt(2) dB,   q = p - t,

and the left-passage event is exactly absorption of Y at 2*pi (versus 0).
Euler-Maruyama with a boundary-adaptive step handles the -2/d singular
drift at the endpoints; the run is capped just before the modulus clock
reaches zero, where paths are already pinned to a boundary.  Samples are
partitioned across workers with per-worker RNG streams derived from
(seed, worker index), so results are reproducible for a fixed worker
count (per engine implementation).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .precision import (
    DEFAULT_PRECISION,
    TWO_PI,
    DomainError,
    SeriesPrecision,
    check_modulus,
)
from .passage import SideArc, hitting_density, left_passage_arc
from . import _engine


@dataclass(frozen=True)
class SdeRunConfig:
    """Discretization and sampling parameters for the SDE engine.

    The adaptive step is dt = min(dt_max, dt_boundary_factor * d^2,
    (p - t)/2) with d the distance of Y to the absorbing set {0, 2*pi}.
    """

    n_samples: int
    seed: int = 0
    dt_max: float = 1e-3
    dt_boundary_factor: float = 0.1
    absorb_eps: float = 1e-4
    time_eps: float = 1e-6
    workers: int = 1

    def __post_init__(self):
        if self.n_samples < 1:
            raise DomainError("n_samples must be >= 1")
        for name in ("dt_max", "dt_boundary_factor", "absorb_eps", "time_eps"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")


@dataclass(frozen=True)
class McEstimate:
    """Binomial estimate: mean = n_left / n over the resolved samples."""

    mean: float
    stderr: float
    n: int
    n_left: int
    n_unresolved: int

    @property
    def flagged(self) -> bool:
        """True when more than 1% of the samples ended unresolved."""
        total = self.n + self.n_unresolved
        return total > 0 and self.n_unresolved > 0.01 * total


def _estimate_from_counts(left: int, right: int, unres: int) -> McEstimate:
    n = left + right
    mean = left / n if n else math.nan
    stderr = math.sqrt(mean * (1.0 - mean) / n) if n else math.nan
    return McEstimate(mean=mean, stderr=stderr, n=n, n_left=left, n_unresolved=unres)


def _worker_chunks(n: int, workers: int) -> list[int]:
    base, extra = divmod(n, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]


def _run_sde(x0_per_worker, p, cfg: SdeRunConfig, prec: SeriesPrecision) -> McEstimate:
    engine = _engine.active

    def job(args):
        widx, x0 = args
        return engine.sde_counts(
            x0, p, cfg.dt_max, cfg.dt_boundary_factor, cfg.absorb_eps,
            cfg.time_eps, prec.switch_threshold, prec.rel_tol,
            cfg.seed & ((1 << 64) - 1), widx,
        )

    jobs = [(w, x0) for w, x0 in enumerate(x0_per_worker) if len(x0)]
    if len(jobs) == 1:
        results = [job(jobs[0])]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(job, jobs))
    left = sum(r[0] for r in results)
    right = sum(r[1] for r in results)
    unres = sum(r[2] for r in results)
    return _estimate_from_counts(left, right, unres)


def simulate_passage(
    x: float,
    p: float,
    cfg: SdeRunConfig,
    prec: SeriesPrecision | None = None,
) -> McEstimate:
    """Estimate varpi(x, p) from cfg.n_samples absorbed paths."""
    prec = prec or DEFAULT_PRECISION
    p = check_modulus(p, allow_infinite=False)
    x = float(x)
    if not 0.0 < x < TWO_PI:
        raise DomainError(f"x = {x} outside the open interval (0, 2*pi)")
    chunks = _worker_chunks(cfg.n_samples, cfg.workers)
    x0s = [np.full(c, x, dtype=float) for c in chunks]
    return _run_sde(x0s, p, cfg, prec)


def simulate_arc_passage(
    arc: SideArc,
    p: float,
    cfg: SdeRunConfig,
    prec: SeriesPrecision | None = None,
    grid_n: int = 4097,
) -> McEstimate:
    """Estimate the arc probability: draw the exit point from the hitting
    density by inverse CDF on a quadrature grid, then run one path per draw.

    An infinite modulus is handled analytically (exact value, zero error).
    """
    prec = prec or DEFAULT_PRECISION
    p = check_modulus(p)
    if math.isinf(p):
        value = left_passage_arc(arc, p, prec)
        return McEstimate(mean=value, stderr=0.0, n=0, n_left=0, n_unresolved=0)
    xs = np.linspace(arc.a, arc.b, grid_n)
    dens = np.array([hitting_density(t, arc, p, prec) for t in xs])
    cdf = np.concatenate([[0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(xs))])
    cdf /= cdf[-1]
    chunks = _worker_chunks(cfg.n_samples, cfg.workers)
    seed = cfg.seed & ((1 << 64) - 1)
    x0s = []
    for w, c in enumerate(chunks):
        rng = np.random.default_rng(np.random.SeedSequence([seed, w, 0xA5C]))
        u = rng.random(c)
        x0s.append(np.interp(u, cdf, xs))
    return _run_sde(x0s, p, cfg, prec)
