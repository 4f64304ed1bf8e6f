"""Lattice Monte Carlo: loop-erased walks between two boundary sites of the
cylinder grid, classified by the sign of their net unwrapped displacement.

A simple random walk is started at the interior neighbour (0, 1) of the
boundary site (0, 0), absorbed on the top and bottom rows, and accepted
only if it exits at the target site (target_m, 0); acceptance is by plain
rejection, which is exact.  The accepted walk, with the start site
prepended, is loop-erased chronologically; the erased path exits at
target_m + k*M for some winding k, and the passage is LEFT exactly when
that displacement is negative.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .precision import DomainError, PartialResultError
from .lattice import LatticeDomain, LatticePath, chronological_erase
from .sle_mc import McEstimate, _estimate_from_counts, _worker_chunks
from . import _engine


@dataclass(frozen=True)
class LerwConfig:
    """Sampling parameters; max_attempts_per_sample is a per-sample step
    budget (total budget = n_samples * max_attempts_per_sample steps)."""

    n_samples: int
    seed: int = 0
    max_attempts_per_sample: int = 10_000_000
    workers: int = 1

    def __post_init__(self):
        if self.n_samples < 1:
            raise DomainError("n_samples must be >= 1")
        if self.max_attempts_per_sample < 1:
            raise DomainError("max_attempts_per_sample must be >= 1")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")


def loop_erase(path: LatticePath, dom: LatticeDomain) -> LatticePath:
    """Chronological loop erasure of a boundary-to-boundary walk path."""
    path.validate(dom)
    erased = chronological_erase([tuple(s) for s in path.sites], dom.M)
    return LatticePath(np.array(erased, dtype=np.int64))


def sample_lerw(dom: LatticeDomain, target_m: int, cfg: LerwConfig) -> McEstimate:
    """LEFT-passage frequency of loop-erased walks conditioned to exit at
    column target_m.

    Raises PartialResultError (carrying the partial estimate) if the step
    budget runs out before n_samples walks are accepted.
    """
    if dom.M < 4:
        raise DomainError(f"walk sampling needs M >= 4, got M = {dom.M}")
    target_m = int(target_m)
    if not 1 <= target_m <= dom.M - 1:
        raise DomainError(
            f"target must satisfy 1 <= m <= M-1 (start and target distinct), got {target_m}"
        )
    engine = _engine.active
    chunks = _worker_chunks(cfg.n_samples, cfg.workers)
    budget_total = cfg.max_attempts_per_sample * cfg.n_samples
    seed = cfg.seed & ((1 << 64) - 1)

    def job(args):
        widx, n_acc = args
        budget = int(budget_total * (n_acc / cfg.n_samples))
        return engine.lerw_counts(dom.M, dom.L, target_m, n_acc, budget, seed, widx)

    jobs = [(w, c) for w, c in enumerate(chunks) if c]
    if len(jobs) == 1:
        results = [job(jobs[0])]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(job, jobs))
    nleft = sum(r[0] for r in results)
    accepted = sum(r[1] for r in results)
    steps = sum(r[2] for r in results)
    estimate = _estimate_from_counts(nleft, accepted - nleft, 0)
    if accepted < cfg.n_samples:
        raise PartialResultError(
            f"step budget exhausted after {steps} steps: "
            f"{accepted}/{cfg.n_samples} walks accepted",
            estimate=estimate,
        )
    return estimate
