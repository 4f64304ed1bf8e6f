"""Cylinder lattice geometry shared by the walk sampler and the spectral
determinant: M columns identified periodically, rows y = 0..L with the
top and bottom rows acting as absorbing boundaries."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .precision import DomainError


@dataclass(frozen=True)
class LatticeDomain:
    """M x L cylinder grid; the continuum modulus is p = 2 pi L / M."""

    M: int
    L: int

    def __post_init__(self):
        # The spectral determinant is defined down to M = 2; the walk
        # sampler imposes its own stricter M >= 4 requirement.
        if self.M < 2:
            raise DomainError(f"M must be >= 2, got {self.M}")
        if self.L < 2:
            raise DomainError(f"L must be >= 2, got {self.L}")

    @property
    def p(self) -> float:
        return 2.0 * math.pi * self.L / self.M


@dataclass(frozen=True)
class LatticePath:
    """A nearest-neighbour walk path with unwrapped x coordinates.

    ``sites`` is an (N, 2) integer array of (x_unwrapped, y) pairs; the
    first and last sites lie on the lower boundary y = 0 and interior sites
    stay strictly inside.
    """

    sites: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sites", np.asarray(self.sites, dtype=np.int64))

    def validate(self, dom: LatticeDomain) -> None:
        s = self.sites
        if s.ndim != 2 or s.shape[1] != 2 or s.shape[0] < 2:
            raise DomainError("path must be an (N, 2) array with N >= 2")
        steps = np.abs(np.diff(s, axis=0)).sum(axis=1)
        if not np.all(steps == 1):
            raise DomainError("consecutive sites must differ by one unit step")
        y = s[:, 1]
        if y[0] != 0 or y[-1] != 0:
            raise DomainError("path must start and end on the y = 0 boundary")
        if np.any(y < 0) or np.any(y > dom.L):
            raise DomainError("path leaves the lattice strip")
        if np.any(y[1:-1] < 1) or np.any(y[1:-1] > dom.L - 1):
            raise DomainError("interior sites must satisfy 1 <= y <= L-1")

    @property
    def displacement(self) -> int:
        return int(self.sites[-1, 0] - self.sites[0, 0])


def chronological_erase(sites, M: int) -> list[tuple[int, int]]:
    """Chronological loop erasure on the cylinder.

    ``sites`` is a sequence of (x_unwrapped, y) unit-step pairs.  Site
    identity is (x mod M, y); on a revisit the output is truncated back to
    the first visit.  Unwrapped x coordinates of the output are recomputed
    so consecutive output sites again differ by the step actually walked
    (erasing a winding loop shifts the remaining lift by a multiple of M).
    """
    idx: dict[tuple[int, int], int] = {}
    out: list[tuple[int, int]] = []
    prev_raw_x = None
    for raw_x, y in sites:
        key = (raw_x % M, y)
        pos = idx.get(key)
        if pos is not None:
            for s in out[pos + 1 :]:
                del idx[(s[0] % M, s[1])]
            del out[pos + 1 :]
        else:
            if out:
                new_x = out[-1][0] + (raw_x - prev_raw_x)
            else:
                new_x = raw_x
            out.append((new_x, y))
            idx[key] = len(out) - 1
        prev_raw_x = raw_x
    return out
