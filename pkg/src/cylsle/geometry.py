"""Conformal parameter extraction for a disk obstacle, and the Moebius
transport used to cross-check the half-plane passage formula against the
large-modulus cylinder limit.

A closed disk of radius r centred at x0 + i y0 in the upper half-plane
determines the cylinder parameters through

    cosh(2 p) = (y0 / r)^2,
    cot(x/2)  = -x0 / sqrt(y0^2 - r^2),

with the branch x = pi + 2 atan(x0 / sqrt(y0^2 - r^2)) chosen so that x is
continuous and increasing in x0 and equals pi for a centred obstacle.
Only the parameters are computed; no point-wise map is constructed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .precision import DEFAULT_PRECISION, TWO_PI, DomainError, SeriesPrecision
from .passage import HalfPlanePoint, schramm_half_plane

_PI = math.pi


@dataclass(frozen=True)
class DiskObstacle:
    """Closed disk of radius r centred at x0 + i y0, strictly inside the
    upper half-plane (y0 > r > 0)."""

    x0: float
    y0: float
    r: float

    def __post_init__(self):
        if not self.r > 0.0:
            raise DomainError(f"radius must be positive, got {self.r}")
        if not self.y0 > self.r:
            raise DomainError(
                f"disk must lie strictly inside the half-plane (y0 > r), "
                f"got y0 = {self.y0}, r = {self.r}"
            )


def disk_to_cylinder(k: DiskObstacle) -> tuple[float, float]:
    """Cylinder parameters (p, x) for a disk obstacle."""
    ratio = (k.y0 / k.r) ** 2
    p = 0.5 * math.acosh(ratio)
    x = _PI + 2.0 * math.atan(k.x0 / math.sqrt(k.y0 ** 2 - k.r ** 2))
    return p, x


def schramm_cylinder_crosscheck(
    x: float,
    prec: SeriesPrecision | None = None,
    min_separation: float = 1e-3,
) -> tuple[float, float]:
    """Transport the infinite-modulus cylinder to the half-plane and compare.

    The infinite cylinder is the unit disk under w = exp(i z), with the hole
    shrunk to the centre.  A Moebius map pinning the trace endpoints
    (w = 1 to 0, w = e^{ix} to infinity) sends the centre to
    -cos(x/2) + i sin(x/2); the half-plane formula at that point (kappa = 2)
    must match (x - sin x)/(2 pi).  Returns (half-plane value, cylinder
    value).
    """
    prec = prec or DEFAULT_PRECISION
    x = float(x)
    if not min_separation < x < TWO_PI - min_separation:
        raise DomainError(
            f"x = {x} too close to the trace endpoints (separation < {min_separation})"
        )
    image = HalfPlanePoint(re=-math.cos(0.5 * x), im=math.sin(0.5 * x))
    p_half = schramm_half_plane(image, kappa=2.0, prec=prec)
    p_cyl = (x - math.sin(x)) / TWO_PI
    return p_half, p_cyl
