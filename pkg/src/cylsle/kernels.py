"""Boundary kernels on the cylinder: excursion kernel, Green's function,
partition function, and the drift of the lifted driving process.

The excursion kernel has two series representations:

    H(x, p) = 1/(2 pi sin^2(x/2)) - (4/pi) sum_n n cos(nx)/(e^{2np} - 1)
              - 1/(p pi)                                   (direct)

    H(x, p) = (pi / 2 p^2) sum_{n in Z} 1/sinh^2(pi (x - 2 pi n) / 2p)
                                                           (modular images)

The image form converges fast exactly where the direct one degrades (small
p), and vice versa; the precision policy picks the representation.  H is
tied to the velocity field by  H = -(1/pi) (v' + 1/p),  which the test
suite checks term-for-term.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .precision import (
    DEFAULT_PRECISION,
    TWO_PI,
    DomainError,
    SeriesPrecision,
    check_modulus,
    reduce_angle,
)
from . import special
from .special import (
    DIRECT_SERIES,
    MODULAR_SERIES,
    _direct_sums,
    _modular_pieces,
    _resolve_representation,
    dedekind_eta,
    theta1,
    v_family,
)

_PI = math.pi


@dataclass(frozen=True)
class KernelValue:
    """An excursion-kernel evaluation plus the representation that produced it."""

    value: float
    representation_used: str


def _reduce_kernel_arg(x: float) -> float:
    x0, _ = reduce_angle(float(x))
    if x0 == 0.0:
        raise DomainError(f"x = {x} is congruent to 0 mod 2*pi (pole of H)")
    return x0


def _h_direct(x: float, p: float, prec: SeriesPrecision) -> float:
    _, s2, _ = _direct_sums(x, p, prec)
    s = math.sin(0.5 * x)
    return 1.0 / (TWO_PI * s * s) - (4.0 / _PI) * s2 - 1.0 / (p * _PI)


def _hprime_direct(x: float, p: float, prec: SeriesPrecision) -> float:
    _, _, s3 = _direct_sums(x, p, prec)
    s = math.sin(0.5 * x)
    c = math.cos(0.5 * x)
    return -c / (TWO_PI * s * s * s) + (4.0 / _PI) * s3


def _image_span(p: float, prec: SeriesPrecision) -> int:
    # images beyond rho*(2 pi k) ~ log(1/rel_tol) contribute below tolerance
    rho = _PI / p
    return max(2, int(math.log(1.0 / prec.rel_tol) / (rho * TWO_PI)) + 2)


def _h_modular(x: float, p: float, prec: SeriesPrecision) -> float:
    rho = _PI / p
    span = _image_span(p, prec)
    total = 0.0
    for n in range(-span, span + 1):
        a = 0.5 * rho * abs(x - TWO_PI * n)
        total += special._inv_sinh2(a)
    return 0.5 * _PI / (p * p) * total


def _hprime_modular(x: float, p: float, prec: SeriesPrecision) -> float:
    rho = _PI / p
    span = _image_span(p, prec)
    total = 0.0
    for n in range(-span, span + 1):
        d = x - TWO_PI * n
        a = 0.5 * rho * abs(d)
        s = math.exp(-2.0 * a)
        om = 1.0 - s
        mag = 4.0 * s * (1.0 + s) / (om * om * om)
        total += math.copysign(mag, d)
    return -0.5 * _PI * _PI / p ** 3 * total


def _h_double_prime(x: float, p: float, prec: SeriesPrecision) -> float:
    """d^2 H / dx^2, term-wise; needed by the kernel-evolution residual test."""
    x0 = _reduce_kernel_arg(x)
    if math.isinf(p) or p >= prec.switch_threshold:
        s = math.sin(0.5 * x0)
        c = math.cos(0.5 * x0)
        csc2 = 1.0 / (s * s)
        cot2 = (c * c) * csc2
        total = 0.25 / _PI * csc2 * (1.0 + 3.0 * cot2)
        if math.isinf(p):
            return total
        r = math.exp(-2.0 * p)
        rn = 1.0
        for n in range(1, prec.max_terms + 1):
            rn *= r
            w = rn / (1.0 - rn)
            total += (4.0 / _PI) * n ** 3 * math.cos(n * x0) * w
            if n ** 3 * w < 0.25 * prec.rel_tol:
                break
        return total
    rho = _PI / p
    span = _image_span(p, prec)
    total = 0.0
    for n in range(-span, span + 1):
        a = 0.5 * rho * abs(x0 - TWO_PI * n)
        s = math.exp(-2.0 * a)
        om = 1.0 - s
        csch2 = 4.0 * s / (om * om)
        coth = 1.0 + 2.0 * s / om
        total += csch2 * (3.0 * coth * coth - 1.0)
    return 0.25 * _PI ** 3 / p ** 4 * total


def excursion_kernel(
    x: float,
    p: float,
    prec: SeriesPrecision | None = None,
    representation: str = "auto",
) -> KernelValue:
    """Excursion Poisson kernel H(x, p) between two lower-boundary points."""
    prec = prec or DEFAULT_PRECISION
    p = check_modulus(p)
    x0 = _reduce_kernel_arg(x)
    if math.isinf(p):
        s = math.sin(0.5 * x0)
        return KernelValue(1.0 / (TWO_PI * s * s), DIRECT_SERIES)
    rep = _resolve_representation(representation, p, prec)
    if rep == DIRECT_SERIES:
        return KernelValue(_h_direct(x0, p, prec), rep)
    return KernelValue(_h_modular(x0, p, prec), rep)


def excursion_kernel_prime(
    x: float,
    p: float,
    prec: SeriesPrecision | None = None,
    representation: str = "auto",
) -> KernelValue:
    """dH/dx, term-wise derivative in the active representation."""
    prec = prec or DEFAULT_PRECISION
    p = check_modulus(p)
    x0 = _reduce_kernel_arg(x)
    if math.isinf(p):
        s = math.sin(0.5 * x0)
        c = math.cos(0.5 * x0)
        return KernelValue(-c / (TWO_PI * s * s * s), DIRECT_SERIES)
    rep = _resolve_representation(representation, p, prec)
    if rep == DIRECT_SERIES:
        return KernelValue(_hprime_direct(x0, p, prec), rep)
    return KernelValue(_hprime_modular(x0, p, prec), rep)


def partition_function(p, prec: SeriesPrecision | None = None) -> float:
    """Z(p) = (p/pi) * eta(i p/pi)^2."""
    prec = prec or DEFAULT_PRECISION
    p = check_modulus(p)
    if math.isinf(p):
        return 0.0
    e = dedekind_eta(p, prec)
    return (p / _PI) * e * e


def greens_function(
    z,
    z0,
    p,
    prec: SeriesPrecision | None = None,
    strict_interior: bool = False,
) -> float:
    """Dirichlet Green's function of the Laplacian on the cylinder.

    Closed form:

        G(z, z0) = -(1/pi) log| theta1((z-z0)/2pi) / theta1((z-conj(z0))/2pi) |
                   - Im(z) Im(z0) / (pi p)

    Only Re(z - z0) matters (translation invariance along the boundary).
    Boundary points evaluate to 0; with ``strict_interior`` they raise
    instead.
    """
    prec = prec or DEFAULT_PRECISION
    p = check_modulus(p, allow_infinite=False)
    z = complex(z)
    z0 = complex(z0)
    for w in (z, z0):
        if w.imag < -1e-15 or w.imag > p + 1e-15:
            raise DomainError(f"point {w} lies outside the cylinder of height {p}")
        if strict_interior and (w.imag <= 0.0 or w.imag >= p):
            raise DomainError(f"point {w} is not an interior point")
    if abs((z - z0).imag) < 1e-15 and abs(math.remainder((z - z0).real, TWO_PI)) < 1e-15:
        raise DomainError("coincident source and observation points")
    if z.imag == 0.0 or z0.imag == 0.0 or z.imag == p or z0.imag == p:
        return 0.0
    t_num = theta1((z - z0) / TWO_PI, p, prec)
    t_den = theta1((z - z0.conjugate()) / TWO_PI, p, prec)
    return -(1.0 / _PI) * math.log(abs(t_num) / abs(t_den)) - z.imag * z0.imag / (_PI * p)


# ---------------------------------------------------------------------------
# drift of the lifted difference process
# ---------------------------------------------------------------------------

def _h_ratio_modular(y: float, p: float, prec: SeriesPrecision) -> float:
    """H'(y,p)/H(y,p) from image sums scaled by the dominant image, so the
    ratio survives even when H itself underflows."""
    rho = _PI / p
    span = _image_span(p, prec)
    ks = range(-span, span + 1)
    a_abs = [0.5 * rho * abs(y - TWO_PI * k) for k in ks]
    a_min = min(a_abs)
    num = 0.0
    den = 0.0
    for k, aa in zip(ks, a_abs):
        sc = math.exp(-2.0 * (aa - a_min))
        s = math.exp(-2.0 * aa) if aa < 350.0 else 0.0
        om = 1.0 - s
        t = 4.0 * sc / (om * om)
        tp = 4.0 * sc * (1.0 + s) / (om * om * om)
        den += t
        num += tp if (y - TWO_PI * k) > 0.0 else -tp
    return -(rho) * num / den


def sde_drift(y: float, q: float, prec: SeriesPrecision | None = None) -> float:
    """Drift b(y, q) = v(y, q) + 2 H'(y, q)/H(y, q) of the lifted difference
    process at modulus q.

    Near the absorbing endpoints the drift behaves like -2/y and
    +2/(2*pi - y); both push a path into the nearer boundary.
    """
    prec = prec or DEFAULT_PRECISION
    q = check_modulus(q, allow_infinite=False)
    y = float(y)
    if not 0.0 < y < TWO_PI:
        raise DomainError(f"y = {y} outside the open interval (0, 2*pi)")
    if q >= prec.switch_threshold:
        v, _, _ = v_family(y, q, prec, DIRECT_SERIES)
        h = _h_direct(y, q, prec)
        hp = _hprime_direct(y, q, prec)
        return v + 2.0 * hp / h
    v, _, _ = v_family(y, q, prec, MODULAR_SERIES)
    return v + 2.0 * _h_ratio_modular(y, q, prec)
