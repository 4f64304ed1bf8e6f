"""Theta-type special functions on the cylinder of circumference 2*pi.

The central object is the velocity field

    v(x, p) = cot(x/2) + 4 * sum_{n>=1} sin(n x) / (exp(2 n p) - 1),

the logarithmic derivative of the odd Jacobi theta function at modular
parameter i*p/pi.  All series here exist in two representations: the direct
one above (fast for large p) and a modular-transformed one (fast for small
p), with the switch governed by the precision policy.  Derivatives are
always evaluated by term-wise differentiation, never by finite differences.

For a modulus below the switch threshold the real-argument forms used are

    v(x, p)  = (pi/p) coth(pi x / 2p) - x/p
               - (4 pi/p) sum_n sinh(n pi x/p) / (exp(2 n pi^2/p) - 1)

(valid for 0 < x <= pi; the other half interval follows from oddness), and
the hyperbolic terms are computed from decaying exponentials only, so the
evaluation stays stable for arbitrarily small moduli.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .precision import (
    DEFAULT_PRECISION,
    TWO_PI,
    DomainError,
    PrecisionError,
    SeriesPrecision,
    check_modulus,
    reduce_angle,
)

_PI = math.pi

# Representation tags (also used by the kernels module).
DIRECT_SERIES = "direct_series"
MODULAR_SERIES = "modular_series"


def _resolve_representation(representation: str, p: float, prec: SeriesPrecision) -> str:
    if representation == "auto":
        return MODULAR_SERIES if p < prec.switch_threshold else DIRECT_SERIES
    if representation in (DIRECT_SERIES, MODULAR_SERIES):
        return representation
    raise DomainError(f"unknown representation {representation!r}")


# ---------------------------------------------------------------------------
# stable hyperbolic helpers (argument a > 0; exp underflow is harmless)
# ---------------------------------------------------------------------------

def _coth(a: float) -> float:
    s = math.exp(-2.0 * a)
    return 1.0 + 2.0 * s / (1.0 - s)


def _inv_sinh2(a: float) -> float:
    s = math.exp(-2.0 * a)
    om = 1.0 - s
    return 4.0 * s / (om * om)


# ---------------------------------------------------------------------------
# theta_1
# ---------------------------------------------------------------------------

def _theta1_direct(z: complex, p: float, prec: SeriesPrecision) -> complex:
    # theta_1(z | ip/pi) = 2 sum_{n>=0} (-1)^n e^{-p(n+1/2)^2} sin((2n+1) pi z)
    # Terms are assembled from single exponentials so that large imaginary
    # parts cannot overflow inside sin().
    ay = abs(z.imag)
    peak = _PI * _PI * ay * ay / p  # max term exponent over n
    if peak > 690.0:
        raise PrecisionError(
            "theta1 argument too far from the real axis for double precision"
        )
    acc = 0.0 + 0.0j
    sign = 1.0
    below = 0
    n_peak = max(0.0, (2.0 * _PI * ay / p - 1.0) / 2.0)
    for n in range(prec.max_terms):
        g = -p * (n + 0.5) * (n + 0.5)
        w = (2 * n + 1) * _PI
        # -i * (e^{g + i w z} - e^{g - i w z}) = 2 e^g sin(w z)
        term = -1j * (cmath.exp(g + 1j * w * z) - cmath.exp(g - 1j * w * z))
        acc += sign * term
        sign = -sign
        bound = 2.0 * math.exp(g + w * ay)
        if n > n_peak and bound <= prec.rel_tol * max(abs(acc), 1e-300):
            below += 1
            if below >= 2:
                return acc
        else:
            below = 0
    raise PrecisionError("theta1 series did not converge within max_terms")


def theta1(z, p, prec: SeriesPrecision | None = None, representation: str = "auto") -> complex:
    """Jacobi theta_1(z | i p / pi); z uses the unit-periodicity convention.

    For p below the switch threshold the modular transform

        theta_1(z | ip/pi) = -i sqrt(pi/p) exp(-pi^2 z^2 / p)
                             * theta_1(i pi z / p | i pi / p)

    is applied so the series always converges geometrically.
    """
    prec = prec or DEFAULT_PRECISION
    p = check_modulus(p)
    if math.isinf(p):
        return complex(0.0)
    z = complex(z)
    rep = _resolve_representation(representation, p, prec)
    if rep == DIRECT_SERIES:
        return _theta1_direct(z, p, prec)
    pref = -1j * math.sqrt(_PI / p) * cmath.exp(-_PI * _PI * z * z / p)
    return pref * _theta1_direct(1j * _PI * z / p, _PI * _PI / p, prec)


# ---------------------------------------------------------------------------
# velocity field: real-argument family (v, v', v'')
# ---------------------------------------------------------------------------

def _direct_sums(x: float, p: float, prec: SeriesPrecision) -> tuple[float, float, float]:
    """s1 = sum sin(nx) w_n, s2 = sum n cos(nx) w_n, s3 = sum n^2 sin(nx) w_n
    with w_n = 1/(e^{2np} - 1)."""
    r = math.exp(-2.0 * p)
    rn = 1.0
    sin_x = math.sin(x)
    cos_x = math.cos(x)
    sn = 0.0
    cn = 1.0
    s1 = s2 = s3 = 0.0
    below = 0
    for n in range(1, prec.max_terms + 1):
        rn *= r
        w = rn / (1.0 - rn)
        sn, cn = sn * cos_x + cn * sin_x, cn * cos_x - sn * sin_x
        s1 += sn * w
        s2 += n * cn * w
        s3 += n * n * sn * w
        if n * n * w <= 0.25 * prec.rel_tol:
            below += 1
            if below >= 2:
                return s1, s2, s3
        else:
            below = 0
    raise PrecisionError("velocity-field series did not converge within max_terms")


def _modular_pieces(x: float, p: float, prec: SeriesPrecision):
    """Modular-series building blocks for 0 < x <= pi.

    Returns (C, Sig0, S1, S2, S3) where C = coth(rho x/2),
    Sig0 = 1/sinh^2(rho x/2), and

        S1 = sum sinh(n rho x) / (e^{2 pi n rho} - 1)
        S2 = sum n cosh(n rho x) / (e^{2 pi n rho} - 1)
        S3 = sum n^2 sinh(n rho x) / (e^{2 pi n rho} - 1)

    with rho = pi/p, all assembled from decaying exponentials.
    """
    rho = _PI / p
    a = 0.5 * rho * x
    C = _coth(a)
    sig0 = _inv_sinh2(a)
    base_e = math.exp(-rho * (TWO_PI - x))
    base_q = math.exp(-2.0 * _PI * rho)
    base_y = math.exp(-2.0 * rho * x)
    en = qn = yn = 1.0
    s1 = s2 = s3 = 0.0
    below = 0
    for n in range(1, prec.max_terms + 1):
        en *= base_e
        qn *= base_q
        yn *= base_y
        d = 1.0 - qn
        s1 += 0.5 * en * (1.0 - yn) / d
        s2 += n * 0.5 * en * (1.0 + yn) / d
        s3 += n * n * 0.5 * en * (1.0 - yn) / d
        if n * n * en <= 0.25 * prec.rel_tol:
            below += 1
            if below >= 2:
                return C, sig0, s1, s2, s3
        else:
            below = 0
    raise PrecisionError("modular velocity series did not converge within max_terms")


def _reduce_nonpole(x: float) -> tuple[float, str]:
    x0, _ = reduce_angle(x)
    if x0 == 0.0:
        raise DomainError(f"x = {x} is congruent to 0 mod 2*pi (pole)")
    return x0, ""


def v_family(
    x: float,
    p: float,
    prec: SeriesPrecision | None = None,
    representation: str = "auto",
) -> tuple[float, float, float]:
    """(v, v', v'') at a real boundary coordinate, 2*pi-periodic in x."""
    prec = prec or DEFAULT_PRECISION
    p = check_modulus(p)
    x0, _ = _reduce_nonpole(float(x))
    if math.isinf(p):
        half = 0.5 * x0
        s = math.sin(half)
        c = math.cos(half)
        cot = c / s
        csc2 = 1.0 / (s * s)
        return cot, -0.5 * csc2, 0.5 * cot * csc2
    rep = _resolve_representation(representation, p, prec)
    if rep == DIRECT_SERIES:
        s1, s2, s3 = _direct_sums(x0, p, prec)
        half = 0.5 * x0
        s = math.sin(half)
        c = math.cos(half)
        cot = c / s
        csc2 = 1.0 / (s * s)
        return (
            cot + 4.0 * s1,
            -0.5 * csc2 + 4.0 * s2,
            0.5 * cot * csc2 - 4.0 * s3,
        )
    sgn = 1.0
    xr = x0
    if xr > _PI:
        xr = TWO_PI - xr
        sgn = -1.0
    rho = _PI / p
    C, sig0, s1, s2, s3 = _modular_pieces(xr, p, prec)
    v = sgn * (rho * C - xr / p - 4.0 * rho * s1)
    vp = -0.5 * rho * rho * sig0 - 1.0 / p - 4.0 * rho * rho * s2
    vpp = sgn * (0.5 * rho ** 3 * C * sig0 - 4.0 * rho ** 3 * s3)
    return v, vp, vpp


# ---------------------------------------------------------------------------
# velocity field: complex arguments (needed by the modular identity and the
# Green's function machinery); order = 0, 1, 2 for v, v', v''
# ---------------------------------------------------------------------------

def _v_direct_complex(z: complex, p: float, prec: SeriesPrecision, order: int) -> complex:
    ay = abs(z.imag)
    if ay >= 2.0 * p - 1e-9:
        raise PrecisionError(
            f"v series requires |Im z| < 2p; got |Im z| = {ay}, p = {p}"
        )
    half = 0.5 * z
    s = cmath.sin(half)
    if s == 0:
        raise DomainError("z congruent to 0 mod 2*pi (pole of v)")
    c = cmath.cos(half)
    if order == 0:
        acc = c / s
    elif order == 1:
        acc = -0.5 / (s * s)
    else:
        acc = 0.5 * c / (s * s * s)
    below = 0
    for n in range(1, prec.max_terms + 1):
        e = math.exp(-2.0 * n * p)
        d = 1.0 - e
        # sin(nz) * e / d and cos(nz) * e / d from single exponentials
        ep = cmath.exp(1j * n * z - 2.0 * n * p)
        em = cmath.exp(-1j * n * z - 2.0 * n * p)
        if order == 0:
            acc += 4.0 * (ep - em) / (2j * d)
        elif order == 1:
            acc += 4.0 * n * (ep + em) / (2.0 * d)
        else:
            acc -= 4.0 * n * n * (ep - em) / (2j * d)
        bound = 4.0 * n * n * math.exp(n * (ay - 2.0 * p)) / d
        if bound <= prec.rel_tol * max(abs(acc), 1e-300):
            below += 1
            if below >= 2:
                return acc
        else:
            below = 0
    raise PrecisionError("complex velocity series did not converge within max_terms")


def _v_complex(z: complex, p: float, prec: SeriesPrecision, representation: str, order: int) -> complex:
    rep = _resolve_representation(representation, p, prec)
    if rep == DIRECT_SERIES:
        return _v_direct_complex(z, p, prec, order)
    # order-0 modular identity; derivatives follow by differentiating it
    pp = _PI * _PI / p
    w = 1j * _PI * z / p
    scale = 1j * _PI / p
    if order == 0:
        return scale * _v_direct_complex(w, pp, prec, 0) - z / p
    if order == 1:
        return scale * scale * _v_direct_complex(w, pp, prec, 1) - 1.0 / p
    return scale ** 3 * _v_direct_complex(w, pp, prec, 2)


def _v_any(z, p, prec, representation, order):
    prec = prec or DEFAULT_PRECISION
    p = check_modulus(p)
    if isinstance(z, complex) and z.imag != 0.0:
        if math.isinf(p):
            half = 0.5 * z
            s = cmath.sin(half)
            c = cmath.cos(half)
            if order == 0:
                return c / s
            if order == 1:
                return -0.5 / (s * s)
            return 0.5 * c / (s * s * s)
        return _v_complex(z, p, prec, representation, order)
    x = z.real if isinstance(z, complex) else float(z)
    return v_family(x, p, prec, representation)[order]


def v_field(z, p, prec: SeriesPrecision | None = None, representation: str = "auto"):
    """Velocity field v(z, p); complex z supported, float returned for real z."""
    return _v_any(z, p, prec, representation, 0)


def v_prime(z, p, prec: SeriesPrecision | None = None, representation: str = "auto"):
    """dv/dz, term-wise derivative of the defining series."""
    return _v_any(z, p, prec, representation, 1)


def v_double_prime(z, p, prec: SeriesPrecision | None = None, representation: str = "auto"):
    """d^2 v/dz^2, term-wise derivative of the defining series."""
    return _v_any(z, p, prec, representation, 2)


# ---------------------------------------------------------------------------
# Dedekind eta
# ---------------------------------------------------------------------------

def _eta_direct(p: float, prec: SeriesPrecision) -> float:
    q = math.exp(-2.0 * p)
    acc = 1.0
    qn = 1.0
    below = 0
    for _ in range(prec.max_terms):
        qn *= q
        acc *= 1.0 - qn
        if qn <= 0.5 * prec.rel_tol:
            below += 1
            if below >= 2:
                return math.exp(-p / 12.0) * acc
        else:
            below = 0
    raise PrecisionError("eta product did not converge within max_terms")


def dedekind_eta(p, prec: SeriesPrecision | None = None, representation: str = "auto") -> float:
    """Dedekind eta(i p / pi) = e^{-p/12} prod_{n>=1} (1 - e^{-2np}).

    Small moduli go through eta(tau) = eta(-1/tau)/sqrt(-i tau), i.e.
    eta(ip/pi) = sqrt(pi/p) * eta(i pi / p).
    """
    prec = prec or DEFAULT_PRECISION
    p = check_modulus(p)
    if math.isinf(p):
        return 0.0
    rep = _resolve_representation(representation, p, prec)
    if rep == DIRECT_SERIES:
        return _eta_direct(p, prec)
    return math.sqrt(_PI / p) * _eta_direct(_PI * _PI / p, prec)


# ---------------------------------------------------------------------------
# Gauss hypergeometric 2F1 for the half-plane passage formula
# ---------------------------------------------------------------------------

_LEG_NODES, _LEG_WEIGHTS = np.polynomial.legendre.leggauss(48)


def _rgamma(t: float) -> float:
    if t <= 0.0 and abs(t - round(t)) < 1e-12:
        return 0.0
    return 1.0 / math.gamma(t)


def _gauss_series(a: float, b: float, c: float, w: float, prec: SeriesPrecision) -> float:
    term = 1.0
    acc = 1.0
    below = 0
    for n in range(prec.max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * w
        acc += term
        if abs(term) <= prec.rel_tol * max(abs(acc), 1e-300):
            below += 1
            if below >= 2:
                return acc
        else:
            below = 0
    raise PrecisionError("2F1 series did not converge within max_terms")


def _f_half_family_integral(b: float, z: float) -> float:
    # 2F1(1/2, b; 3/2; -u^2) = (1/u) * integral_0^u (1+t^2)^(-b) dt
    u = math.sqrt(-z)
    edges = [0.0, min(1.0, u)]
    while edges[-1] < u:
        edges.append(min(2.0 * edges[-1], u))
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        hw = 0.5 * (hi - lo)
        t = mid + hw * _LEG_NODES
        total += hw * float(np.sum(_LEG_WEIGHTS * (1.0 + t * t) ** (-b)))
    return total / u


def _2f1_inversion(a: float, b: float, c: float, z: float, prec: SeriesPrecision) -> float:
    # DLMF 15.8.2 for z < -1; requires b - a non-integral (guarded by caller).
    w = 1.0 / z
    gc = math.gamma(c)
    t1 = (
        gc * math.gamma(b - a) * _rgamma(b) * _rgamma(c - a)
        * (-z) ** (-a)
        * _gauss_series(a, a - c + 1.0, a - b + 1.0, w, prec)
    )
    t2 = (
        gc * math.gamma(a - b) * _rgamma(a) * _rgamma(c - b)
        * (-z) ** (-b)
        * _gauss_series(b, b - c + 1.0, b - a + 1.0, w, prec)
    )
    return t1 + t2


def hypergeom_2f1(a: float, b: float, c: float, z: float, prec: SeriesPrecision | None = None) -> float:
    """Gauss 2F1(a, b; c; z) for real parameters and z <= 0.99.

    Negative arguments are mapped into [0, 1) by the Pfaff transformation
    2F1(a,b;c;z) = (1-z)^(-b) 2F1(c-a, b; c; z/(z-1)).  Large negative
    arguments (z < -25, where the Pfaff series degrades) are handled by the
    1/z connection formula, or by the integral form
    2F1(1/2, b; 3/2; -u^2) = (1/u) int_0^u (1+t^2)^(-b) dt for the
    passage-formula parameter family.
    """
    prec = prec or DEFAULT_PRECISION
    if c <= 0.0 and abs(c - round(c)) < 1e-12:
        raise DomainError(f"c = {c} is a non-positive integer (pole of 2F1)")
    if z > 0.99:
        raise DomainError(f"argument z = {z} > 0.99 is unsupported")
    if z == 0.0:
        return 1.0
    if z > 0.0:
        return _gauss_series(a, b, c, z, prec)
    if z >= -25.0:
        w = z / (z - 1.0)
        return (1.0 - z) ** (-b) * _gauss_series(c - a, b, c, w, prec)
    if abs(a - 0.5) < 1e-12 and abs(c - 1.5) < 1e-12:
        return _f_half_family_integral(b, z)
    if abs((b - a) - round(b - a)) > 1e-8:
        return _2f1_inversion(a, b, c, z, prec)
    raise PrecisionError(
        "2F1 with integral b-a is not supported for z < -25 outside the "
        "(a, c) = (1/2, 3/2) family"
    )
