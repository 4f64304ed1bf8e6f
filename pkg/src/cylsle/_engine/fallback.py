"""Pure-Python (numpy) engine, API-compatible with the compiled core.

The SDE integrator is vectorized across paths; each path carries its own
clock, so lanes advance with individual adaptive steps and are compacted
out as they are absorbed.  The walk sampler is a straightforward
per-attempt loop fed by blocked RNG draws; it is correct at any size but
hundreds of times slower than the compiled core (see the engine benchmark).
"""

from __future__ import annotations

import math

import numpy as np

from ..lattice import chronological_erase

_PI = math.pi
TWO_PI = 2.0 * math.pi
_U64 = (1 << 64) - 1


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & _U64, int(stream)]))


# ---------------------------------------------------------------------------
# vectorized drift
# ---------------------------------------------------------------------------

def _drift_direct_vec(y, q, rtol):
    half = 0.5 * y
    s = np.sin(half)
    c = np.cos(half)
    s2 = s * s
    v = c / s
    h = 1.0 / (TWO_PI * s2) - 1.0 / (_PI * q)
    hp = -c / (TWO_PI * s2 * s)
    r = np.exp(-2.0 * q)
    rn = np.ones_like(y)
    sin_x = np.sin(y)
    cos_x = np.cos(y)
    sn = np.zeros_like(y)
    cn = np.ones_like(y)
    n_terms = max(3, int(math.ceil(-math.log(0.25 * rtol) / (2.0 * float(q.min())))) + 1)
    for n in range(1, n_terms + 1):
        rn = rn * r
        w = rn / (1.0 - rn)
        sn, cn = sn * cos_x + cn * sin_x, cn * cos_x - sn * sin_x
        v = v + 4.0 * sn * w
        h = h - (4.0 / _PI) * n * cn * w
        hp = hp + (4.0 / _PI) * n * n * sn * w
    return v + 2.0 * hp / h


def _drift_modular_vec(y, q, rtol):
    rho = _PI / q
    flip = y > _PI
    yv = np.where(flip, TWO_PI - y, y)
    a = 0.5 * rho * yv
    e2 = np.exp(-2.0 * a)
    v = rho * (1.0 + 2.0 * e2 / (1.0 - e2)) - yv / q
    base_e = np.exp(-rho * (TWO_PI - yv))
    base_q = np.exp(-2.0 * _PI * rho)
    base_y = np.exp(-2.0 * rho * yv)
    en = np.ones_like(y)
    qn = np.ones_like(y)
    yn = np.ones_like(y)
    n_terms = max(4, int(math.ceil(-math.log(0.125 * rtol) / _PI)) + 1)
    for _ in range(n_terms):
        en = en * base_e
        qn = qn * base_q
        yn = yn * base_y
        v = v - 2.0 * rho * en * (1.0 - yn) / (1.0 - qn)
    v = np.where(flip, -v, v)

    amin = np.full_like(y, np.inf)
    for k in range(-6, 8):
        amin = np.minimum(amin, 0.5 * rho * np.abs(y - TWO_PI * k))
    num = np.zeros_like(y)
    den = np.zeros_like(y)
    for k in range(-6, 8):
        d = y - TWO_PI * k
        aa = 0.5 * rho * np.abs(d)
        sc = np.exp(-2.0 * (aa - amin))
        sv = np.exp(-2.0 * np.minimum(aa, 360.0))
        om = 1.0 - sv
        den = den + 4.0 * sc / (om * om)
        num = num + np.sign(d) * 4.0 * sc * (1.0 + sv) / (om * om * om)
    return v - 2.0 * rho * num / den


def drift_vec(y, q, switch_p, rtol):
    y = np.asarray(y, dtype=float)
    q = np.asarray(q, dtype=float)
    out = np.empty_like(y)
    m = q >= switch_p
    if m.any():
        out[m] = _drift_direct_vec(y[m], q[m], rtol)
    m = ~m
    if m.any():
        out[m] = _drift_modular_vec(y[m], q[m], rtol)
    return out


# ---------------------------------------------------------------------------
# SDE paths
# ---------------------------------------------------------------------------

def sde_counts(x0, p, dt_max, bfac, eps, teps, switch_p, rtol, seed, stream):
    rng = _rng(seed, stream)
    y = np.array(x0, dtype=float, copy=True)
    t = np.zeros_like(y)
    left = right = unres = 0
    while y.size:
        q = p - t
        timed_out = q <= teps
        if timed_out.any():
            yy = y[timed_out]
            left += int((yy >= TWO_PI - 10.0 * eps).sum())
            right += int((yy <= 10.0 * eps).sum())
            unres += int(((yy > 10.0 * eps) & (yy < TWO_PI - 10.0 * eps)).sum())
            keep = ~timed_out
            y, t = y[keep], t[keep]
            if not y.size:
                break
            q = p - t
        d = np.minimum(y, TWO_PI - y)
        dt = np.minimum(dt_max, np.minimum(bfac * d * d, 0.5 * q))
        b = drift_vec(y, q, switch_p, rtol)
        y = y + b * dt + np.sqrt(2.0 * dt) * rng.standard_normal(y.size)
        t = t + dt
        is_left = y >= TWO_PI - eps
        is_right = y <= eps
        left += int(is_left.sum())
        right += int(is_right.sum())
        keep = ~(is_left | is_right)
        y, t = y[keep], t[keep]
    return left, right, unres


# ---------------------------------------------------------------------------
# lattice walks
# ---------------------------------------------------------------------------

_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def lerw_counts(M, L, target, n_accept, step_budget, seed, stream):
    rng = _rng(seed, stream)
    used = 0
    accepted = 0
    nleft = 0
    buf = np.empty(0, dtype=np.uint8)
    ptr = 0
    out_of_budget = False
    while accepted < n_accept and not out_of_budget:
        x = 0
        yy = 1
        path = [(0, 0), (0, 1)]
        while True:
            if used >= step_budget:
                out_of_budget = True
                break
            if ptr >= buf.size:
                buf = rng.integers(0, 4, size=16384, dtype=np.uint8)
                ptr = 0
            dx, dy = _STEPS[buf[ptr]]
            ptr += 1
            used += 1
            x += dx
            yy += dy
            path.append((x, yy))
            if yy == 0 or yy == L:
                break
        if out_of_budget:
            break
        if yy != 0 or x % M != target:
            continue
        erased = chronological_erase(path, M)
        accepted += 1
        if erased[-1][0] - erased[0][0] < 0:
            nleft += 1
    return nleft, accepted, used
