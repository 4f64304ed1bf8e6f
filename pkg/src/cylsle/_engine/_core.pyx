# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: the lifted-process Euler-Maruyama integrator and
the lattice walk sampler with chronological loop erasure.

The drift evaluation mirrors kernels.sde_drift term for term (the parity is
asserted by the test suite); everything below runs without the GIL so the
drivers can fan samples out across threads.
"""

from libc.math cimport exp, log, sqrt, sin, cos, fabs, copysign, M_PI
from libc.stdlib cimport malloc, free, realloc
from libc.stdint cimport uint64_t, int64_t, int32_t, uint8_t

cdef double TWO_PI = 6.283185307179586476925286766559


# ---------------------------------------------------------------------------
# RNG: xoshiro256** seeded through splitmix64, Box-Muller normals
# ---------------------------------------------------------------------------

cdef struct rng_t:
    uint64_t s[4]
    double spare
    int has_spare


cdef inline uint64_t _splitmix64(uint64_t* state) nogil:
    cdef uint64_t z
    state[0] += <uint64_t>0x9E3779B97F4A7C15
    z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline void rng_seed(rng_t* r, uint64_t seed, uint64_t stream) nogil:
    cdef uint64_t sm = seed ^ (<uint64_t>0xD2B74407B1CE6E93 * (stream + 1))
    cdef int i
    for i in range(4):
        r.s[i] = _splitmix64(&sm)
    r.s[0] |= 1  # never all-zero
    r.spare = 0.0
    r.has_spare = 0


cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t rng_next(rng_t* r) nogil:
    cdef uint64_t result = _rotl(r.s[1] * 5, 7) * 9
    cdef uint64_t t = r.s[1] << 17
    r.s[2] ^= r.s[0]
    r.s[3] ^= r.s[1]
    r.s[1] ^= r.s[2]
    r.s[0] ^= r.s[3]
    r.s[2] ^= t
    r.s[3] = _rotl(r.s[3], 45)
    return result


cdef inline double rng_uniform(rng_t* r) nogil:
    # uniform on (0, 1]
    return ((rng_next(r) >> 11) + 1) * (1.0 / 9007199254740992.0)


cdef inline double rng_normal(rng_t* r) nogil:
    cdef double u1, u2, rad, ang
    if r.has_spare:
        r.has_spare = 0
        return r.spare
    u1 = rng_uniform(r)
    u2 = rng_uniform(r)
    rad = sqrt(-2.0 * log(u1))
    ang = TWO_PI * u2
    r.spare = rad * sin(ang)
    r.has_spare = 1
    return rad * cos(ang)


# ---------------------------------------------------------------------------
# drift b(y, q) = v + 2 H'/H
# ---------------------------------------------------------------------------

cdef double _drift_direct(double y, double q, double rtol) nogil:
    cdef double half = 0.5 * y
    cdef double s = sin(half)
    cdef double c = cos(half)
    cdef double s2 = s * s
    cdef double v = c / s
    cdef double h = 1.0 / (TWO_PI * s2) - 1.0 / (M_PI * q)
    cdef double hp = -c / (TWO_PI * s2 * s)
    cdef double r = exp(-2.0 * q)
    cdef double rn = 1.0
    cdef double sin_x = sin(y)
    cdef double cos_x = cos(y)
    cdef double sn = 0.0
    cdef double cn = 1.0
    cdef double w, t
    cdef int n = 0
    while True:
        n += 1
        rn *= r
        w = rn / (1.0 - rn)
        t = sn * cos_x + cn * sin_x
        cn = cn * cos_x - sn * sin_x
        sn = t
        v += 4.0 * sn * w
        h -= (4.0 / M_PI) * n * cn * w
        hp += (4.0 / M_PI) * n * n * sn * w
        if n * n * w < 0.25 * rtol or n > 400:
            break
    return v + 2.0 * hp / h


cdef double _drift_modular(double y, double q, double rtol) nogil:
    cdef double rho = M_PI / q
    # v(y, q): reflect into (0, pi] for geometric convergence, v is odd
    cdef double yv = y
    cdef double sgn = 1.0
    if yv > M_PI:
        yv = TWO_PI - yv
        sgn = -1.0
    cdef double a = 0.5 * rho * yv
    cdef double e2 = exp(-2.0 * a)
    cdef double v = rho * (1.0 + 2.0 * e2 / (1.0 - e2)) - yv / q
    cdef double base_e = exp(-rho * (TWO_PI - yv))
    cdef double base_q = exp(-2.0 * M_PI * rho)
    cdef double base_y = exp(-2.0 * rho * yv)
    cdef double en = 1.0, qn = 1.0, yn = 1.0
    cdef int n = 0
    while True:
        n += 1
        en *= base_e
        qn *= base_q
        yn *= base_y
        v -= 4.0 * rho * 0.5 * en * (1.0 - yn) / (1.0 - qn)
        if rho * en < 0.125 * rtol or n > 400:
            break
    v *= sgn
    # H'/H from scaled image sums (survives underflow of H itself)
    cdef double amin = 1e308
    cdef double aa
    cdef int k
    for k in range(-6, 8):
        aa = 0.5 * rho * fabs(y - TWO_PI * k)
        if aa < amin:
            amin = aa
    cdef double num = 0.0, den = 0.0, d, sc, sv, om, tk, tpk
    cdef double logtol = -log(rtol) + 5.0
    for k in range(-6, 8):
        d = y - TWO_PI * k
        aa = 0.5 * rho * fabs(d)
        if 2.0 * (aa - amin) > logtol:
            continue
        sc = exp(-2.0 * (aa - amin))
        sv = exp(-2.0 * aa) if aa < 350.0 else 0.0
        om = 1.0 - sv
        tk = 4.0 * sc / (om * om)
        tpk = 4.0 * sc * (1.0 + sv) / (om * om * om)
        den += tk
        num += tpk if d > 0.0 else -tpk
    return v - 2.0 * rho * num / den


cdef inline double _drift(double y, double q, double switch_p, double rtol) nogil:
    if q >= switch_p:
        return _drift_direct(y, q, rtol)
    return _drift_modular(y, q, rtol)


def drift_eval(double y, double q, double switch_p, double rtol):
    """Scalar drift evaluation (exposed for parity tests and benchmarks)."""
    return _drift(y, q, switch_p, rtol)


# ---------------------------------------------------------------------------
# Euler-Maruyama paths of the lifted difference process
# ---------------------------------------------------------------------------

cdef int _one_path(double y, double p, double dt_max, double bfac,
                   double eps, double teps, double switch_p, double rtol,
                   rng_t* r) nogil:
    """0 = absorbed at 0 (right passage), 1 = absorbed at 2*pi (left),
    2 = unresolved at the time cap."""
    cdef double t = 0.0
    cdef double q, d, dt, b
    cdef long steps = 0
    while True:
        q = p - t
        if q <= teps:
            if y >= TWO_PI - 10.0 * eps:
                return 1
            if y <= 10.0 * eps:
                return 0
            return 2
        d = y if y < TWO_PI - y else TWO_PI - y
        dt = dt_max
        if bfac * d * d < dt:
            dt = bfac * d * d
        if 0.5 * q < dt:
            dt = 0.5 * q
        b = _drift(y, q, switch_p, rtol)
        y += b * dt + sqrt(2.0 * dt) * rng_normal(r)
        t += dt
        if y <= eps:
            return 0
        if y >= TWO_PI - eps:
            return 1
        steps += 1
        if steps > 200000000:
            return 2


def sde_counts(double[::1] x0, double p, double dt_max, double bfac,
               double eps, double teps, double switch_p, double rtol,
               uint64_t seed, uint64_t stream):
    """Run one path per entry of x0; returns (n_left, n_right, n_unresolved)."""
    cdef long n = x0.shape[0]
    cdef long i
    cdef long left = 0, right = 0, unres = 0
    cdef int res
    cdef rng_t rng
    rng_seed(&rng, seed, stream)
    with nogil:
        for i in range(n):
            res = _one_path(x0[i], p, dt_max, bfac, eps, teps, switch_p,
                            rtol, &rng)
            if res == 1:
                left += 1
            elif res == 0:
                right += 1
            else:
                unres += 1
    return left, right, unres


# ---------------------------------------------------------------------------
# lattice walks with chronological loop erasure
# ---------------------------------------------------------------------------

cdef struct erase_t:
    int32_t* idx        # site key -> position in output, -1 if absent
    int64_t* outx       # unwrapped x, recomputed along the erased path
    int32_t* outy
    int32_t* outk
    int top


cdef int64_t _erase_run(erase_t* e, uint8_t* dirs, long nsteps, int M, int L,
                        int64_t* dx_tab, int64_t* dy_tab) nogil:
    """Replay a recorded walk ((0,0) -> (0,1) -> dirs...), erase loops
    chronologically, return the erased path's net unwrapped displacement.
    The occupancy table is left fully cleared."""
    cdef int top = 0
    cdef int32_t xw = 0
    cdef int32_t yy = 0
    cdef int32_t k
    cdef int64_t dx
    cdef int32_t dy
    cdef long i
    cdef int j, m
    e.idx[0] = 0
    e.outx[0] = 0
    e.outy[0] = 0
    e.outk[0] = 0
    # first move is the forced step (0,0) -> (0,1); then the recorded ones
    cdef long step = -1
    while step < nsteps:
        if step < 0:
            dx = 0
            dy = 1
        else:
            dx = dx_tab[dirs[step]]
            dy = <int32_t>dy_tab[dirs[step]]
        step += 1
        xw += <int32_t>dx
        if xw == M:
            xw = 0
        elif xw < 0:
            xw = M - 1
        yy += dy
        k = yy * M + xw
        if e.idx[k] >= 0:
            j = e.idx[k]
            for m in range(j + 1, top + 1):
                e.idx[e.outk[m]] = -1
            top = j
        else:
            top += 1
            e.outx[top] = e.outx[top - 1] + dx
            e.outy[top] = yy
            e.outk[top] = k
            e.idx[k] = top
    cdef int64_t disp = e.outx[top]
    for m in range(top + 1):
        e.idx[e.outk[m]] = -1
    e.top = top
    return disp


def lerw_counts(int M, int L, long target, long n_accept, long long step_budget,
                uint64_t seed, uint64_t stream):
    """Sample walks from (0,0) conditioned (by rejection) to exit at
    (target, 0); loop-erase the accepted ones and count negative net
    displacement.  Returns (n_left, n_accepted, steps_used)."""
    cdef rng_t rng
    rng_seed(&rng, seed, stream)

    cdef int64_t dx_tab[4]
    cdef int64_t dy_tab[4]
    dx_tab[0] = 1; dy_tab[0] = 0
    dx_tab[1] = -1; dy_tab[1] = 0
    dx_tab[2] = 0; dy_tab[2] = 1
    dx_tab[3] = 0; dy_tab[3] = -1

    cdef long cap = 1 << 16
    cdef uint8_t* dirs = <uint8_t*>malloc(cap)
    cdef int nsites = M * (L + 1)
    cdef erase_t er
    er.idx = <int32_t*>malloc(nsites * sizeof(int32_t))
    er.outx = <int64_t*>malloc((nsites + 2) * sizeof(int64_t))
    er.outy = <int32_t*>malloc((nsites + 2) * sizeof(int32_t))
    er.outk = <int32_t*>malloc((nsites + 2) * sizeof(int32_t))
    if dirs == NULL or er.idx == NULL or er.outx == NULL or er.outy == NULL or er.outk == NULL:
        free(dirs); free(er.idx); free(er.outx); free(er.outy); free(er.outk)
        raise MemoryError("lerw buffers")
    cdef int i
    for i in range(nsites):
        er.idx[i] = -1

    cdef long long used = 0
    cdef long accepted = 0, nleft = 0
    cdef long nsteps
    cdef int xw, yy, dcode
    cdef uint64_t bits
    cdef int navail
    cdef int64_t disp
    cdef bint out_of_budget = 0
    cdef uint8_t* grown

    with nogil:
        while accepted < n_accept:
            # one attempt: walk from (0,1) until absorbed on y=0 or y=L
            nsteps = 0
            xw = 0
            yy = 1
            navail = 0
            bits = 0
            while True:
                if used >= step_budget:
                    out_of_budget = 1
                    break
                if navail == 0:
                    bits = rng_next(&rng)
                    navail = 32
                dcode = <int>(bits & 3)
                bits >>= 2
                navail -= 1
                if nsteps >= cap:
                    with gil:
                        grown = <uint8_t*>realloc(dirs, cap * 2)
                        if grown == NULL:
                            free(dirs); free(er.idx); free(er.outx); free(er.outy); free(er.outk)
                            raise MemoryError("lerw path buffer")
                        dirs = grown
                        cap *= 2
                dirs[nsteps] = <uint8_t>dcode
                nsteps += 1
                used += 1
                xw += <int>dx_tab[dcode]
                if xw == M:
                    xw = 0
                elif xw < 0:
                    xw = M - 1
                yy += <int>dy_tab[dcode]
                if yy == 0 or yy == L:
                    break
            if out_of_budget:
                break
            if yy != 0 or xw != target:
                continue
            disp = _erase_run(&er, dirs, nsteps, M, L, dx_tab, dy_tab)
            accepted += 1
            if disp < 0:
                nleft += 1

    free(dirs)
    free(er.idx)
    free(er.outx)
    free(er.outy)
    free(er.outk)
    return nleft, accepted, used


def erase_displacement(int64_t[::1] xs, int64_t[::1] ys, int M):
    """Loop-erase an explicit site path (unwrapped x, y) and return the net
    displacement of the erased path (exposed for parity tests)."""
    cdef long n = xs.shape[0]
    if n < 2:
        raise ValueError("path too short")
    cdef long i
    cdef int L = 0
    for i in range(n):
        if ys[i] > L:
            L = <int>ys[i]
    cdef int nsites = M * (L + 1)
    cdef erase_t er
    er.idx = <int32_t*>malloc(nsites * sizeof(int32_t))
    er.outx = <int64_t*>malloc((nsites + 2) * sizeof(int64_t))
    er.outy = <int32_t*>malloc((nsites + 2) * sizeof(int32_t))
    er.outk = <int32_t*>malloc((nsites + 2) * sizeof(int32_t))
    cdef uint8_t* dirs = <uint8_t*>malloc(n if n > 1 else 1)
    if dirs == NULL or er.idx == NULL or er.outx == NULL or er.outy == NULL or er.outk == NULL:
        free(dirs); free(er.idx); free(er.outx); free(er.outy); free(er.outk)
        raise MemoryError("erase buffers")
    for i in range(nsites):
        er.idx[i] = -1

    cdef int64_t dx_tab[4]
    cdef int64_t dy_tab[4]
    dx_tab[0] = 1; dy_tab[0] = 0
    dx_tab[1] = -1; dy_tab[1] = 0
    dx_tab[2] = 0; dy_tab[2] = 1
    dx_tab[3] = 0; dy_tab[3] = -1

    # encode the given path as direction codes; sites[1] must be (0,1)-like
    cdef int64_t dx, dy
    cdef long nsteps = 0
    cdef bint bad = 0
    if xs[1] - xs[0] != 0 or ys[1] - ys[0] != 1:
        bad = 1
    for i in range(1, n - 1):
        dx = xs[i + 1] - xs[i]
        dy = ys[i + 1] - ys[i]
        if dx == 1 and dy == 0:
            dirs[nsteps] = 0
        elif dx == -1 and dy == 0:
            dirs[nsteps] = 1
        elif dx == 0 and dy == 1:
            dirs[nsteps] = 2
        elif dx == 0 and dy == -1:
            dirs[nsteps] = 3
        else:
            bad = 1
            break
        nsteps += 1
    if bad:
        free(dirs); free(er.idx); free(er.outx); free(er.outy); free(er.outk)
        raise ValueError("path is not a unit-step walk starting (x0,0)->(x0,1)")
    cdef int64_t disp = _erase_run(&er, dirs, nsteps, M, L, dx_tab, dy_tab)
    free(dirs)
    free(er.idx)
    free(er.outx)
    free(er.outy)
    free(er.outk)
    return disp
