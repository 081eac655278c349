# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integration kernel (Dormand-Prince 5(4) and classical RK4).

Same algorithm, same operation order and same status codes as ``_pure.py``.
"""
import numpy as np

from libc.math cimport sqrt, fabs, cos, sin, atan, ceil, pow, M_PI

cdef int OK = 0, MAX_STEPS = 1, OVERFLOW = 2, UNDERFLOW = 3
cdef double BIG = 1e150

cdef double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9
cdef double A21 = 1.0 / 5
cdef double A31 = 3.0 / 40, A32 = 9.0 / 40
cdef double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9
cdef double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729
cdef double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176
cdef double A65 = -5103.0 / 18656
cdef double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784
cdef double B6 = 11.0 / 84
cdef double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200
cdef double E6 = 22.0 / 525, E7 = -1.0 / 40


cdef struct Prog:
    int kind
    double p[6]
    const double *coef
    int ncoef
    double sx, sy, level, s2x, s2y
    const double *ks
    const double *ab
    int K
    double mx, my, omega


cdef inline double norm2(double x, double y) noexcept nogil:
    cdef double m = fabs(x) if fabs(x) > fabs(y) else fabs(y)
    if m > 1e150:
        return m * sqrt((x / m) * (x / m) + (y / m) * (y / m))
    return sqrt(x * x + y * y)


cdef inline double blend(double a, double R, double inv) noexcept nogil:
    cdef double w
    if a <= R:
        return 1.0
    if a >= 2.0 * R:
        return inv
    w = 0.5 * (1.0 - cos(M_PI * (a - R) / R))
    return 1.0 + (inv - 1.0) * w


cdef inline void rhs(const Prog *P, double t, double x, double y,
                     double *ox, double *oy) noexcept nogil:
    cdef double hx, hy, ar, ai, wr, wi, tr, s, f, arg, c, sn
    cdef int i
    if P.kind == 0:
        wr = x
        wi = -y
        ar = P.coef[2 * (P.ncoef - 1)]
        ai = P.coef[2 * (P.ncoef - 1) + 1]
        for i in range(P.ncoef - 2, -1, -1):
            tr = ar * wr - ai * wi
            ai = ar * wi + ai * wr
            ar = tr + P.coef[2 * i]
            ai = ai + P.coef[2 * i + 1]
        hx = ar
        hy = ai
    elif P.kind == 1:
        s = P.p[0] / (1.0 + norm2(x, y))
        hx = s * x
        hy = s * y
    elif P.kind == 2:
        hx = P.p[0] * atan(x)
        hy = P.p[1] * atan(y)
    else:
        hx = P.p[0] * x + P.p[1] * y + P.p[4]
        hy = P.p[2] * x + P.p[3] * y + P.p[5]
    hx += P.sx
    hy += P.sy
    if P.level > 0.0:
        s = norm2(hx, hy)
        if s > P.level:
            f = blend(s, P.level, P.level / s)
            hx *= f
            hy *= f
    hx += P.s2x
    hy += P.s2y
    tr = P.mx
    s = P.my
    for i in range(P.K):
        arg = P.ks[i] * P.omega * t
        c = cos(arg)
        sn = sin(arg)
        tr += P.ab[4 * i] * c + P.ab[4 * i + 2] * sn
        s += P.ab[4 * i + 1] * c + P.ab[4 * i + 3] * sn
    ox[0] = hx + tr
    oy[0] = hy + s


cdef inline bint bad(double x, double y) noexcept nogil:
    return not (fabs(x) < BIG and fabs(y) < BIG)


cdef inline double sq(double v) noexcept nogil:
    return v * v


cdef class _Rec:
    cdef list ts, xs, ys

    def __init__(self):
        self.ts = []
        self.xs = []
        self.ys = []

    cdef void add(self, double t, double x, double y):
        self.ts.append(t)
        self.xs.append(x)
        self.ys.append(y)


cdef int rk4(const Prog *P, double T, double x, double y, double h, long max_steps,
             _Rec rec, double *out, long *nacc):
    cdef long n, i
    cdef double hh, t, k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y
    n = <long> ceil(T / h - 1e-9)
    if n < 1:
        n = 1
    out[0] = x
    out[1] = y
    nacc[0] = 0
    if n > max_steps:
        return MAX_STEPS
    hh = T / n
    for i in range(n):
        t = i * hh
        rhs(P, t, x, y, &k1x, &k1y)
        rhs(P, t + 0.5 * hh, x + 0.5 * hh * k1x, y + 0.5 * hh * k1y, &k2x, &k2y)
        rhs(P, t + 0.5 * hh, x + 0.5 * hh * k2x, y + 0.5 * hh * k2y, &k3x, &k3y)
        rhs(P, t + hh, x + hh * k3x, y + hh * k3y, &k4x, &k4y)
        x = x + hh / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        y = y + hh / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        if bad(x, y):
            nacc[0] = i
            return OVERFLOW
        out[0] = x
        out[1] = y
        if rec is not None and i < n - 1:
            rec.add((i + 1) * hh, x, y)
    if rec is not None:
        rec.add(T, x, y)
    nacc[0] = n
    return OK


cdef int dopri(const Prog *P, double T, double x, double y, double atol, double rtol,
               double max_step, long max_steps, _Rec rec, double *out,
               long *nacc, long *nrej):
    cdef double fx, fy, gx, gy, scx, scy, d0, d1, d2, dm, h0, h1, h, t
    cdef double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y, k5x, k5y, k6x, k6y, k7x, k7y
    cdef double nx, ny, ex, ey, sx, sy, err, fac
    cdef bint rejected = False, last
    cdef int status = OK
    nacc[0] = 0
    nrej[0] = 0
    out[0] = x
    out[1] = y
    rhs(P, 0.0, x, y, &fx, &fy)
    if bad(fx, fy):
        return OVERFLOW
    scx = atol + rtol * fabs(x)
    scy = atol + rtol * fabs(y)
    d0 = sqrt(0.5 * (sq(x / scx) + sq(y / scy)))
    d1 = sqrt(0.5 * (sq(fx / scx) + sq(fy / scy)))
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * d0 / d1
    if h0 > T:
        h0 = T
    rhs(P, h0, x + h0 * fx, y + h0 * fy, &gx, &gy)
    if bad(gx, gy):
        d2 = 1.0 / 0.0
    else:
        d2 = sqrt(0.5 * (sq((gx - fx) / scx) + sq((gy - fy) / scy))) / h0
    dm = d1 if d1 > d2 else d2
    if dm <= 1e-15:
        h1 = h0 * 1e-3
        if h1 < 1e-6:
            h1 = 1e-6
    else:
        h1 = pow(0.01 / dm, 0.2)
    h = 100.0 * h0
    if h1 < h:
        h = h1
    if T < h:
        h = T
    if max_step > 0.0 and h > max_step:
        h = max_step

    t = 0.0
    while t < T:
        if nacc[0] + nrej[0] >= max_steps:
            status = MAX_STEPS
            break
        if max_step > 0.0 and h > max_step:
            h = max_step
        last = False
        if t + 1.01 * h >= T:
            h = T - t
            last = True
        if h <= 1e-14 * T:
            status = UNDERFLOW
            break
        k1x = fx
        k1y = fy
        rhs(P, t + C2 * h, x + h * A21 * k1x, y + h * A21 * k1y, &k2x, &k2y)
        rhs(P, t + C3 * h, x + h * (A31 * k1x + A32 * k2x),
            y + h * (A31 * k1y + A32 * k2y), &k3x, &k3y)
        rhs(P, t + C4 * h, x + h * (A41 * k1x + A42 * k2x + A43 * k3x),
            y + h * (A41 * k1y + A42 * k2y + A43 * k3y), &k4x, &k4y)
        rhs(P, t + C5 * h, x + h * (A51 * k1x + A52 * k2x + A53 * k3x + A54 * k4x),
            y + h * (A51 * k1y + A52 * k2y + A53 * k3y + A54 * k4y), &k5x, &k5y)
        rhs(P, t + h, x + h * (A61 * k1x + A62 * k2x + A63 * k3x + A64 * k4x + A65 * k5x),
            y + h * (A61 * k1y + A62 * k2y + A63 * k3y + A64 * k4y + A65 * k5y), &k6x, &k6y)
        nx = x + h * (B1 * k1x + B3 * k3x + B4 * k4x + B5 * k5x + B6 * k6x)
        ny = y + h * (B1 * k1y + B3 * k3y + B4 * k4y + B5 * k5y + B6 * k6y)
        rhs(P, t + h, nx, ny, &k7x, &k7y)
        if bad(k7x, k7y) or bad(nx, ny):
            nrej[0] += 1
            rejected = True
            h *= 0.2
            if h <= 1e-14 * T:
                status = OVERFLOW
                break
            continue
        ex = h * (E1 * k1x + E3 * k3x + E4 * k4x + E5 * k5x + E6 * k6x + E7 * k7x)
        ey = h * (E1 * k1y + E3 * k3y + E4 * k4y + E5 * k5y + E6 * k6y + E7 * k7y)
        sx = atol + rtol * (fabs(x) if fabs(x) > fabs(nx) else fabs(nx))
        sy = atol + rtol * (fabs(y) if fabs(y) > fabs(ny) else fabs(ny))
        err = sqrt(0.5 * (sq(ex / sx) + sq(ey / sy)))
        if err <= 1.0:
            t = T if last else t + h
            x = nx
            y = ny
            fx = k7x
            fy = k7y
            nacc[0] += 1
            out[0] = x
            out[1] = y
            if rec is not None:
                rec.add(t, x, y)
            if err == 0.0:
                fac = 5.0
            else:
                fac = 0.9 * pow(err, -0.2)
                if fac < 0.2:
                    fac = 0.2
                if fac > 5.0:
                    fac = 5.0
            if rejected and fac > 1.0:
                fac = 1.0
            rejected = False
            h *= fac
        else:
            nrej[0] += 1
            rejected = True
            fac = 0.9 * pow(err, -0.2)
            if fac < 0.2:
                fac = 0.2
            h *= fac
    return status


cdef void fill(Prog *P, int kind, double[::1] params, double[::1] coef, int ncoef,
               double[::1] extra, double[::1] ks, double[::1] ab, int K,
               double[::1] mean, double omega):
    cdef int i
    P.kind = kind
    for i in range(6):
        P.p[i] = params[i]
    P.coef = &coef[0]
    P.ncoef = ncoef
    P.sx = extra[0]
    P.sy = extra[1]
    P.level = extra[2]
    P.s2x = extra[3]
    P.s2y = extra[4]
    P.ks = &ks[0]
    P.ab = &ab[0]
    P.K = K
    P.mx = mean[0]
    P.my = mean[1]
    P.omega = omega


def run(int kind, double[::1] params, double[::1] coef, int ncoef, double[::1] extra,
        double[::1] ks, double[::1] ab, int K, double[::1] mean, double omega,
        double T, double x0, double y0, int method, double h, double atol, double rtol,
        double max_step, long max_steps, bint record):
    """Integrate one trajectory; returns (ts, xs, ys, n_acc, n_rej, status)."""
    cdef Prog P
    cdef double out[2]
    cdef long nacc = 0, nrej = 0
    cdef int status
    cdef _Rec rec = _Rec() if record else None
    fill(&P, kind, params, coef, ncoef, extra, ks, ab, K, mean, omega)
    if method == 1:
        status = rk4(&P, T, x0, y0, h, max_steps, rec, out, &nacc)
    else:
        status = dopri(&P, T, x0, y0, atol, rtol, max_step, max_steps, rec, out, &nacc, &nrej)
    if record:
        ts = [0.0] + rec.ts
        xs = [x0] + rec.xs
        ys = [y0] + rec.ys
    elif status == OK:
        ts, xs, ys = [0.0, T], [x0, out[0]], [y0, out[1]]
    else:
        ts, xs, ys = [0.0], [x0], [y0]
    return ts, xs, ys, nacc, nrej, status


def run_batch(int kind, double[::1] params, double[::1] coef, int ncoef, double[::1] extra,
              double[::1] ks, double[::1] ab, int K, double[::1] mean, double omega,
              double T, double[::1] x0s, double[::1] y0s, int method, double h,
              double atol, double rtol, double max_step, long max_steps):
    """Endpoints u(T) for many starts; returns (xe, ye, status, total_steps)."""
    cdef Prog P
    cdef Py_ssize_t n = x0s.shape[0], i
    cdef double out[2]
    cdef long nacc, nrej, total = 0
    xe_a = np.empty(n)
    ye_a = np.empty(n)
    st_a = np.empty(n, dtype=np.intc)
    cdef double[::1] xe = xe_a
    cdef double[::1] ye = ye_a
    cdef int[::1] st = st_a
    fill(&P, kind, params, coef, ncoef, extra, ks, ab, K, mean, omega)
    for i in range(n):
        nrej = 0
        if method == 1:
            st[i] = rk4(&P, T, x0s[i], y0s[i], h, max_steps, None, out, &nacc)
        else:
            st[i] = dopri(&P, T, x0s[i], y0s[i], atol, rtol, max_step, max_steps, None, out,
                          &nacc, &nrej)
        xe[i] = out[0]
        ye[i] = out[1]
        total += nacc + nrej
    return xe_a, ye_a, st_a, total
