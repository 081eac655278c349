"""Pure-Python integration kernel.

Mirrors ``_kernel.pyx`` operation for operation; it is selected when the
compiled extension is unavailable or ``PLANAR_PERIODIC_PURE=1`` is set, and
it is the only path for fields given as Python callables.

Status codes: 0 ok, 1 step budget exhausted, 2 non-finite state, 3 step-size
underflow.
"""
import math

OK, MAX_STEPS, OVERFLOW, UNDERFLOW = 0, 1, 2, 3
BIG = 1e150

# Dormand-Prince 5(4)
C2, C3, C4, C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
E1, E3, E4, E5, E6, E7 = (71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200,
                          22 / 525, -1 / 40)


def blend(a, R, inv):
    if a <= R:
        return 1.0
    if a >= 2.0 * R:
        return inv
    w = 0.5 * (1.0 - math.cos(math.pi * (a - R) / R))
    return 1.0 + (inv - 1.0) * w


def make_field(kind, params, coef, ncoef, extra):
    """Python closure (x, y) -> (gx, gy) for a lowered field program."""
    p = [float(v) for v in params]
    cs = [complex(coef[2 * i], coef[2 * i + 1]) for i in range(ncoef)]
    sx, sy, level, s2x, s2y = (float(v) for v in extra)
    top = cs[-1] if cs else 0j
    rest = cs[-2::-1]

    def base(x, y):
        if kind == 0:
            w = complex(x, -y)
            acc = top
            for a in rest:
                acc = acc * w + a
            return acc.real, acc.imag
        if kind == 1:
            s = p[0] / (1.0 + _norm(x, y))
            return s * x, s * y
        if kind == 2:
            return p[0] * math.atan(x), p[1] * math.atan(y)
        return p[0] * x + p[1] * y + p[4], p[2] * x + p[3] * y + p[5]

    def g(x, y):
        hx, hy = base(x, y)
        hx += sx
        hy += sy
        if level > 0.0:
            s = _norm(hx, hy)
            if s > level:
                f = blend(s, level, level / s)
                hx *= f
                hy *= f
        return hx + s2x, hy + s2y

    return g


def make_forcing(ks, ab, K, mean, omega):
    ks = [float(k) for k in ks[:K]]
    ab = [float(v) for v in ab]
    mx, my = float(mean[0]), float(mean[1])
    if K == 0:
        return lambda t: (mx, my)

    def p(t):
        x, y = mx, my
        for i in range(K):
            arg = ks[i] * omega * t
            c, s = math.cos(arg), math.sin(arg)
            x += ab[4 * i] * c + ab[4 * i + 2] * s
            y += ab[4 * i + 1] * c + ab[4 * i + 3] * s
        return x, y

    return p


def make_rhs(field, forcing):
    def rhs(t, x, y):
        gx, gy = field(x, y)
        px, py = forcing(t)
        return gx + px, gy + py
    return rhs


def _norm(x, y):
    # same arithmetic as the compiled kernel, so both backends agree bitwise
    m = max(abs(x), abs(y))
    if m > 1e150:
        return m * math.sqrt((x / m) * (x / m) + (y / m) * (y / m))
    return math.sqrt(x * x + y * y)


def _sq(v):
    return v * v


def _bad(x, y):
    return not (abs(x) < BIG and abs(y) < BIG)


def integrate_rhs(rhs, T, x0, y0, method, h, atol, rtol, max_step, max_steps, record):
    """Integrate u' = rhs(t, u) on [0, T]; returns (ts, xs, ys, n_acc, n_rej, status)."""
    if method == 1:
        return _rk4(rhs, T, x0, y0, h, max_steps, record)
    return _dopri(rhs, T, x0, y0, atol, rtol, max_step, max_steps, record)


def _rk4(rhs, T, x, y, h, max_steps, record):
    n = max(1, math.ceil(T / h - 1e-9))
    if n > max_steps:
        return [0.0], [x], [y], 0, 0, MAX_STEPS
    hh = T / n
    ts, xs, ys = [0.0], [x], [y]
    for i in range(n):
        t = i * hh
        k1x, k1y = rhs(t, x, y)
        k2x, k2y = rhs(t + 0.5 * hh, x + 0.5 * hh * k1x, y + 0.5 * hh * k1y)
        k3x, k3y = rhs(t + 0.5 * hh, x + 0.5 * hh * k2x, y + 0.5 * hh * k2y)
        k4x, k4y = rhs(t + hh, x + hh * k3x, y + hh * k3y)
        x = x + hh / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        y = y + hh / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        if _bad(x, y):
            return ts, xs, ys, i, 0, OVERFLOW
        if record or i == n - 1:
            ts.append(T if i == n - 1 else (i + 1) * hh)
            xs.append(x)
            ys.append(y)
    if not record:
        ts, xs, ys = [0.0, ts[-1]], [xs[0], xs[-1]], [ys[0], ys[-1]]
    return ts, xs, ys, n, 0, OK


def _dopri(rhs, T, x, y, atol, rtol, max_step, max_steps, record):
    ts, xs, ys = [0.0], [x], [y]
    fx, fy = rhs(0.0, x, y)
    if _bad(fx, fy):
        return ts, xs, ys, 0, 0, OVERFLOW
    # initial step (Hairer, Norsett & Wanner II.4)
    scx, scy = atol + rtol * abs(x), atol + rtol * abs(y)
    d0 = math.sqrt(0.5 * (_sq(x / scx) + _sq(y / scy)))
    d1 = math.sqrt(0.5 * (_sq(fx / scx) + _sq(fy / scy)))
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, T)
    gx, gy = rhs(h0, x + h0 * fx, y + h0 * fy)
    if _bad(gx, gy):
        d2 = math.inf
    else:
        d2 = math.sqrt(0.5 * (_sq((gx - fx) / scx) + _sq((gy - fy) / scy))) / h0
    dm = max(d1, d2)
    h1 = max(1e-6, h0 * 1e-3) if dm <= 1e-15 else (0.01 / dm) ** 0.2
    h = min(100.0 * h0, h1, T)
    if max_step > 0.0:
        h = min(h, max_step)

    t = 0.0
    n_acc = n_rej = 0
    rejected = False
    status = OK
    while t < T:
        if n_acc + n_rej >= max_steps:
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
        k1x, k1y = fx, fy
        k2x, k2y = rhs(t + C2 * h, x + h * A21 * k1x, y + h * A21 * k1y)
        k3x, k3y = rhs(t + C3 * h, x + h * (A31 * k1x + A32 * k2x),
                       y + h * (A31 * k1y + A32 * k2y))
        k4x, k4y = rhs(t + C4 * h, x + h * (A41 * k1x + A42 * k2x + A43 * k3x),
                       y + h * (A41 * k1y + A42 * k2y + A43 * k3y))
        k5x, k5y = rhs(t + C5 * h, x + h * (A51 * k1x + A52 * k2x + A53 * k3x + A54 * k4x),
                       y + h * (A51 * k1y + A52 * k2y + A53 * k3y + A54 * k4y))
        k6x, k6y = rhs(t + h, x + h * (A61 * k1x + A62 * k2x + A63 * k3x + A64 * k4x + A65 * k5x),
                       y + h * (A61 * k1y + A62 * k2y + A63 * k3y + A64 * k4y + A65 * k5y))
        nx = x + h * (B1 * k1x + B3 * k3x + B4 * k4x + B5 * k5x + B6 * k6x)
        ny = y + h * (B1 * k1y + B3 * k3y + B4 * k4y + B5 * k5y + B6 * k6y)
        k7x, k7y = rhs(t + h, nx, ny)
        if _bad(k7x, k7y) or _bad(nx, ny):
            # a non-finite stage: shrink and retry, give up once h is tiny
            n_rej += 1
            rejected = True
            h *= 0.2
            if h <= 1e-14 * T:
                status = OVERFLOW
                break
            continue
        ex = h * (E1 * k1x + E3 * k3x + E4 * k4x + E5 * k5x + E6 * k6x + E7 * k7x)
        ey = h * (E1 * k1y + E3 * k3y + E4 * k4y + E5 * k5y + E6 * k6y + E7 * k7y)
        sx = atol + rtol * max(abs(x), abs(nx))
        sy = atol + rtol * max(abs(y), abs(ny))
        err = math.sqrt(0.5 * (_sq(ex / sx) + _sq(ey / sy)))
        if err <= 1.0:
            t = T if last else t + h
            x, y = nx, ny
            fx, fy = k7x, k7y
            n_acc += 1
            if record or t == T:
                ts.append(t)
                xs.append(x)
                ys.append(y)
            fac = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            if rejected:
                fac = min(fac, 1.0)
            rejected = False
            h *= fac
        else:
            n_rej += 1
            rejected = True
            h *= max(0.2, 0.9 * err ** -0.2)
    if not record and len(ts) > 2:
        ts, xs, ys = [ts[0], ts[-1]], [xs[0], xs[-1]], [ys[0], ys[-1]]
    return ts, xs, ys, n_acc, n_rej, status


def run(kind, params, coef, ncoef, extra, ks, ab, K, mean, omega,
        T, x0, y0, method, h, atol, rtol, max_step, max_steps, record):
    rhs = make_rhs(make_field(kind, params, coef, ncoef, extra),
                   make_forcing(ks, ab, K, mean, omega))
    return integrate_rhs(rhs, T, x0, y0, method, h, atol, rtol, max_step, max_steps, record)


def run_batch(kind, params, coef, ncoef, extra, ks, ab, K, mean, omega,
              T, x0s, y0s, method, h, atol, rtol, max_step, max_steps):
    """Endpoints u(T) for many starts; returns (xe, ye, status, total_steps)."""
    rhs = make_rhs(make_field(kind, params, coef, ncoef, extra),
                   make_forcing(ks, ab, K, mean, omega))
    xe, ye, st = [], [], []
    total = 0
    for x0, y0 in zip(x0s, y0s):
        ts, xs, ys, na, nr, s = integrate_rhs(rhs, T, float(x0), float(y0), method, h,
                                              atol, rtol, max_step, max_steps, False)
        xe.append(xs[-1])
        ye.append(ys[-1])
        st.append(s)
        total += na + nr
    return xe, ye, st, total
