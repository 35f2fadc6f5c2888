"""Scalar numeric core shared by the high-level modules.

Everything here dispatches on integer kind codes and operates on float64
scalars or arrays, so the whole module compiles under numba's nopython mode.
With ``BREGOPT_DISABLE_NUMBA`` set the identical source runs as plain
numpy/Python.  Domain checks and extended-real semantics live in the calling
modules; these functions assume strictly interior arguments.
"""

import numpy as np

from ._numba import njit

# Legendre kernel codes.
KER_ENERGY = 0
KER_BOLTZMANN_SHANNON = 1
KER_FERMI_DIRAC = 2
KER_BURG = 3
KER_HELLINGER = 4

# Penalty codes.
PEN_ZERO = 0
PEN_LINEAR_ENTROPY = 1
PEN_POWER = 2
PEN_NEG_POWER = 3
PEN_NEG_ROOT = 4
PEN_ONE_MINUS_ENTROPY = 5
PEN_SCALED_BURG = 6
PEN_BURG_LINEAR_INVERSE = 7
PEN_BURG_POWER = 8
PEN_INVERSE_POWER = 9
PEN_HELLINGER_SELF = 10
PEN_KL_TARGET = 11

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@njit
def theta_value(kind, x):
    if kind == KER_ENERGY:
        return 0.5 * x * x
    elif kind == KER_BOLTZMANN_SHANNON:
        return x * np.log(x) - x
    elif kind == KER_FERMI_DIRAC:
        return x * np.log(x) + (1.0 - x) * np.log(1.0 - x)
    elif kind == KER_BURG:
        return -np.log(x)
    else:
        return -np.sqrt(1.0 - x * x)


@njit
def theta_deriv(kind, x):
    if kind == KER_ENERGY:
        return 1.0 * x
    elif kind == KER_BOLTZMANN_SHANNON:
        return np.log(x)
    elif kind == KER_FERMI_DIRAC:
        return np.log(x) - np.log(1.0 - x)
    elif kind == KER_BURG:
        return -1.0 / x
    else:
        return x / np.sqrt(1.0 - x * x)


@njit
def theta_deriv2(kind, x):
    if kind == KER_ENERGY:
        return 1.0 + 0.0 * x
    elif kind == KER_BOLTZMANN_SHANNON:
        return 1.0 / x
    elif kind == KER_FERMI_DIRAC:
        return 1.0 / (x * (1.0 - x))
    elif kind == KER_BURG:
        return 1.0 / (x * x)
    else:
        return (1.0 - x * x) ** (-1.5)


@njit
def theta_deriv_inv(kind, u):
    if kind == KER_ENERGY:
        return 1.0 * u
    elif kind == KER_BOLTZMANN_SHANNON:
        return np.exp(u)
    elif kind == KER_FERMI_DIRAC:
        return 1.0 / (1.0 + np.exp(-u))
    elif kind == KER_BURG:
        return -1.0 / u
    else:
        return u / np.sqrt(1.0 + u * u)


@njit
def pen_value(kind, pa, pb, pc, x):
    # Parameter packing: see bregopt.penalties.PENALTY_PARAMS.
    if kind == PEN_ZERO:
        return 0.0 * x
    elif kind == PEN_LINEAR_ENTROPY:
        return x * np.log(x) - pa * x
    elif kind == PEN_POWER:
        return np.abs(x) ** pa / pa
    elif kind == PEN_NEG_POWER:
        return x ** (-pa) / pa
    elif kind == PEN_NEG_ROOT:
        return -(x**pa) / pa
    elif kind == PEN_ONE_MINUS_ENTROPY:
        return (1.0 - x) * np.log(1.0 - x) + x
    elif kind == PEN_SCALED_BURG:
        return -pa * np.log(x)
    elif kind == PEN_BURG_LINEAR_INVERSE:
        return -pa * np.log(x) + pb * x + pc / x
    elif kind == PEN_BURG_POWER:
        return -pa * np.log(x) + pb * x**pc
    elif kind == PEN_INVERSE_POWER:
        return pa * x ** (-pb)
    elif kind == PEN_HELLINGER_SELF:
        return -np.sqrt(1.0 - x * x)
    else:
        return x * np.log(x / pa) - x + pa


@njit
def pen_deriv(kind, pa, pb, pc, x):
    if kind == PEN_ZERO:
        return 0.0 * x
    elif kind == PEN_LINEAR_ENTROPY:
        return np.log(x) + 1.0 - pa
    elif kind == PEN_POWER:
        return np.sign(x) * np.abs(x) ** (pa - 1.0)
    elif kind == PEN_NEG_POWER:
        return -(x ** (-pa - 1.0))
    elif kind == PEN_NEG_ROOT:
        return -(x ** (pa - 1.0))
    elif kind == PEN_ONE_MINUS_ENTROPY:
        return -np.log(1.0 - x)
    elif kind == PEN_SCALED_BURG:
        return -pa / x
    elif kind == PEN_BURG_LINEAR_INVERSE:
        return -pa / x + pb - pc / (x * x)
    elif kind == PEN_BURG_POWER:
        return -pa / x + pb * pc * x ** (pc - 1.0)
    elif kind == PEN_INVERSE_POWER:
        return -pa * pb * x ** (-pb - 1.0)
    elif kind == PEN_HELLINGER_SELF:
        return x / np.sqrt(1.0 - x * x)
    else:
        return np.log(x / pa)


@njit
def pen_deriv2(kind, pa, pb, pc, x):
    if kind == PEN_ZERO:
        return 0.0 * x
    elif kind == PEN_LINEAR_ENTROPY:
        return 1.0 / x
    elif kind == PEN_POWER:
        return (pa - 1.0) * np.abs(x) ** (pa - 2.0)
    elif kind == PEN_NEG_POWER:
        return (pa + 1.0) * x ** (-pa - 2.0)
    elif kind == PEN_NEG_ROOT:
        return (1.0 - pa) * x ** (pa - 2.0)
    elif kind == PEN_ONE_MINUS_ENTROPY:
        return 1.0 / (1.0 - x)
    elif kind == PEN_SCALED_BURG:
        return pa / (x * x)
    elif kind == PEN_BURG_LINEAR_INVERSE:
        return pa / (x * x) + 2.0 * pc / (x * x * x)
    elif kind == PEN_BURG_POWER:
        return pa / (x * x) + pb * pc * (pc - 1.0) * x ** (pc - 2.0)
    elif kind == PEN_INVERSE_POWER:
        return pa * pb * (pb + 1.0) * x ** (-pb - 2.0)
    elif kind == PEN_HELLINGER_SELF:
        return (1.0 - x * x) ** (-1.5)
    else:
        return 1.0 / x


@njit
def breg_point(kind, x, y):
    """D^theta(x, y) for interior x, y of a single scalar kernel."""
    return theta_value(kind, x) - theta_value(kind, y) - theta_deriv(kind, y) * (x - y)


@njit
def sep_value(kinds, w, x):
    total = 0.0
    for i in range(x.shape[0]):
        total += w[i] * theta_value(kinds[i], x[i])
    return total


@njit
def sep_breg(kinds, w, x, y):
    total = 0.0
    for i in range(x.shape[0]):
        total += w[i] * breg_point(kinds[i], x[i], y[i])
    return total


@njit
def sep_grad(kinds, w, x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = w[i] * theta_deriv(kinds[i], x[i])
    return out


@njit
def sep_grad_conj(kinds, w, u):
    out = np.empty(u.shape[0])
    for i in range(u.shape[0]):
        out[i] = theta_deriv_inv(kinds[i], u[i] / w[i])
    return out


@njit
def lambert_w0_core(z):
    """Principal-branch Lambert W for z >= 0.

    Halley iterations from a log-based initial guess, kept inside a sign
    bracket; bisection takes over whenever a step leaves the bracket or
    produces a non-finite value.  Returns (w, iterations).
    """
    if z == 0.0:
        return 0.0, 0
    if z <= np.e:
        a = 0.0
        b = np.log1p(z)
        w = b
    else:
        lz = np.log(z)
        a = lz - np.log(lz)
        b = lz
        w = a
    tol = 1e-15 * max(z, 1e-300)
    it = 0
    for k in range(50):
        it = k + 1
        ew = np.exp(w)
        f = w * ew - z
        if np.isfinite(f):
            if abs(f) <= tol:
                break
            if f > 0.0:
                b = w
            else:
                a = w
            wp1 = w + 1.0
            denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
            step_ok = denom != 0.0 and np.isfinite(denom)
            if step_ok:
                wn = w - f / denom
            else:
                wn = 0.5 * (a + b)
            if wn <= a or wn >= b or not np.isfinite(wn):
                wn = 0.5 * (a + b)
        else:
            b = w
            wn = 0.5 * (a + b)
        if wn == w:
            break
        w = wn
    return w, it


@njit
def reduced_prox_obj(kk, pk, pa, pb, pc, gamma, d1, x):
    """gamma*phi(x) + theta(x) - theta'(xi)*x: the prox objective minus terms
    constant in x."""
    return gamma * pen_value(pk, pa, pb, pc, x) + theta_value(kk, x) - d1 * x


@njit
def golden_argmin(kk, pk, pa, pb, pc, gamma, d1, a, b, lo, hi, steps):
    """Golden-section argmin of the reduced prox objective on [a, b].

    The section search runs to floating-point width, then one parabolic
    vertex fit through samples at +/- 3e-6*scale sharpens the argmin; the
    vertex is clamped to the sampling window and discarded if the fitted
    curvature is not positive.
    """
    h = b - a
    x1 = b - _GOLDEN * h
    x2 = a + _GOLDEN * h
    f1 = reduced_prox_obj(kk, pk, pa, pb, pc, gamma, d1, x1)
    f2 = reduced_prox_obj(kk, pk, pa, pb, pc, gamma, d1, x2)
    for _ in range(steps):
        if h <= 4e-16 * (abs(a) + abs(b)) + 1e-300:
            break
        if f1 <= f2:
            b = x2
            x2 = x1
            f2 = f1
            h = b - a
            x1 = b - _GOLDEN * h
            f1 = reduced_prox_obj(kk, pk, pa, pb, pc, gamma, d1, x1)
        else:
            a = x1
            x1 = x2
            f1 = f2
            h = b - a
            x2 = a + _GOLDEN * h
            f2 = reduced_prox_obj(kk, pk, pa, pb, pc, gamma, d1, x2)
    xm = 0.5 * (a + b)

    # Parabolic polish: the flat basin limits pure section search to ~sqrt(eps)
    # localization; one vertex fit through well-separated samples does better.
    step = 3e-6 * (1.0 + abs(xm))
    room = 0.5 * min(xm - lo, hi - xm)
    if room < step:
        step = room
    if step > 0.0:
        fl = reduced_prox_obj(kk, pk, pa, pb, pc, gamma, d1, xm - step)
        fm = reduced_prox_obj(kk, pk, pa, pb, pc, gamma, d1, xm)
        fr = reduced_prox_obj(kk, pk, pa, pb, pc, gamma, d1, xm + step)
        denom = fl - 2.0 * fm + fr
        if denom > 0.0 and np.isfinite(denom):
            v = xm + 0.5 * step * (fl - fr) / denom
            if v < xm - step:
                v = xm - step
            elif v > xm + step:
                v = xm + step
            xm = v
    return xm


@njit
def prox_optimality(kk, pk, pa, pb, pc, gamma, t0, x):
    """gamma*phi'(x) + theta'(x) - theta'(xi) with t0 = theta'(xi)."""
    return gamma * pen_deriv(pk, pa, pb, pc, x) + theta_deriv(kk, x) - t0


@njit
def prox_root(kk, pk, pa, pb, pc, gamma, xi, lo, hi, tol):
    """Safeguarded Newton/bisection solve of the prox optimality equation.

    (lo, hi) is the open intersection of the kernel and penalty interiors.
    The equation's left side is strictly increasing there.  Returns
    (eta, residual, ok); ok = False means no sign bracket was found after
    geometric expansion.
    """
    t0 = theta_deriv(kk, xi)

    # Starting point inside (lo, hi).
    x0 = xi
    if not (x0 > lo and x0 < hi):
        if lo > -np.inf and hi < np.inf:
            x0 = 0.5 * (lo + hi)
        elif lo > -np.inf:
            x0 = lo + 1.0
        elif hi < np.inf:
            x0 = hi - 1.0
        else:
            x0 = 0.0
    g0 = prox_optimality(kk, pk, pa, pb, pc, gamma, t0, x0)

    # Bracket [a, b] with g(a) <= 0 <= g(b): halve toward finite endpoints,
    # expand geometrically toward infinite ones.
    a = x0
    b = x0
    ga = g0
    gb = g0
    if g0 > 0.0:
        found = False
        if lo > -np.inf:
            d = x0 - lo
            for _ in range(200):
                d *= 0.5
                a = lo + d
                ga = prox_optimality(kk, pk, pa, pb, pc, gamma, t0, a)
                if ga <= 0.0:
                    found = True
                    break
        else:
            step = 1.0 + abs(x0)
            for _ in range(200):
                a = x0 - step
                step *= 2.0
                ga = prox_optimality(kk, pk, pa, pb, pc, gamma, t0, a)
                if ga <= 0.0:
                    found = True
                    break
        if not found:
            return x0, abs(g0), False
    elif g0 < 0.0:
        found = False
        if hi < np.inf:
            d = hi - x0
            for _ in range(200):
                d *= 0.5
                b = hi - d
                gb = prox_optimality(kk, pk, pa, pb, pc, gamma, t0, b)
                if gb >= 0.0:
                    found = True
                    break
        else:
            step = 1.0 + abs(x0)
            for _ in range(200):
                b = x0 + step
                step *= 2.0
                gb = prox_optimality(kk, pk, pa, pb, pc, gamma, t0, b)
                if gb >= 0.0:
                    found = True
                    break
        if not found:
            return x0, abs(g0), False
    else:
        return x0, 0.0, True

    # Hybrid refinement inside the bracket.
    x = 0.5 * (a + b)
    gx = prox_optimality(kk, pk, pa, pb, pc, gamma, t0, x)
    for _ in range(200):
        if gx <= 0.0:
            a = x
        else:
            b = x
        if b - a <= 2e-16 * (abs(a) + abs(b)) + 1e-300:
            break
        dg = gamma * pen_deriv2(pk, pa, pb, pc, x) + theta_deriv2(kk, x)
        xn = 0.5 * (a + b)
        if dg > 0.0 and np.isfinite(dg):
            cand = x - gx / dg
            if cand > a and cand < b:
                xn = cand
        if xn == x:
            break
        x = xn
        gx = prox_optimality(kk, pk, pa, pb, pc, gamma, t0, x)
        if abs(gx) <= 1e-18 * (1.0 + abs(t0)):
            break
    res = abs(prox_optimality(kk, pk, pa, pb, pc, gamma, t0, x))
    return x, res, res <= tol


@njit
def burg_power_root(gpen, alpha, p, xi):
    """Positive root of p*alpha*xi*eta^p + eta = (gpen+1)*xi.

    Left side is strictly increasing in eta, so the root is unique and lies
    in (0, (gpen+1)*xi].
    """
    rhs = (gpen + 1.0) * xi
    a = 0.0
    b = rhs
    x = rhs / (1.0 + p * alpha * xi * rhs ** (p - 1.0))
    if not (x > a and x < b):
        x = 0.5 * rhs
    for _ in range(100):
        h = p * alpha * xi * x**p + x - rhs
        if h <= 0.0:
            a = x
        else:
            b = x
        dh = p * p * alpha * xi * x ** (p - 1.0) + 1.0
        xn = x - h / dh
        if not (xn > a and xn < b):
            xn = 0.5 * (a + b)
        if abs(xn - x) <= 1e-16 * (abs(x) + 1e-300):
            x = xn
            break
        x = xn
    return x


@njit
def inverse_power_root(alpha, p, xi):
    """Positive root of eta^(p+1) - xi*eta^p = p*alpha*xi.

    The left side is strictly increasing for eta >= xi, starts negative at
    eta = xi, so the root is unique in (xi, inf).
    """
    rhs = p * alpha * xi
    a = xi
    b = xi + rhs ** (1.0 / (p + 1.0)) + 1.0
    for _ in range(200):
        if b ** (p + 1.0) - xi * b**p >= rhs:
            break
        b = xi + 2.0 * (b - xi)
    x = 0.5 * (a + b)
    for _ in range(100):
        h = x ** (p + 1.0) - xi * x**p - rhs
        if h <= 0.0:
            a = x
        else:
            b = x
        dh = (p + 1.0) * x**p - p * xi * x ** (p - 1.0)
        xn = 0.5 * (a + b)
        if dh > 0.0:
            cand = x - h / dh
            if cand > a and cand < b:
                xn = cand
        if abs(xn - x) <= 1e-16 * (abs(x) + 1e-300):
            x = xn
            break
        x = xn
    return x


@njit
def hyperplane_gap(kinds, w, gv, a, bb, lam):
    """<a, x(lam)> - b with x(lam) = grad-conjugate of grad(y) + lam*a."""
    total = -bb
    for i in range(a.shape[0]):
        if a[i] != 0.0:
            total += a[i] * theta_deriv_inv(kinds[i], (gv[i] + lam * a[i]) / w[i])
    return total


@njit
def hyperplane_point(kinds, w, gv, a, lam):
    out = np.empty(a.shape[0])
    for i in range(a.shape[0]):
        out[i] = theta_deriv_inv(kinds[i], (gv[i] + lam * a[i]) / w[i])
    return out


@njit
def hyperplane_gap_slope(kinds, w, gv, a, lam):
    total = 0.0
    for i in range(a.shape[0]):
        if a[i] != 0.0:
            x = theta_deriv_inv(kinds[i], (gv[i] + lam * a[i]) / w[i])
            total += a[i] * a[i] / (w[i] * theta_deriv2(kinds[i], x))
    return total


@njit
def hyperplane_lambda(kinds, w, gv, a, bb, lam_lo, lam_hi):
    """Solve <a, x(lam)> = b for the Bregman hyperplane projection multiplier.

    The gap is strictly increasing in lam on (lam_lo, lam_hi) (the multiplier
    interval keeping every coordinate inside the gradient range).  Returns
    (lam, ok); ok = False when no sign bracket exists, i.e. the hyperplane
    misses the interior of the domain.
    """
    g0 = hyperplane_gap(kinds, w, gv, a, bb, 0.0)
    if g0 == 0.0:
        return 0.0, True
    lo = 0.0
    hi = 0.0
    glo = g0
    ghi = g0
    if g0 > 0.0:
        found = False
        if lam_lo == -np.inf:
            step = 1.0
            for _ in range(200):
                lo = -step
                step *= 2.0
                glo = hyperplane_gap(kinds, w, gv, a, bb, lo)
                if glo <= 0.0:
                    found = True
                    break
        else:
            d = -lam_lo
            for _ in range(200):
                d *= 0.5
                lo = lam_lo + d
                glo = hyperplane_gap(kinds, w, gv, a, bb, lo)
                if glo <= 0.0:
                    found = True
                    break
        if not found:
            return 0.0, False
    else:
        found = False
        if lam_hi == np.inf:
            step = 1.0
            for _ in range(200):
                hi = step
                step *= 2.0
                ghi = hyperplane_gap(kinds, w, gv, a, bb, hi)
                if ghi >= 0.0:
                    found = True
                    break
        else:
            d = lam_hi
            for _ in range(200):
                d *= 0.5
                hi = lam_hi - d
                ghi = hyperplane_gap(kinds, w, gv, a, bb, hi)
                if ghi >= 0.0:
                    found = True
                    break
        if not found:
            return 0.0, False

    lam = 0.5 * (lo + hi)
    g = hyperplane_gap(kinds, w, gv, a, bb, lam)
    for _ in range(200):
        if g <= 0.0:
            lo = lam
        else:
            hi = lam
        if hi - lo <= 2e-16 * (abs(lo) + abs(hi)) + 1e-300:
            break
        slope = hyperplane_gap_slope(kinds, w, gv, a, lam)
        nxt = 0.5 * (lo + hi)
        if slope > 0.0 and np.isfinite(slope):
            cand = lam - g / slope
            if cand > lo and cand < hi:
                nxt = cand
        if nxt == lam:
            break
        lam = nxt
        g = hyperplane_gap(kinds, w, gv, a, bb, lam)
        if g == 0.0:
            break
    return lam, True
