"""Independent brute-force verifiers.

These deliberately avoid the optimality-equation and dual root-finding paths
used by the production operators: the proximal oracle minimizes the defining
objective directly on a dense grid with golden-section refinement, and the
projection oracle minimizes the Bregman distance over a parametrization of
the set.  Catalog validation and the test suite treat these as ground truth.
"""

import numpy as np

from . import _scalar as core
from .errors import DomainError, InfeasibleSetError
from .kernels import ScalarKernel, SeparableLegendre, bregman_distance, kernel

N_GRID = 10_000
GOLDEN_STEPS = 200
_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def _as_kernel(k) -> ScalarKernel:
    return kernel(k) if isinstance(k, str) else k


def prox_oracle(kern, pen, gamma: float, xi: float, tol: float = 1e-10) -> float:
    """Brute-force scalar proximal value.

    Minimizes x -> gamma * phi(x) + D^theta(x, xi) by a dense grid over the
    feasible interval (log-spaced toward singular endpoints) followed by
    golden-section refinement.  Strict convexity makes the objective
    unimodal, so the grid bracket is sound.
    """
    kern = _as_kernel(kern)
    if gamma <= 0:
        raise DomainError(f"gamma must be > 0, got {gamma!r}")
    if not kern.is_interior(xi):
        raise DomainError(f"{xi!r} not interior to the {kern.kind} kernel domain")
    lo = max(kern.lo, pen.lo)
    hi = min(kern.hi, pen.hi)
    if not lo < hi:
        raise InfeasibleSetError(
            f"penalty domain ({pen.lo}, {pen.hi}) misses kernel domain "
            f"({kern.lo}, {kern.hi})"
        )
    pa, pb, pc = pen.packed()
    d1 = float(core.theta_deriv(kern.code, np.float64(xi)))

    def grid_values(grid):
        with np.errstate(all="ignore"):
            vals = core.reduced_prox_obj(
                kern.code, pen.code, pa, pb, pc, float(gamma), d1, grid
            )
        return np.where(np.isfinite(vals), vals, np.inf)

    grid = _initial_grid(lo, hi, xi)
    for _ in range(60):
        vals = grid_values(grid)
        i = int(np.argmin(vals))
        if 0 < i < grid.size - 1:
            break
        grid = _expand_grid(lo, hi, xi, grid, at_right=(i == grid.size - 1))
    else:
        raise InfeasibleSetError("proximal objective appears unbounded below")

    if i == 0:
        bl = lo + (grid[0] - lo) * 1e-3 if np.isfinite(lo) else grid[0]
    else:
        bl = grid[i - 1]
    if i == grid.size - 1:
        br = hi - (hi - grid[-1]) * 1e-3 if np.isfinite(hi) else grid[-1]
    else:
        br = grid[i + 1]

    with np.errstate(all="ignore"):
        eta = core.golden_argmin(
            kern.code,
            pen.code,
            pa,
            pb,
            pc,
            float(gamma),
            d1,
            float(bl),
            float(br),
            float(lo),
            float(hi),
            GOLDEN_STEPS,
        )
    return float(eta)


def _initial_grid(lo, hi, xi):
    if np.isfinite(lo) and np.isfinite(hi):
        # Cluster toward both (singular) endpoints.
        u = np.linspace(0.0, np.pi, N_GRID + 2)[1:-1]
        return lo + (hi - lo) * (1.0 - np.cos(u)) / 2.0
    if np.isfinite(lo):
        upper = max(10.0 * (abs(xi) + 1.0), lo + 1.0)
        dmin = 1e-12 * (1.0 + abs(lo))
        return lo + np.geomspace(dmin, upper - lo, N_GRID)
    if np.isfinite(hi):
        lowr = min(-10.0 * (abs(xi) + 1.0), hi - 1.0)
        dmin = 1e-12 * (1.0 + abs(hi))
        return hi - np.geomspace(dmin, hi - lowr, N_GRID)[::-1]
    r = 10.0 * (1.0 + abs(xi))
    return np.linspace(xi - r, xi + r, N_GRID)


def _expand_grid(lo, hi, xi, grid, at_right):
    span_lo, span_hi = grid[0], grid[-1]
    if at_right:
        if np.isfinite(hi):
            # Minimum pinched against the upper boundary: refine toward it.
            return hi - np.geomspace(
                (hi - span_hi) * 1e-6 + 1e-300, hi - grid[0], N_GRID
            )[::-1]
        new_hi = span_hi + 10.0 * (span_hi - span_lo)
        if np.isfinite(lo):
            dmin = grid[0] - lo
            return lo + np.geomspace(dmin, new_hi - lo, N_GRID)
        return np.linspace(span_lo, new_hi, N_GRID)
    if np.isfinite(lo):
        return lo + np.geomspace((span_lo - lo) * 1e-6 + 1e-300, span_hi - lo, N_GRID)
    new_lo = span_lo - 10.0 * (span_hi - span_lo)
    if np.isfinite(hi):
        dmin = hi - grid[-1]
        return hi - np.geomspace(dmin, hi - new_lo, N_GRID)[::-1]
    return np.linspace(new_lo, span_hi, N_GRID)


def finite_diff_gradient(f: SeparableLegendre, x, h: float = 1e-6) -> np.ndarray:
    """Central finite differences of f; requires interior margin > h."""
    x = np.asarray(x, dtype=np.float64)
    for i, (k, v) in enumerate(zip(f.kernels, x)):
        if not (k.lo + h < v < k.hi - h):
            raise DomainError(
                f"coordinate {i}: margin {h} violated at {v!r} for {k.kind}"
            )
    out = np.empty(f.m)
    for i in range(f.m):
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        out[i] = (f.value(xp) - f.value(xm)) / (2.0 * h)
    return out


def _argmin_1d(fun, lo, hi, center, n_grid=2000):
    """Golden-section argmin of a unimodal extended-real function.

    The bracket comes from a dense grid on (lo, hi); infinite ends are
    widened around ``center`` until the minimum is interior.
    """
    span = 10.0 * (1.0 + abs(center))
    for attempt in range(60):
        a = lo if np.isfinite(lo) else center - span
        b = hi if np.isfinite(hi) else center + span
        pts = np.linspace(a, b, n_grid + 2)[1:-1]
        vals = np.array([fun(t) for t in pts])
        i = int(np.argmin(vals))
        if not np.isfinite(vals[i]):
            raise InfeasibleSetError("objective infinite over the whole window")
        edge_left = i == 0 and not np.isfinite(lo)
        edge_right = i == pts.size - 1 and not np.isfinite(hi)
        if not (edge_left or edge_right):
            break
        span *= 10.0
    bl = pts[i - 1] if i > 0 else a
    br = pts[i + 1] if i < pts.size - 1 else b
    for _ in range(GOLDEN_STEPS):
        if br - bl <= 4e-16 * (abs(bl) + abs(br)) + 1e-300:
            break
        x1 = br - _INVPHI * (br - bl)
        x2 = bl + _INVPHI * (br - bl)
        if fun(x1) <= fun(x2):
            br = x2
        else:
            bl = x1
    return 0.5 * (bl + br)


def projection_oracle(f: SeparableLegendre, cset, y, tol: float = 1e-8) -> np.ndarray:
    """Brute-force Bregman projection onto a hyperplane, halfspace, or box.

    Minimizes D^f(., y) over a direct parametrization of the set; supports
    dimension <= 3 for hyperplanes (oracle scale).
    """
    from .prox import BoxSet, HalfspaceSet, HyperplaneSet  # cycle-free at call

    y = np.asarray(y, dtype=np.float64)
    if isinstance(cset, HalfspaceSet):
        if float(np.dot(cset.a, y)) <= cset.b:
            return y.copy()
        cset = HyperplaneSet(a=cset.a, b=cset.b)
    if isinstance(cset, HyperplaneSet):
        return _hyperplane_oracle(f, cset.a, cset.b, y)
    if isinstance(cset, BoxSet):
        out = np.empty(f.m)
        for i, k in enumerate(f.kernels):
            li = max(cset.lo[i], k.lo)
            hi_ = min(cset.hi[i], k.hi)
            if li > hi_:
                raise InfeasibleSetError(f"box coordinate {i} misses the domain")

            def fun(t, i=i, k=k):
                return f.weights[i] * (
                    k.value(t) - k.value(y[i]) - k.deriv(y[i]) * (t - y[i])
                )

            cand = _argmin_1d(fun, li, hi_, center=y[i])
            # Closed interval: endpoints compete with the interior argmin.
            best = min(
                [c for c in (cand, li, hi_) if np.isfinite(c)],
                key=lambda t: fun(t) if np.isfinite(fun(t)) else np.inf,
            )
            out[i] = best
        return out
    raise DomainError(f"unsupported set type {type(cset).__name__}")


def _hyperplane_oracle(f, a, b, y):
    a = np.asarray(a, dtype=np.float64)
    m = f.m
    if m == 1:
        p = np.array([b / a[0]])
        if not f.is_interior(p):
            raise InfeasibleSetError("hyperplane point outside the open domain")
        return p
    if m > 3:
        raise DomainError("projection oracle supports dimension <= 3")
    base = a * b / float(np.dot(a, a))
    # Orthonormal basis of the tangent space.
    basis = []
    for e in np.eye(m):
        v = e - a * float(np.dot(a, e)) / float(np.dot(a, a))
        for u in basis:
            v = v - u * float(np.dot(u, v))
        n = float(np.linalg.norm(v))
        if n > 1e-12:
            basis.append(v / n)
    basis = basis[: m - 1]

    def dist(point):
        return bregman_distance(f, point, y)

    if m == 2:
        d = basis[0]
        t0 = float(np.dot(d, y - base))
        t = _argmin_1d(lambda s: dist(base + s * d), -np.inf, np.inf, center=t0)
        p = base + t * d
    else:
        d1, d2 = basis
        c1 = float(np.dot(d1, y - base))
        c2 = float(np.dot(d2, y - base))
        r = 10.0 * (1.0 + abs(c1) + abs(c2))
        s1, s2 = c1, c2
        for sweep in range(80):
            g1 = np.linspace(s1 - r, s1 + r, 41)
            g2 = np.linspace(s2 - r, s2 + r, 41)
            vals = np.full((41, 41), np.inf)
            for i1, t1 in enumerate(g1):
                for i2, t2 in enumerate(g2):
                    vals[i1, i2] = dist(base + t1 * d1 + t2 * d2)
            i1, i2 = np.unravel_index(int(np.argmin(vals)), vals.shape)
            s1, s2 = g1[i1], g2[i2]
            hit_edge = i1 in (0, 40) or i2 in (0, 40)
            r = r * 2.0 if hit_edge else r * 0.25
            if r < 1e-12 * (1.0 + abs(s1) + abs(s2)):
                break
        p = base + s1 * d1 + s2 * d2
    if not np.isfinite(dist(p)):
        raise InfeasibleSetError("hyperplane misses the open domain")
    return p
