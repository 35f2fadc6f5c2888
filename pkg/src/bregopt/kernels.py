"""Legendre scalar kernels and separable Legendre functions on R^m.

A scalar kernel is a 1-D Legendre building block: a strictly convex value
function on an open interval together with its derivative, the inverse of the
derivative, and the finite closure values the function takes at reachable
boundary points.  A separable Legendre function is a positively weighted
coordinatewise sum of scalar kernels; its Bregman distance, gradient, and
conjugate gradient decompose per coordinate.
"""

from dataclasses import dataclass

import numpy as np

from . import _scalar as core
from .errors import DimensionMismatchError, DomainError

#: Absolute margin used for open-interval membership at finite endpoints.
INTERIOR_MARGIN = 1e-300

KERNEL_NAMES = (
    "energy",
    "boltzmann_shannon",
    "fermi_dirac",
    "burg",
    "hellinger",
)


@dataclass(frozen=True)
class ScalarKernel:
    """A 1-D Legendre kernel.

    Attributes
    ----------
    kind : str
        One of ``KERNEL_NAMES``.
    code : int
        Dispatch code for the numeric core.
    lo, hi : float
        Endpoints of the open domain (extended reals).
    value_lo, value_hi : float
        Closure values at finite endpoints; +inf when the value blows up
        there (Burg at 0) or the endpoint is infinite.
    deriv_lo, deriv_hi : float
        Open range of the derivative, i.e. the domain of the inverse
        derivative.
    """

    kind: str
    code: int
    lo: float
    hi: float
    value_lo: float
    value_hi: float
    deriv_lo: float
    deriv_hi: float

    def is_interior(self, xi: float) -> bool:
        return (xi > self.lo + INTERIOR_MARGIN) and (xi < self.hi - INTERIOR_MARGIN)

    def value(self, xi: float) -> float:
        """theta(xi) as an extended real: closure values at finite boundary
        points where defined, +inf outside the domain closure."""
        xi = float(xi)
        if not np.isfinite(xi):
            return np.inf
        if self.is_interior(xi):
            return float(core.theta_value(self.code, np.float64(xi)))
        if xi == self.lo:
            return self.value_lo
        if xi == self.hi:
            return self.value_hi
        return np.inf

    def deriv(self, xi: float) -> float:
        if not self.is_interior(xi):
            raise DomainError(
                f"{self.kind}: derivative undefined at {xi!r}; open domain is "
                f"({self.lo}, {self.hi})"
            )
        return float(core.theta_deriv(self.code, np.float64(xi)))

    def deriv2(self, xi: float) -> float:
        if not self.is_interior(xi):
            raise DomainError(f"{self.kind}: second derivative undefined at {xi!r}")
        return float(core.theta_deriv2(self.code, np.float64(xi)))

    def deriv_inv(self, u: float) -> float:
        """Inverse of the derivative (closed form for all built-in kernels)."""
        if not (self.deriv_lo < u < self.deriv_hi):
            raise DomainError(
                f"{self.kind}: {u!r} outside the derivative range "
                f"({self.deriv_lo}, {self.deriv_hi})"
            )
        return float(core.theta_deriv_inv(self.code, np.float64(u)))

    def deriv_inv_numeric(self, u: float, tol: float = 1e-14) -> float:
        """Safeguarded bisection/Newton fallback for the inverse derivative.

        Built-in kernels all have closed inverses; this guards kernels added
        later and cross-checks the closed forms in tests.
        """
        if not (self.deriv_lo < u < self.deriv_hi):
            raise DomainError(
                f"{self.kind}: {u!r} outside the derivative range "
                f"({self.deriv_lo}, {self.deriv_hi})"
            )
        return _deriv_inv_bisect(self, u, tol)


def _deriv_inv_bisect(k: ScalarKernel, u: float, tol: float) -> float:
    lo, hi = k.lo, k.hi
    x0 = 0.5 * (lo + hi) if np.isfinite(lo) and np.isfinite(hi) else None
    if x0 is None:
        if np.isfinite(lo):
            x0 = lo + 1.0
        elif np.isfinite(hi):
            x0 = hi - 1.0
        else:
            x0 = 0.0
    with np.errstate(all="ignore"):
        g0 = core.theta_deriv(k.code, np.float64(x0)) - u
        a = b = x0
        if g0 > 0:
            d, step = x0 - lo, 1.0 + abs(x0)
            for _ in range(200):
                a = lo + 0.5 * d if np.isfinite(lo) else a - step
                d *= 0.5
                step *= 2.0
                if core.theta_deriv(k.code, np.float64(a)) - u <= 0:
                    break
        elif g0 < 0:
            d, step = hi - x0, 1.0 + abs(x0)
            for _ in range(200):
                b = hi - 0.5 * d if np.isfinite(hi) else b + step
                d *= 0.5
                step *= 2.0
                if core.theta_deriv(k.code, np.float64(b)) - u >= 0:
                    break
        for _ in range(200):
            mid = 0.5 * (a + b)
            gm = core.theta_deriv(k.code, np.float64(mid)) - u
            if abs(gm) <= tol * (1.0 + abs(u)):
                return mid
            if gm <= 0:
                a = mid
            else:
                b = mid
            if b - a <= 4e-16 * (abs(a) + abs(b)) + 1e-300:
                break
    return 0.5 * (a + b)


_REGISTRY = {
    "energy": ScalarKernel(
        "energy", core.KER_ENERGY, -np.inf, np.inf, np.inf, np.inf, -np.inf, np.inf
    ),
    "boltzmann_shannon": ScalarKernel(
        "boltzmann_shannon",
        core.KER_BOLTZMANN_SHANNON,
        0.0,
        np.inf,
        0.0,
        np.inf,
        -np.inf,
        np.inf,
    ),
    "fermi_dirac": ScalarKernel(
        "fermi_dirac", core.KER_FERMI_DIRAC, 0.0, 1.0, 0.0, 0.0, -np.inf, np.inf
    ),
    "burg": ScalarKernel(
        "burg", core.KER_BURG, 0.0, np.inf, np.inf, np.inf, -np.inf, 0.0
    ),
    "hellinger": ScalarKernel(
        "hellinger", core.KER_HELLINGER, -1.0, 1.0, 0.0, 0.0, -np.inf, np.inf
    ),
}


def kernel(kind: str) -> ScalarKernel:
    """Look up a scalar kernel by its canonical name."""
    try:
        return _REGISTRY[kind]
    except KeyError:
        raise DomainError(
            f"unknown kernel {kind!r}; expected one of {KERNEL_NAMES}"
        ) from None


def kernel_value(k: ScalarKernel, xi: float) -> float:
    """Extended-real kernel value; total on the reals."""
    return k.value(xi)


class SeparableLegendre:
    """f(x) = sum_i w_i * theta_i(x_i) with strictly positive weights.

    The product of Legendre kernels under positive scaling is again Legendre,
    so f inherits a gradient bijection between the interior of its domain and
    the interior of the conjugate's domain, coordinate by coordinate.
    """

    def __init__(self, kernels, weights=None):
        if isinstance(kernels, ScalarKernel):
            if weights is None:
                raise ValueError("weights required when passing a single kernel")
            weights = np.asarray(weights, dtype=np.float64)
            kernels = (kernels,) * weights.size
        else:
            kernels = tuple(kernels)
            if weights is None:
                weights = np.ones(len(kernels))
            weights = np.asarray(weights, dtype=np.float64)
        if weights.ndim != 1 or weights.size != len(kernels):
            raise DimensionMismatchError(
                f"{weights.size} weights for {len(kernels)} kernels"
            )
        if not np.all(weights > 0):
            raise DomainError("weights must be strictly positive")
        self.kernels = kernels
        self.weights = weights.copy()
        self.weights.setflags(write=False)
        self.codes = np.array([k.code for k in kernels], dtype=np.int64)
        self.codes.setflags(write=False)

    @property
    def m(self) -> int:
        return len(self.kernels)

    def __repr__(self):
        kinds = {k.kind for k in self.kernels}
        return f"SeparableLegendre(kinds={sorted(kinds)}, m={self.m})"

    def _check_dim(self, x: np.ndarray, name: str) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.m,):
            raise DimensionMismatchError(
                f"{name} has shape {x.shape}, expected ({self.m},)"
            )
        return x

    def is_interior(self, x) -> bool:
        x = self._check_dim(x, "x")
        return all(k.is_interior(v) for k, v in zip(self.kernels, x))

    def interior_violation(self, x):
        """Index of the first coordinate outside the open domain, or None."""
        x = self._check_dim(x, "x")
        for i, (k, v) in enumerate(zip(self.kernels, x)):
            if not k.is_interior(v):
                return i
        return None

    def value(self, x) -> float:
        """f(x) as an extended real (+inf outside the domain closure)."""
        x = self._check_dim(x, "x")
        if self.is_interior(x):
            return float(core.sep_value(self.codes, self.weights, x))
        total = 0.0
        for k, w, v in zip(self.kernels, self.weights, x):
            t = k.value(v)
            if t == np.inf:
                return np.inf
            total += w * t
        return total

    def in_domain(self, x) -> bool:
        return self.value(x) < np.inf


def separable(kind_or_kernel, weights) -> SeparableLegendre:
    """Build a SeparableLegendre from a kernel name (or kernel) and weights."""
    k = kernel(kind_or_kernel) if isinstance(kind_or_kernel, str) else kind_or_kernel
    return SeparableLegendre(k, weights)


def bregman_distance(f: SeparableLegendre, x, y) -> float:
    """Bregman distance f(x) - f(y) - <x - y, grad f(y)>.

    Returns +inf when y is not interior or x is outside the domain closure;
    nonnegative always, and zero iff x == y for interior points.  Tiny
    negative rounding residue is clamped to 0.
    """
    x = f._check_dim(x, "x")
    y = f._check_dim(y, "y")
    if not f.is_interior(y):
        return np.inf
    if f.is_interior(x):
        d = float(core.sep_breg(f.codes, f.weights, x, y))
        return d if d > 0.0 else 0.0
    total = 0.0
    for k, w, xi, yi in zip(f.kernels, f.weights, x, y):
        tx = k.value(xi)
        if tx == np.inf:
            return np.inf
        term = tx - k.value(yi) - k.deriv(yi) * (xi - yi)
        total += w * term
    return total if total > 0.0 else 0.0


def gradient(f: SeparableLegendre, x) -> np.ndarray:
    """Gradient of f at an interior point: component i is w_i * theta'(x_i)."""
    x = f._check_dim(x, "x")
    bad = f.interior_violation(x)
    if bad is not None:
        raise DomainError(
            f"coordinate {bad}: {x[bad]!r} outside the open domain of "
            f"{f.kernels[bad].kind}"
        )
    return core.sep_grad(f.codes, f.weights, x)


def gradient_conjugate(f: SeparableLegendre, u) -> np.ndarray:
    """Inverse of the gradient: solves w_i * theta'(xi_i) = u_i per coordinate.

    The argument must lie in the open range of the gradient; for the Burg
    kernel that means u_i < 0.
    """
    u = f._check_dim(u, "u")
    for i, (k, w, ui) in enumerate(zip(f.kernels, f.weights, u)):
        v = ui / w
        if not (k.deriv_lo < v < k.deriv_hi):
            raise DomainError(
                f"coordinate {i}: {ui!r} outside the gradient range of "
                f"{k.kind} (weighted range "
                f"({w * k.deriv_lo}, {w * k.deriv_hi}))"
            )
    return core.sep_grad_conj(f.codes, f.weights, u)


def three_point_gap(f: SeparableLegendre, x, y, z) -> float:
    """D(x,z) - D(x,y) - D(y,z) - <x - y, grad f(y) - grad f(z)>.

    Zero in exact arithmetic for interior triples; exposed for tests.
    """
    lhs = bregman_distance(f, x, z)
    rhs = (
        bregman_distance(f, x, y)
        + bregman_distance(f, y, z)
        + float(np.dot(np.asarray(x) - np.asarray(y), gradient(f, y) - gradient(f, z)))
    )
    return lhs - rhs
