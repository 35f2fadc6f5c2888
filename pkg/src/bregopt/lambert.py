"""Principal-branch Lambert W on [0, +inf).

W(z) is the inverse of xi -> xi * e^xi on the nonnegative half-line; it shows
up throughout the closed-form entropic proximal maps.  The solver runs Halley
iterations from a logarithmic initial guess, clamped to a sign bracket with
bisection as the safety net.
"""

from dataclasses import dataclass

import numpy as np

from . import _scalar as core
from .errors import DomainError


@dataclass(frozen=True)
class LambertResult:
    """Solution record: w with w * e^w = z.

    residual is |w e^w - z| / max(z, 1e-300).
    """

    w: float
    iterations: int
    residual: float


def lambert_w0(z: float) -> LambertResult:
    """Principal branch of the Lambert W function for z >= 0.

    Raises DomainError for negative arguments (the secondary branch is out of
    scope).
    """
    z = float(z)
    if not z >= 0.0:
        raise DomainError(f"lambert_w0 requires z >= 0, got {z!r}")
    with np.errstate(all="ignore"):
        w, iters = core.lambert_w0_core(np.float64(z))
        res = abs(w * np.exp(np.float64(w)) - z) / max(z, 1e-300)
    return LambertResult(w=float(w), iterations=int(iters), residual=float(res))


def lambert_w0_many(z) -> np.ndarray:
    """Vectorized W values (no per-point records)."""
    z = np.asarray(z, dtype=np.float64)
    if z.size and z.min() < 0.0:
        raise DomainError("lambert_w0_many requires z >= 0")
    out = np.empty(z.shape)
    flat_in = z.ravel()
    flat_out = out.ravel()
    with np.errstate(all="ignore"):
        for i in range(flat_in.size):
            flat_out[i] = core.lambert_w0_core(flat_in[i])[0]
    return out
