"""Variable distance schedules and control maps.

A distance schedule realizes a sequence of Legendre functions f_n as positive
diagonal weights on one fixed kernel: f_n(x) = sum_i w_{n,i} theta(x_i).
Coordinatewise weight bounds then certify the two ordering hypotheses the
solvers rely on,

    w_{n,i} >= alpha            (f_n dominates alpha * f), and
    w_{n+1,i} <= (1+eta_n) w_{n,i}   ((1+eta_n) f_n dominates f_{n+1}),

with (eta_n) a summable nonnegative sequence given as an explicit finite list
plus a zero tail.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ScheduleError
from .kernels import SeparableLegendre, kernel

DEFAULT_VALIDATION_WINDOW = 200


def _constant_weights(value, m):
    w = np.asarray(value, dtype=np.float64)
    if w.ndim == 0:
        w = np.full(m, float(w))
    if w.shape != (m,):
        raise DomainError(f"constant weights shape {w.shape} != ({m},)")

    def gen(n):
        return w.copy()

    return gen


def _geometric_decay_weights(base, coeff, ratio, m):
    if not (0.0 < ratio < 1.0):
        raise DomainError(f"geometric_decay ratio must be in (0,1), got {ratio!r}")

    def gen(n):
        return np.full(m, base + coeff * ratio**n)

    return gen


def _explicit_weights(values, m):
    rows = [np.asarray(v, dtype=np.float64) for v in values]
    for r in rows:
        if r.shape != (m,):
            raise DomainError(f"explicit weight row shape {r.shape} != ({m},)")

    def gen(n):
        return rows[n].copy()

    return gen, len(rows)


@dataclass
class ScheduleReport:
    ok: bool
    first_violation: tuple | None = None
    reason: str = ""
    checked_horizon: int = 0


@dataclass
class DistanceSchedule:
    """The weight sequence (w_n) defining f_n over a shared kernel.

    eta is the explicit slack list (zero beyond its end); alpha the uniform
    lower weight bound; beta an optional uniform upper bound; horizon the
    last iteration the generator is defined for (None = unbounded).
    """

    kernel: str
    m: int
    weights_config: dict
    eta: list = field(default_factory=list)
    alpha: float = 1.0
    beta: float | None = None
    horizon: int | None = None

    def __post_init__(self):
        kernel(self.kernel)  # name check
        self.eta = [float(e) for e in self.eta]
        if any(e < 0 for e in self.eta):
            raise DomainError("eta entries must be nonnegative")
        cfg = dict(self.weights_config)
        kind = cfg.pop("kind", None)
        if kind == "constant":
            self._gen = _constant_weights(cfg.get("value", 1.0), self.m)
        elif kind == "geometric_decay":
            self._gen = _geometric_decay_weights(
                cfg.get("base", 1.0), cfg.get("coeff", 0.0),
                cfg.get("ratio", 0.5), self.m,
            )
        elif kind == "explicit":
            self._gen, n_rows = _explicit_weights(cfg["values"], self.m)
            self.horizon = n_rows if self.horizon is None else min(self.horizon, n_rows)
        else:
            raise DomainError(f"unknown weights kind {kind!r}")

    @property
    def eta_sum(self) -> float:
        return float(sum(self.eta))

    def eta_at(self, n: int) -> float:
        return self.eta[n] if n < len(self.eta) else 0.0

    def weights(self, n: int) -> np.ndarray:
        if n < 0:
            raise ScheduleError(f"iteration index must be >= 0, got {n}")
        if self.horizon is not None and n >= self.horizon:
            raise ScheduleError(
                f"schedule horizon exceeded: iteration {n} >= {self.horizon}"
            )
        return self._gen(n)

    def distance_fn(self, n: int) -> SeparableLegendre:
        """The separable Legendre function f_n."""
        return SeparableLegendre(kernel(self.kernel), self.weights(n))

    def base_fn(self) -> SeparableLegendre:
        """The comparison function f (unit weights)."""
        return SeparableLegendre(kernel(self.kernel), np.ones(self.m))


def schedule_from_config(obj, m: int) -> DistanceSchedule:
    """Build a schedule from the problem-JSON 'schedule' object."""
    return DistanceSchedule(
        kernel=obj["kernel"],
        m=m,
        weights_config=obj.get("weights", {"kind": "constant", "value": 1.0}),
        eta=obj.get("eta", []),
        alpha=float(obj.get("alpha", 1.0)),
        beta=(None if obj.get("beta") is None else float(obj["beta"])),
        horizon=obj.get("horizon"),
    )


def validate_schedule(s: DistanceSchedule, upto: int | None = None) -> ScheduleReport:
    """Check the schedule invariants up to the horizon (finite certification).

    Verifies, for every n in the window and every coordinate i:
    alpha <= w_{n,i}, w_{n,i} <= beta (when set), and
    w_{n+1,i} <= (1+eta_n) * w_{n,i}.  Reports the first violating (n, i).
    """
    if upto is None:
        upto = s.horizon if s.horizon is not None else max(
            DEFAULT_VALIDATION_WINDOW, len(s.eta) + 1
        )
    upto = min(upto, s.horizon) if s.horizon is not None else upto
    w_prev = None
    for n in range(upto):
        w = s.weights(n)
        for i in range(s.m):
            if not w[i] >= s.alpha:
                return ScheduleReport(
                    False, (n, i), f"w[{n},{i}] = {w[i]!r} < alpha = {s.alpha!r}", n
                )
            if s.beta is not None and not w[i] <= s.beta:
                return ScheduleReport(
                    False, (n, i), f"w[{n},{i}] = {w[i]!r} > beta = {s.beta!r}", n
                )
        if w_prev is not None:
            growth = (1.0 + s.eta_at(n - 1)) * w_prev
            for i in range(s.m):
                if w[i] > growth[i] * (1.0 + 1e-15):
                    return ScheduleReport(
                        False,
                        (n - 1, i),
                        f"w[{n},{i}] = {w[i]!r} > (1+eta_{n-1}) w[{n-1},{i}] "
                        f"= {growth[i]!r}",
                        n,
                    )
        w_prev = w
    return ScheduleReport(True, None, "", upto)


@dataclass
class ControlMap:
    """Rule selecting which set is processed at iteration n (1-based indices).

    kinds: 'cyclic' (index 1 + n mod m), 'explicit' (finite lookup table),
    'quasi_cyclic' (lookup table with declared recurrence bounds M_j: every
    index j appears in every window of length M_j).
    """

    kind: str
    m: int
    indices: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.m < 1:
            raise DomainError("control map needs m >= 1 sets")
        if self.kind == "cyclic":
            self.bounds = {j: self.m for j in range(1, self.m + 1)}
            return
        if self.kind not in ("explicit", "quasi_cyclic"):
            raise DomainError(f"unknown control map kind {self.kind!r}")
        self.indices = [int(i) for i in self.indices]
        if not self.indices:
            raise DomainError(f"{self.kind} control map needs an index list")
        if any(not 1 <= j <= self.m for j in self.indices):
            raise DomainError("control indices must lie in 1..m")
        if set(self.indices) != set(range(1, self.m + 1)):
            raise DomainError("control map must cover every set index")
        if self.kind == "quasi_cyclic":
            self.bounds = {int(j): int(M) for j, M in dict(self.bounds).items()}
            report = self.window_report()
            if not report[0]:
                raise DomainError(f"quasi-cyclic bound violated: {report[1]}")
        else:
            self.bounds = self._empirical_bounds()

    def _empirical_bounds(self):
        out = {}
        for j in range(1, self.m + 1):
            hits = [n for n, v in enumerate(self.indices) if v == j]
            gaps = [b - a for a, b in zip(hits, hits[1:])]
            lead = hits[0] + 1
            trail = len(self.indices) - hits[-1]
            out[j] = max([lead, trail] + gaps)
        return out

    def window_report(self):
        """Check j in {i(n), ..., i(n+M_j-1)} over the table (or a 10*m window
        for cyclic maps)."""
        horizon = len(self.indices) if self.indices else 10 * self.m
        for j, M in self.bounds.items():
            for n in range(0, horizon - M + 1):
                window = [control_index(self, n + t) for t in range(M)]
                if j not in window:
                    return False, f"index {j} missing from window [{n}, {n + M - 1}]"
        return True, ""


def control_index(c: ControlMap, n: int) -> int:
    """The (1-based) set index processed at iteration n."""
    if n < 0:
        raise ScheduleError(f"iteration index must be >= 0, got {n}")
    if c.kind == "cyclic":
        return 1 + n % c.m
    if n >= len(c.indices):
        raise ScheduleError(
            f"control map exhausted: iteration {n} >= table length "
            f"{len(c.indices)}"
        )
    return c.indices[n]


def control_from_config(obj, m: int) -> ControlMap:
    kind = obj.get("kind", "cyclic")
    return ControlMap(
        kind=kind,
        m=m,
        indices=obj.get("indices", []),
        bounds=obj.get("bounds", {}),
    )
