"""Iterative solvers: variable-distance proximal point and cyclic projections.

Both algorithms draw their per-iteration Legendre function f_n from a
distance schedule and record full traces for the monotonicity diagnostics.
The proximal point iteration applies a separable prox at each step,

    x_{n+1} = prox of gamma_n * phi under D^{f_n} at x_n,

and the feasibility solver applies the Bregman projector onto the set picked
by the control map.  Divergent or infeasible instances halt with an honest
reason; nothing is clamped.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BregoptError,
    DimensionMismatchError,
    DomainError,
    NumericalFailureError,
)
from .kernels import SeparableLegendre, bregman_distance
from .monotone import IterateTrace, df_distance_to_set
from .penalties import penalty_from_config
from .prox import bregman_project, prox_scalar, set_from_config
from .schedules import (
    ControlMap,
    DistanceSchedule,
    control_from_config,
    control_index,
    schedule_from_config,
    validate_schedule,
)

DEFAULT_STEP_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000

HALT_CONVERGED = "converged"
HALT_MAX_ITER = "max_iter"
HALT_NUMERICAL = "numerical_failure"


@dataclass
class StopConfig:
    """Stop rule thresholds.

    step_distance_tol applies to D^{f_n}(x_{n+1}, x_n) scaled by
    1 + |f_n(x_n)|; residual_tol applies to the unscaled feasibility residual
    max_i D^f(P_i x, x).
    """

    step_distance_tol: float | None = DEFAULT_STEP_TOL
    max_iter: int = DEFAULT_MAX_ITER
    residual_tol: float | None = None


def stop_rule(trace: IterateTrace, stop: StopConfig):
    """Return a halt reason string, or None to continue.

    Checks, in order: non-finite values in the last iterate, the tolerance
    criterion (step distance or residual), and the iteration cap.
    """
    n_steps = len(trace) - 1
    if n_steps >= 1:
        last = trace.iterates[-1]
        if not np.all(np.isfinite(last)):
            return HALT_NUMERICAL
        if (
            stop.step_distance_tol is not None
            and trace.step_distances
        ):
            f = trace.distance_fn(n_steps - 1)
            scale = 1.0 + abs(f.value(trace.iterates[n_steps - 1]))
            if trace.step_distances[-1] <= stop.step_distance_tol * scale:
                return HALT_CONVERGED
        if (
            stop.residual_tol is not None
            and trace.residuals
            and trace.residuals[-1] <= stop.residual_tol
        ):
            return HALT_CONVERGED
    if n_steps >= stop.max_iter:
        return HALT_MAX_ITER
    return None


@dataclass
class PpaProblem:
    """Proximal point instance: separable penalty phi(x) = sum_i phi_i(x_i).

    gammas is an explicit list whose last value repeats forever; its infimum
    must stay strictly positive.
    """

    schedule: DistanceSchedule
    penalties: list
    gammas: list
    x0: np.ndarray
    stop: StopConfig = field(default_factory=StopConfig)
    certified_solution: np.ndarray | None = None
    problem_id: str = "ppa"

    def __post_init__(self):
        self.x0 = np.asarray(self.x0, dtype=np.float64)
        if len(self.penalties) != self.schedule.m:
            raise DimensionMismatchError(
                f"{len(self.penalties)} penalties for m = {self.schedule.m}"
            )
        if self.x0.shape != (self.schedule.m,):
            raise DimensionMismatchError(
                f"x0 shape {self.x0.shape} != ({self.schedule.m},)"
            )
        self.gammas = [float(g) for g in self.gammas]
        if not self.gammas or min(self.gammas) <= 0.0:
            raise DomainError("gammas must be a nonempty list with inf > 0")
        if self.certified_solution is not None:
            self.certified_solution = np.asarray(
                self.certified_solution, dtype=np.float64
            )

    def gamma_at(self, n: int) -> float:
        return self.gammas[n] if n < len(self.gammas) else self.gammas[-1]

    def objective(self, x) -> float:
        return float(sum(p.value(v) for p, v in zip(self.penalties, x)))


def solve_ppa(problem: PpaProblem) -> IterateTrace:
    """Run the variable-distance proximal point iteration.

    Records per step the distance D^{f_n}(x_{n+1}, x_n), the objective value,
    and gamma_n.  Halts on the step-distance tolerance, the iteration cap, or
    non-finite values; prox failures raise with the iteration index attached.
    """
    sched = problem.schedule
    trace = IterateTrace(
        kernel=sched.kernel,
        eta=list(sched.eta),
        meta={"solver": "ppa", "problem_id": problem.problem_id},
    )
    x = problem.x0.copy()
    f0 = sched.distance_fn(0)
    bad = f0.interior_violation(x)
    if bad is not None:
        raise DomainError(f"x0 coordinate {bad}: {x[bad]!r} not interior")
    trace.append(x, sched.weights(0), objective=problem.objective(x))

    n = 0
    while True:
        reason = stop_rule(trace, problem.stop)
        if reason is not None:
            trace.meta["halt_reason"] = reason
            break
        f_n = sched.distance_fn(n)
        gamma_n = problem.gamma_at(n)
        try:
            x_next = np.array(
                [
                    prox_scalar(
                        f_n.kernels[i],
                        problem.penalties[i],
                        gamma_n / f_n.weights[i],
                        x[i],
                    )
                    for i in range(f_n.m)
                ]
            )
        except BregoptError as exc:
            raise NumericalFailureError(f"iteration {n}: {exc}") from exc
        if not np.all(np.isfinite(x_next)) or f_n.interior_violation(
            x_next
        ) is not None:
            # Record the failure without admitting the bad iterate.
            trace.meta["halt_reason"] = HALT_NUMERICAL
            break
        step = bregman_distance(f_n, x_next, x)
        n += 1
        trace.append(
            x_next,
            sched.weights(n),
            step_distance=step,
            objective=problem.objective(x_next),
            gamma=gamma_n,
        )
        x = x_next
    return trace


@dataclass
class FeasibilityProblem:
    """Find a common point of closed convex sets by cyclic Bregman projection."""

    schedule: DistanceSchedule
    sets: list
    control: ControlMap
    x0: np.ndarray
    stop: StopConfig = field(
        default_factory=lambda: StopConfig(
            step_distance_tol=None, residual_tol=1e-10
        )
    )
    certified_targets: list = field(default_factory=list)
    problem_id: str = "feasibility"

    def __post_init__(self):
        self.x0 = np.asarray(self.x0, dtype=np.float64)
        if self.x0.shape != (self.schedule.m,):
            raise DimensionMismatchError(
                f"x0 shape {self.x0.shape} != ({self.schedule.m},)"
            )
        if self.control.m != len(self.sets):
            raise DimensionMismatchError(
                f"control map covers {self.control.m} sets, got {len(self.sets)}"
            )
        self.certified_targets = [
            np.asarray(t, dtype=np.float64) for t in self.certified_targets
        ]

    def residual(self, f_base: SeparableLegendre, x) -> float:
        return max(df_distance_to_set(f_base, s, x) for s in self.sets)


def solve_feasibility(problem: FeasibilityProblem) -> IterateTrace:
    """Run the cyclic/quasi-cyclic Bregman projection iteration.

    At iteration n the iterate is projected onto the set picked by the
    control map under the current f_n.  The recorded residual is the worst
    Bregman distance to any set measured with the base (unit-weight) kernel;
    per-sweep residual monotonicity is not asserted.
    """
    sched = problem.schedule
    f_base = sched.base_fn()
    trace = IterateTrace(
        kernel=sched.kernel,
        eta=list(sched.eta),
        meta={"solver": "feasibility", "problem_id": problem.problem_id},
    )
    x = problem.x0.copy()
    bad = sched.distance_fn(0).interior_violation(x)
    if bad is not None:
        raise DomainError(f"x0 coordinate {bad}: {x[bad]!r} not interior")
    trace.append(x, sched.weights(0), residual=problem.residual(f_base, x))

    n = 0
    while True:
        reason = stop_rule(trace, problem.stop)
        if reason is not None:
            trace.meta["halt_reason"] = reason
            break
        f_n = sched.distance_fn(n)
        idx = control_index(problem.control, n)
        try:
            x_next = bregman_project(f_n, problem.sets[idx - 1], x)
        except BregoptError as exc:
            raise type(exc)(f"iteration {n} (set {idx}): {exc}") from exc
        if not np.all(np.isfinite(x_next)):
            trace.meta["halt_reason"] = HALT_NUMERICAL
            break
        step = bregman_distance(f_n, x_next, x)
        n += 1
        trace.append(
            x_next,
            sched.weights(n),
            step_distance=step,
            residual=problem.residual(f_base, x_next),
        )
        x = x_next
    return trace


# ---------------------------------------------------------------------------
# Problem JSON loading
# ---------------------------------------------------------------------------


def _stop_from_config(obj, default_residual=False) -> StopConfig:
    obj = obj or {}
    stop = StopConfig(
        step_distance_tol=obj.get(
            "step_distance_tol", None if default_residual else DEFAULT_STEP_TOL
        ),
        max_iter=int(obj.get("max_iter", DEFAULT_MAX_ITER)),
        residual_tol=obj.get("residual_tol", 1e-10 if default_residual else None),
    )
    return stop


def problem_from_config(cfg: dict):
    """Build a PpaProblem or FeasibilityProblem from the problem JSON."""
    ptype = cfg.get("type")
    if ptype not in ("ppa", "feasibility"):
        raise DomainError(f"unknown problem type {ptype!r}")
    x0 = np.asarray(cfg["x0"], dtype=np.float64)
    sched = schedule_from_config(cfg["schedule"], m=x0.size)
    report = validate_schedule(sched)
    if not report.ok:
        raise DomainError(
            f"invalid schedule at (n, i) = {report.first_violation}: "
            f"{report.reason}"
        )
    problem_id = cfg.get("problem_id", ptype or "problem")
    if ptype == "ppa":
        certified = cfg.get("certified_solution")
        if certified is not None and certified and isinstance(
            certified[0], (list, tuple)
        ):
            certified = certified[0]
        return PpaProblem(
            schedule=sched,
            penalties=[penalty_from_config(p) for p in cfg["penalties"]],
            gammas=cfg.get("gammas", [1.0]),
            x0=x0,
            stop=_stop_from_config(cfg.get("stop")),
            certified_solution=certified,
            problem_id=problem_id,
        )
    if ptype == "feasibility":
        sets = [set_from_config(s) for s in cfg["sets"]]
        control = control_from_config(
            cfg.get("control", {"kind": "cyclic"}), m=len(sets)
        )
        certified = cfg.get("certified_solution") or []
        if certified and not isinstance(certified[0], (list, tuple)):
            certified = [certified]
        return FeasibilityProblem(
            schedule=sched,
            sets=sets,
            control=control,
            x0=x0,
            stop=_stop_from_config(cfg.get("stop"), default_residual=True),
            certified_targets=certified,
            problem_id=problem_id,
        )
    raise DomainError(f"unknown problem type {ptype!r}")


def certified_targets(problem) -> list:
    if isinstance(problem, PpaProblem):
        return (
            [problem.certified_solution]
            if problem.certified_solution is not None
            else []
        )
    return list(problem.certified_targets)
