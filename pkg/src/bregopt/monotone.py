"""Monotonicity diagnostics over recorded iterate traces.

A trace stores the iterates x_n together with the per-iteration weight
vectors w_n defining f_n.  The quasi-monotone certificate measures, for a
target x, the observed per-step slack

    eps_n = max(0, D^{f_{n+1}}(x, x_{n+1}) - (1 + eta_n) D^{f_n}(x, x_n))

and passes when the total stays within a caller-supplied budget; the
stationary variant shares one slack sequence across a family of targets.
Budgets make the summability hypothesis falsifiable at trace scale instead of
asserting an unverifiable limit statement.
"""

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, DomainError
from .kernels import SeparableLegendre, bregman_distance, kernel
from .prox import bregman_project

TRACE_FORMAT = "bregopt-trace-v1"


@dataclass
class IterateTrace:
    """Recorded iterates plus per-step Bregman quantities.

    iterates[n] pairs with weights[n] (the weight vector of f_n);
    step_distances[n] = D^{f_n}(x_{n+1}, x_n) for n < len(iterates) - 1.
    objectives and gammas are optional per-iterate records.  meta carries
    solver name, problem id, halt reason, and a creation timestamp; the
    timestamp never reaches the serialized file so identical runs serialize
    byte-identically.
    """

    kernel: str
    eta: list = field(default_factory=list)
    iterates: list = field(default_factory=list)
    weights: list = field(default_factory=list)
    step_distances: list = field(default_factory=list)
    objectives: list | None = None
    gammas: list | None = None
    residuals: list | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.meta.setdefault("created_at", time.time())

    def __len__(self):
        return len(self.iterates)

    @property
    def m(self) -> int:
        return len(self.iterates[0]) if self.iterates else 0

    def distance_fn(self, n: int) -> SeparableLegendre:
        return SeparableLegendre(kernel(self.kernel), self.weights[n])

    def eta_at(self, n: int) -> float:
        return float(self.eta[n]) if n < len(self.eta) else 0.0

    def append(self, x, w, step_distance=None, objective=None, gamma=None,
               residual=None):
        x = np.asarray(x, dtype=np.float64)
        w = np.asarray(w, dtype=np.float64)
        f = SeparableLegendre(kernel(self.kernel), w)
        bad = f.interior_violation(x)
        if bad is not None:
            raise DomainError(
                f"iterate coordinate {bad}: {x[bad]!r} not interior for f_n"
            )
        self.iterates.append(x)
        self.weights.append(w)
        if step_distance is not None:
            self.step_distances.append(float(step_distance))
        if objective is not None:
            if self.objectives is None:
                self.objectives = []
            self.objectives.append(float(objective))
        if gamma is not None:
            if self.gammas is None:
                self.gammas = []
            self.gammas.append(float(gamma))
        if residual is not None:
            if self.residuals is None:
                self.residuals = []
            self.residuals.append(float(residual))

    # -- serialization ------------------------------------------------------

    def dump(self, path) -> None:
        """Write JSON lines: a meta header, then one record per iteration."""
        with open(path, "w") as fh:
            header = {
                "meta": {
                    "format": TRACE_FORMAT,
                    "kernel": self.kernel,
                    "m": self.m,
                    "eta": list(self.eta),
                    "solver": self.meta.get("solver"),
                    "problem_id": self.meta.get("problem_id"),
                    "halt_reason": self.meta.get("halt_reason"),
                }
            }
            fh.write(json.dumps(header) + "\n")
            for n, x in enumerate(self.iterates):
                rec = {
                    "n": n,
                    "x": [float(v) for v in x],
                    "w": [float(v) for v in self.weights[n]],
                    "step_distance": (
                        self.step_distances[n - 1] if n >= 1 else 0.0
                    ),
                }
                if self.objectives is not None:
                    rec["objective"] = self.objectives[n]
                if self.gammas is not None and n < len(self.gammas):
                    rec["gamma"] = self.gammas[n]
                fh.write(json.dumps(rec) + "\n")

    @classmethod
    def load(cls, path) -> "IterateTrace":
        with open(path) as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
        if not lines:
            raise ValueError(f"empty trace file: {path}")
        header = json.loads(lines[0])
        if "meta" not in header:
            raise ValueError(f"trace file missing meta header: {path}")
        meta = header["meta"]
        trace = cls(
            kernel=meta["kernel"],
            eta=list(meta.get("eta", [])),
            meta={
                "solver": meta.get("solver"),
                "problem_id": meta.get("problem_id"),
                "halt_reason": meta.get("halt_reason"),
            },
        )
        for ln in lines[1:]:
            rec = json.loads(ln)
            x = np.asarray(rec["x"], dtype=np.float64)
            w = np.asarray(rec["w"], dtype=np.float64)
            trace.iterates.append(x)
            trace.weights.append(w)
            if rec["n"] >= 1:
                trace.step_distances.append(float(rec["step_distance"]))
            if "objective" in rec:
                if trace.objectives is None:
                    trace.objectives = []
                trace.objectives.append(float(rec["objective"]))
            if "gamma" in rec:
                if trace.gammas is None:
                    trace.gammas = []
                trace.gammas.append(float(rec["gamma"]))
        return trace


@dataclass
class MonotoneCertificate:
    """Observed quasi-monotone slack along a trace.

    eps[n] is the per-step slack (shared across targets in the stationary
    variant); verdict is sum(eps) <= eps_budget.
    """

    eta: list
    eps: list
    sum_eps: float
    eps_budget: float
    verdict: bool

    def to_json(self) -> dict:
        return {
            "eta": list(self.eta),
            "eps": list(self.eps),
            "sum_eps": self.sum_eps,
            "eps_budget": self.eps_budget,
            "verdict": bool(self.verdict),
        }


def _target_distances(trace: IterateTrace, x) -> list:
    x = np.asarray(x, dtype=np.float64)
    if trace.m and x.shape != (trace.m,):
        raise DimensionMismatchError(
            f"target shape {x.shape} != ({trace.m},)"
        )
    if not trace.distance_fn(0).in_domain(x):
        raise DomainError(f"target {x!r} outside the kernel domain closure")
    return [
        bregman_distance(trace.distance_fn(n), x, trace.iterates[n])
        for n in range(len(trace))
    ]


def check_quasi_monotone(
    trace: IterateTrace, x, eps_budget: float
) -> MonotoneCertificate:
    """Certificate for a single target x in dom f."""
    return check_stationary_quasi_monotone(trace, [x], eps_budget)


def check_stationary_quasi_monotone(
    trace: IterateTrace, xs, eps_budget: float
) -> MonotoneCertificate:
    """Certificate with one shared slack sequence over a family of targets.

    eps_n is the maximum over targets of the per-step slack, matching the
    stationary ordering of quantifiers (one sequence works for every target).
    """
    if not xs:
        raise DomainError("need at least one target")
    if len(trace) < 1:
        raise DomainError("trace must contain at least one iterate")
    per_target = [_target_distances(trace, x) for x in xs]
    n_steps = len(trace) - 1
    eta = [trace.eta_at(n) for n in range(n_steps)]
    eps = []
    for n in range(n_steps):
        worst = 0.0
        for dist in per_target:
            bound = (1.0 + eta[n]) * dist[n]
            slack = dist[n + 1] - bound
            if np.isinf(dist[n + 1]) and np.isinf(bound):
                slack = 0.0
            worst = max(worst, slack)
        eps.append(max(0.0, worst))
    total = float(sum(eps))
    return MonotoneCertificate(
        eta=eta,
        eps=eps,
        sum_eps=total,
        eps_budget=float(eps_budget),
        verdict=bool(total <= eps_budget),
    )


def step_distance_decay(trace: IterateTrace) -> np.ndarray:
    """The series D^{f_n}(x_{n+1}, x_n); recomputed when not recorded."""
    if len(trace) < 2:
        raise DomainError("trace must contain at least two iterates")
    n_steps = len(trace) - 1
    if len(trace.step_distances) == n_steps:
        return np.asarray(trace.step_distances, dtype=np.float64)
    return np.array(
        [
            bregman_distance(
                trace.distance_fn(n), trace.iterates[n + 1], trace.iterates[n]
            )
            for n in range(n_steps)
        ]
    )


def first_step_below(trace: IterateTrace, tol: float):
    """Stop-rule helper: first n with D^{f_n}(x_{n+1}, x_n) <= tol, or None."""
    series = step_distance_decay(trace)
    hits = np.nonzero(series <= tol)[0]
    return int(hits[0]) if hits.size else None


def df_distance_to_set(f: SeparableLegendre, cset, x) -> float:
    """Bregman distance from x to the set: D^f(P^f_set(x), x).

    The projected point occupies the first distance slot (distances are
    asymmetric); zero iff x already lies in the set.
    """
    p = bregman_project(f, cset, x)
    return bregman_distance(f, p, x)


def small_step_probe(
    trace: IterateTrace, dist_factor: float = 1e-12, norm_tol: float = 1e-5
):
    """Empirical witness that vanishing step distances pin down the steps.

    Returns (n, step_distance, step_norm) for steps whose distance fell below
    dist_factor * scale yet whose Euclidean length exceeded norm_tol.  An
    empty list supports (never proves) the distance-to-norm condition at
    trace scale.
    """
    out = []
    series = step_distance_decay(trace)
    for n, d in enumerate(series):
        f = trace.distance_fn(n)
        scale = 1.0 + abs(f.value(trace.iterates[n]))
        if d <= dist_factor * scale:
            nrm = float(
                np.linalg.norm(trace.iterates[n + 1] - trace.iterates[n])
            )
            if nrm > norm_tol:
                out.append((n, float(d), nrm))
    return out
