"""Scalar convex penalties for proximal maps.

Each penalty is proper, lower semicontinuous and convex on its stated domain.
Config/CLI names follow the pattern ``kind{param,...}``, e.g.
``linear_entropy{omega}``, ``scaled_burg{gamma}``; a CLI argument string looks
like ``scaled_burg:gamma=0.5``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _scalar as core
from .errors import DomainError

# kind -> (core code, ordered parameter names, open domain (lo, hi),
#          {boundary point: closure value expression})
_SPECS = {
    "zero": (core.PEN_ZERO, (), (-np.inf, np.inf)),
    "linear_entropy": (core.PEN_LINEAR_ENTROPY, ("omega",), (0.0, np.inf)),
    "power": (core.PEN_POWER, ("p",), (-np.inf, np.inf)),
    "neg_power": (core.PEN_NEG_POWER, ("p",), (0.0, np.inf)),
    "neg_root": (core.PEN_NEG_ROOT, ("p",), (0.0, np.inf)),
    "one_minus_entropy": (core.PEN_ONE_MINUS_ENTROPY, (), (-np.inf, 1.0)),
    "scaled_burg": (core.PEN_SCALED_BURG, ("gamma",), (0.0, np.inf)),
    "burg_linear_inverse": (
        core.PEN_BURG_LINEAR_INVERSE,
        ("gamma", "omega", "alpha"),
        (0.0, np.inf),
    ),
    "burg_power": (core.PEN_BURG_POWER, ("gamma", "alpha", "p"), (0.0, np.inf)),
    "inverse_power": (core.PEN_INVERSE_POWER, ("alpha", "p"), (0.0, np.inf)),
    "hellinger_self": (core.PEN_HELLINGER_SELF, (), (-1.0, 1.0)),
    "kl_to_target": (core.PEN_KL_TARGET, ("c",), (0.0, np.inf)),
}

PENALTY_NAMES = tuple(_SPECS)


def _closure_value(kind: str, params: dict, endpoint: float) -> float:
    """Finite closure value of the penalty at a domain endpoint, else +inf."""
    if kind in ("linear_entropy", "neg_root") and endpoint == 0.0:
        return 0.0
    if kind == "one_minus_entropy" and endpoint == 1.0:
        return 1.0
    if kind == "hellinger_self" and endpoint in (-1.0, 1.0):
        return 0.0
    if kind == "kl_to_target" and endpoint == 0.0:
        return params["c"]
    if kind == "power":
        return np.inf  # domain is all of R; endpoints unreachable
    return np.inf


@dataclass(frozen=True)
class ScalarPenalty:
    """A 1-D convex penalty identified by kind plus parameters."""

    kind: str
    params: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in _SPECS:
            raise DomainError(
                f"unknown penalty {self.kind!r}; expected one of {PENALTY_NAMES}"
            )
        names = _SPECS[self.kind][1]
        got = tuple(k for k, _ in self.params)
        if got != names:
            raise DomainError(
                f"{self.kind} expects parameters {names}, got {got}"
            )
        _validate_params(self.kind, dict(self.params))

    @property
    def code(self) -> int:
        return _SPECS[self.kind][0]

    @property
    def lo(self) -> float:
        return _SPECS[self.kind][2][0]

    @property
    def hi(self) -> float:
        return _SPECS[self.kind][2][1]

    def param(self, name: str) -> float:
        return dict(self.params)[name]

    def packed(self):
        """Parameters padded to the (pa, pb, pc) slots of the numeric core."""
        vals = [v for _, v in self.params]
        while len(vals) < 3:
            vals.append(0.0)
        return vals[0], vals[1], vals[2]

    def is_interior(self, xi: float) -> bool:
        return self.lo < xi < self.hi

    def value(self, xi: float) -> float:
        """phi(xi) as an extended real."""
        xi = float(xi)
        if not np.isfinite(xi):
            return np.inf
        pa, pb, pc = self.packed()
        if self.is_interior(xi):
            with np.errstate(all="ignore"):
                return float(core.pen_value(self.code, pa, pb, pc, np.float64(xi)))
        if xi in (self.lo, self.hi):
            return _closure_value(self.kind, dict(self.params), xi)
        return np.inf

    def deriv(self, xi: float) -> float:
        if not self.is_interior(xi):
            raise DomainError(f"{self.kind}: derivative undefined at {xi!r}")
        pa, pb, pc = self.packed()
        return float(core.pen_deriv(self.code, pa, pb, pc, np.float64(xi)))

    def spec_string(self) -> str:
        if not self.params:
            return self.kind
        inner = ",".join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.kind}:{inner}"

    def __repr__(self):
        return f"ScalarPenalty({self.spec_string()!r})"


def _validate_params(kind: str, p: dict) -> None:
    if kind in ("power", "neg_power") and not p["p"] >= 1.0:
        raise DomainError(f"{kind} requires p >= 1, got {p['p']!r}")
    if kind == "neg_root" and not (0.0 < p["p"] < 1.0):
        raise DomainError(f"neg_root requires p in (0, 1), got {p['p']!r}")
    if kind == "scaled_burg" and not p["gamma"] > 0.0:
        raise DomainError(f"scaled_burg requires gamma > 0, got {p['gamma']!r}")
    if kind in ("burg_linear_inverse", "burg_power") and (
        p["gamma"] < 0.0 or p["alpha"] < 0.0
    ):
        raise DomainError(f"{kind} requires gamma, alpha >= 0")
    if kind == "burg_power" and not p["p"] >= 1.0:
        raise DomainError(f"burg_power requires p >= 1, got {p['p']!r}")
    if kind == "inverse_power" and (p["alpha"] < 0.0 or not p["p"] >= 1.0):
        raise DomainError("inverse_power requires alpha >= 0 and p >= 1")
    if kind == "kl_to_target" and not p["c"] > 0.0:
        raise DomainError(f"kl_to_target requires c > 0, got {p['c']!r}")


def penalty(kind: str, **params) -> ScalarPenalty:
    """Build a ScalarPenalty; parameter names must match the kind's spec."""
    if kind not in _SPECS:
        raise DomainError(
            f"unknown penalty {kind!r}; expected one of {PENALTY_NAMES}"
        )
    names = _SPECS[kind][1]
    missing = [n for n in names if n not in params]
    extra = [n for n in params if n not in names]
    if missing or extra:
        raise DomainError(
            f"{kind} expects parameters {names}; missing {missing}, extra {extra}"
        )
    return ScalarPenalty(kind, tuple((n, float(params[n])) for n in names))


def parse_penalty(spec: str) -> ScalarPenalty:
    """Parse a CLI/config penalty string like 'scaled_burg:gamma=0.5'."""
    spec = spec.strip()
    if ":" in spec:
        kind, _, rest = spec.partition(":")
        kwargs = {}
        for item in rest.split(","):
            if not item:
                continue
            if "=" not in item:
                raise DomainError(f"malformed penalty parameter {item!r} in {spec!r}")
            key, _, val = item.partition("=")
            try:
                kwargs[key.strip()] = float(val)
            except ValueError:
                raise DomainError(
                    f"non-numeric penalty parameter {item!r} in {spec!r}"
                ) from None
        return penalty(kind.strip(), **kwargs)
    return penalty(spec)


def penalty_from_config(obj) -> ScalarPenalty:
    """Build a penalty from a JSON-style mapping {'kind': ..., params...}."""
    if isinstance(obj, str):
        return parse_penalty(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DomainError(f"penalty config must carry a 'kind': {obj!r}")
    params = {k: v for k, v in obj.items() if k != "kind"}
    return penalty(obj["kind"], **params)
