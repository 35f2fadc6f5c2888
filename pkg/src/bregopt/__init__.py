"""Bregman-distance optimization toolkit.

Legendre scalar kernels and separable Legendre functions, Bregman distances,
closed-form and numeric proximal maps, Bregman projectors, variable-distance
proximal point and cyclic projection solvers, and quasi-monotonicity
diagnostics over recorded traces.
"""

from ._numba import NUMBA_ENABLED, backend_name
from .errors import (
    BregoptError,
    DimensionMismatchError,
    DomainError,
    InfeasibleSetError,
    NoClosedFormError,
    NumericalFailureError,
    ScheduleError,
)
from .kernels import (
    KERNEL_NAMES,
    ScalarKernel,
    SeparableLegendre,
    bregman_distance,
    gradient,
    gradient_conjugate,
    kernel,
    kernel_value,
    separable,
)
from .lambert import LambertResult, lambert_w0, lambert_w0_many
from .monotone import (
    IterateTrace,
    MonotoneCertificate,
    check_quasi_monotone,
    check_stationary_quasi_monotone,
    df_distance_to_set,
    first_step_below,
    small_step_probe,
    step_distance_decay,
)
from .penalties import (
    PENALTY_NAMES,
    ScalarPenalty,
    parse_penalty,
    penalty,
    penalty_from_config,
)
from .prox import (
    CATALOG,
    BoxSet,
    HalfspaceSet,
    HyperplaneSet,
    ProxCatalogEntry,
    PythagorasCertificate,
    bregman_project,
    catalog_lookup,
    hf_halfspace_contains,
    prox_scalar,
    prox_scalar_closed,
    prox_scalar_numeric,
    prox_separable,
    pythagoras_check,
    set_from_config,
    validate_catalog,
)
from .schedules import (
    ControlMap,
    DistanceSchedule,
    ScheduleReport,
    control_index,
    schedule_from_config,
    validate_schedule,
)
from .solvers import (
    FeasibilityProblem,
    PpaProblem,
    StopConfig,
    problem_from_config,
    solve_feasibility,
    solve_ppa,
    stop_rule,
)

__version__ = "0.1.0"
