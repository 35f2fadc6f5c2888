"""Command-line front end.

Subcommands: ``prox-eval`` (evaluate one scalar proximal map), ``solve``
(run a problem JSON and write a trace), ``validate-catalog`` (audit the
closed-form catalog against the oracle), ``check-trace`` (certify a recorded
trace against targets).

Exit codes: 0 success / verdict true / converged; 1 verdict false or halted
without convergence; 2 input error; 3 numerical failure.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import _scalar as core
from .errors import (
    BregoptError,
    DomainError,
    NoClosedFormError,
    NumericalFailureError,
)
from .kernels import KERNEL_NAMES, kernel
from .monotone import IterateTrace, check_stationary_quasi_monotone
from .penalties import parse_penalty
from .prox import prox_scalar_closed, prox_scalar_numeric, validate_catalog
from .solvers import (
    HALT_CONVERGED,
    HALT_MAX_ITER,
    PpaProblem,
    problem_from_config,
    solve_feasibility,
    solve_ppa,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

PROBLEM_SCHEMA = {
    "type": "object",
    "required": ["type", "schedule", "x0"],
    "properties": {
        "type": {"enum": ["ppa", "feasibility"]},
        "problem_id": {"type": "string"},
        "schedule": {
            "type": "object",
            "required": ["kernel"],
            "properties": {
                "kernel": {"enum": list(KERNEL_NAMES)},
                "weights": {"type": "object"},
                "eta": {"type": "array", "items": {"type": "number", "minimum": 0}},
                "alpha": {"type": "number", "exclusiveMinimum": 0},
                "beta": {"type": ["number", "null"]},
                "horizon": {"type": ["integer", "null"]},
            },
        },
        "penalties": {"type": "array", "minItems": 1},
        "sets": {"type": "array", "minItems": 1},
        "control": {"type": "object"},
        "gammas": {
            "type": "array",
            "items": {"type": "number", "exclusiveMinimum": 0},
            "minItems": 1,
        },
        "x0": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        "stop": {"type": "object"},
        "certified_solution": {"type": "array"},
    },
    "allOf": [
        {
            "if": {"properties": {"type": {"const": "ppa"}}},
            "then": {"required": ["penalties", "gammas"]},
        },
        {
            "if": {"properties": {"type": {"const": "feasibility"}}},
            "then": {"required": ["sets"]},
        },
    ],
}


def _cmd_prox_eval(args) -> int:
    try:
        kern = kernel(args.kernel)
        pen = parse_penalty(args.penalty)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.numeric:
            eta = prox_scalar_numeric(kern, pen, args.gamma, args.xi, tol=args.tol)
        else:
            try:
                eta = prox_scalar_closed(kern, pen, args.gamma, args.xi)
            except NoClosedFormError:
                eta = prox_scalar_numeric(
                    kern, pen, args.gamma, args.xi, tol=args.tol
                )
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BregoptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    try:
        pa, pb, pc = pen.packed()
        resid = abs(
            args.gamma * float(core.pen_deriv(pen.code, pa, pb, pc, np.float64(eta)))
            + kern.deriv(eta)
            - kern.deriv(args.xi)
        )
        resid_text = f"{resid:.3e}"
    except BregoptError:
        resid_text = "n/a"
    print(eta)
    print(f"residual {resid_text}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    import jsonschema

    try:
        with open(args.problem) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read problem file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        jsonschema.validate(cfg, PROBLEM_SCHEMA)
        problem = problem_from_config(cfg)
    except (jsonschema.ValidationError, DomainError, KeyError) as exc:
        print(f"error: invalid problem: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BregoptError as exc:
        print(f"error: invalid problem: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if isinstance(problem, PpaProblem):
            trace = solve_ppa(problem)
            final = trace.step_distances[-1] if trace.step_distances else 0.0
        else:
            trace = solve_feasibility(problem)
            final = trace.residuals[-1] if trace.residuals else 0.0
    except NumericalFailureError as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except BregoptError as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    trace.dump(args.trace)
    summary = {
        "iters": len(trace) - 1,
        "final_residual_or_step": final,
        "halt_reason": trace.meta.get("halt_reason"),
    }
    text = json.dumps(summary, indent=2)
    if args.summary:
        with open(args.summary, "w") as fh:
            fh.write(text + "\n")
    print(text)
    reason = trace.meta.get("halt_reason")
    if reason == HALT_CONVERGED:
        return EXIT_OK
    if reason == HALT_MAX_ITER:
        return EXIT_FALSE
    return EXIT_NUMERICAL


def catalog_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["entry_id", "kernel", "penalty", "draws", "max_abs_err", "status", "note"]
    )
    for r in rows:
        writer.writerow(
            [
                r.entry_id,
                r.kernel,
                r.penalty,
                r.draws,
                f"{r.max_abs_err:.3e}",
                r.status,
                r.note,
            ]
        )
    return buf.getvalue()


def _cmd_validate_catalog(args) -> int:
    rows = validate_catalog(draws=args.draws, seed=args.seed)
    text = catalog_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(text, end="")
    bad = [r for r in rows if r.status == "unvalidated"]
    if bad:
        print(
            f"{len(bad)} entries unvalidated: "
            + ", ".join(r.entry_id for r in bad),
            file=sys.stderr,
        )
        return EXIT_FALSE
    return EXIT_OK


def _cmd_check_trace(args) -> int:
    try:
        trace = IterateTrace.load(args.trace)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: cannot parse trace: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.targets_file:
            with open(args.targets_file) as fh:
                targets = json.load(fh)
        else:
            targets = json.loads(args.targets)
        targets = np.asarray(targets, dtype=np.float64)
        if targets.ndim == 1:
            targets = targets[None, :]
        if targets.ndim != 2 or targets.shape[1] != trace.m:
            raise ValueError(
                f"targets must be vectors of dimension {trace.m}"
            )
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: invalid targets: {exc}", file=sys.stderr)
        return EXIT_USAGE
    budget = args.budget
    if budget is None:
        budget = 1e-8 * max(1, len(trace) - 1)
    cert = check_stationary_quasi_monotone(trace, list(targets), budget)
    print(json.dumps(cert.to_json(), indent=2))
    return EXIT_OK if cert.verdict else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bregopt",
        description="Bregman-distance optimization toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prox-eval", help="evaluate one scalar proximal map")
    p.add_argument("--kernel", required=True, help=f"one of {KERNEL_NAMES}")
    p.add_argument(
        "--penalty",
        required=True,
        help="penalty spec, e.g. scaled_burg:gamma=0.5 or zero",
    )
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--numeric", action="store_true", help="force the numeric path")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_prox_eval)

    p = sub.add_parser("solve", help="run a problem JSON, write a JSONL trace")
    p.add_argument("--problem", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--summary", default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser(
        "validate-catalog", help="audit prox closed forms against the oracle"
    )
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--draws", type=int, default=200)
    p.add_argument("--out", default=None, help="also write the CSV here")
    p.set_defaults(func=_cmd_validate_catalog)

    p = sub.add_parser("check-trace", help="certify a trace against targets")
    p.add_argument("--trace", required=True)
    p.add_argument(
        "--targets", default=None, help="JSON array of target vectors"
    )
    p.add_argument("--targets-file", default=None)
    p.add_argument("--budget", type=float, default=None)
    p.set_defaults(func=_cmd_check_trace)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check-trace" and not (args.targets or args.targets_file):
        parser.error("check-trace needs --targets or --targets-file")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
