import json
from importlib import resources

import numpy as np
import pytest

from bregopt.cli import main

PROBLEMS = [
    "kl_target.json",
    "kl_target_variable.json",
    "hyperplanes_energy.json",
    "hyperplanes_entropic.json",
    "mixed_sets.json",
]


def problem_path(tmp_path, name):
    text = resources.files("bregopt.problems").joinpath(name).read_text()
    p = tmp_path / name
    p.write_text(text)
    return p


def targets_of(name):
    text = resources.files("bregopt.problems").joinpath(name).read_text()
    cert = json.loads(text)["certified_solution"]
    if cert and not isinstance(cert[0], list):
        cert = [cert]
    return cert


class TestProxEval:
    def test_catalog_example(self, capsys):
        code = main(
            [
                "prox-eval",
                "--kernel", "burg",
                "--penalty", "scaled_burg:gamma=0.5",
                "--xi", "2",
            ]
        )
        out = capsys.readouterr().out.splitlines()
        assert code == 0
        assert float(out[0]) == pytest.approx(3.0)
        assert out[1].startswith("residual")

    def test_zero_penalty(self, capsys):
        code = main(
            [
                "prox-eval",
                "--kernel", "energy",
                "--penalty", "zero",
                "--gamma", "1",
                "--xi", "7",
            ]
        )
        assert code == 0
        assert float(capsys.readouterr().out.splitlines()[0]) == 7.0

    def test_numeric_flag(self, capsys):
        code = main(
            [
                "prox-eval",
                "--kernel", "boltzmann_shannon",
                "--penalty", "power:p=1",
                "--xi", "2",
                "--numeric",
            ]
        )
        assert code == 0
        got = float(capsys.readouterr().out.splitlines()[0])
        assert got == pytest.approx(2.0 * np.exp(-1.0), abs=1e-8)

    def test_malformed_penalty(self, capsys):
        code = main(
            ["prox-eval", "--kernel", "burg", "--penalty", "scaled_burg:gamma",
             "--xi", "2"]
        )
        assert code == 2

    def test_unknown_kernel(self):
        assert main(
            ["prox-eval", "--kernel", "huber", "--penalty", "zero", "--xi", "1"]
        ) == 2

    def test_out_of_domain_input(self):
        assert main(
            ["prox-eval", "--kernel", "burg", "--penalty", "zero", "--xi", "-1"]
        ) == 2

    def test_numerical_failure_exit_3(self, capsys):
        code = main(
            [
                "prox-eval",
                "--kernel", "burg",
                "--penalty", "burg_linear_inverse:gamma=1,omega=-1,alpha=1",
                "--xi", "2",
            ]
        )
        capsys.readouterr()
        assert code == 3


class TestSolveAndCheck:
    @pytest.mark.parametrize("name", PROBLEMS)
    def test_round_trip(self, tmp_path, capsys, name):
        prob = problem_path(tmp_path, name)
        trace = tmp_path / "trace.jsonl"
        summary = tmp_path / "summary.json"
        code = main(
            ["solve", "--problem", str(prob), "--trace", str(trace),
             "--summary", str(summary)]
        )
        capsys.readouterr()
        assert code == 0
        info = json.loads(summary.read_text())
        assert info["halt_reason"] == "converged"

        code = main(
            ["check-trace", "--trace", str(trace),
             "--targets", json.dumps(targets_of(name))]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert json.loads(out)["verdict"] is True

        if name == "hyperplanes_entropic.json":
            last = json.loads(trace.read_text().splitlines()[-1])
            np.testing.assert_allclose(
                last["x"], [2.0 / 3.0, 1.0 / 3.0], atol=1e-6
            )

    def test_trace_bytes_deterministic(self, tmp_path, capsys):
        prob = problem_path(tmp_path, "kl_target.json")
        t1, t2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        assert main(["solve", "--problem", str(prob), "--trace", str(t1)]) == 0
        assert main(["solve", "--problem", str(prob), "--trace", str(t2)]) == 0
        capsys.readouterr()
        assert t1.read_bytes() == t2.read_bytes()

    def test_divergent_problem_not_reported_converged(self, tmp_path, capsys):
        prob = problem_path(tmp_path, "burg_divergent.json")
        trace = tmp_path / "trace.jsonl"
        summary = tmp_path / "summary.json"
        code = main(
            ["solve", "--problem", str(prob), "--trace", str(trace),
             "--summary", str(summary)]
        )
        capsys.readouterr()
        assert code == 1
        assert json.loads(summary.read_text())["halt_reason"] == "max_iter"

    def test_corrupted_trace_fails(self, tmp_path, capsys):
        prob = problem_path(tmp_path, "kl_target.json")
        trace = tmp_path / "trace.jsonl"
        main(["solve", "--problem", str(prob), "--trace", str(trace)])
        lines = trace.read_text().splitlines()
        rec = json.loads(lines[4])
        rec["x"] = [90.0, 90.0, 90.0]
        lines[4] = json.dumps(rec)
        trace.write_text("\n".join(lines) + "\n")
        code = main(
            ["check-trace", "--trace", str(trace),
             "--targets", "[[1.0, 0.5, 2.0]]"]
        )
        capsys.readouterr()
        assert code == 1

    def test_empty_trace_rejected(self, tmp_path, capsys):
        trace = tmp_path / "empty.jsonl"
        trace.write_text("")
        code = main(
            ["check-trace", "--trace", str(trace), "--targets", "[[1.0]]"]
        )
        capsys.readouterr()
        assert code == 2

    def test_invalid_schedule_exits_2(self, tmp_path, capsys):
        cfg = {
            "type": "ppa",
            "schedule": {
                "kernel": "boltzmann_shannon",
                "weights": {"kind": "explicit", "values": [[1.0], [3.0]]},
                "eta": [0.5],
            },
            "penalties": [{"kind": "zero"}],
            "gammas": [1.0],
            "x0": [1.0],
        }
        prob = tmp_path / "bad.json"
        prob.write_text(json.dumps(cfg))
        code = main(
            ["solve", "--problem", str(prob), "--trace", str(tmp_path / "t")]
        )
        capsys.readouterr()
        assert code == 2

    def test_schema_violation_exits_2(self, tmp_path, capsys):
        prob = tmp_path / "bad.json"
        prob.write_text(json.dumps({"type": "ppa", "x0": [1.0]}))
        code = main(
            ["solve", "--problem", str(prob), "--trace", str(tmp_path / "t")]
        )
        capsys.readouterr()
        assert code == 2

    def test_missing_problem_file(self, capsys):
        code = main(
            ["solve", "--problem", "/nonexistent.json", "--trace", "/tmp/t"]
        )
        capsys.readouterr()
        assert code == 2

    def test_solver_failure_exits_3(self, tmp_path, capsys):
        cfg = {
            "type": "ppa",
            "schedule": {"kernel": "burg",
                         "weights": {"kind": "constant", "value": 1.0}},
            "penalties": [
                {"kind": "burg_linear_inverse", "gamma": 1.0, "omega": -1.0,
                 "alpha": 1.0}
            ],
            "gammas": [1.0],
            "x0": [2.0],
        }
        prob = tmp_path / "fail.json"
        prob.write_text(json.dumps(cfg))
        code = main(
            ["solve", "--problem", str(prob), "--trace", str(tmp_path / "t")]
        )
        capsys.readouterr()
        assert code == 3


class TestValidateCatalog:
    def test_csv_shape_and_exit(self, tmp_path, capsys):
        out = tmp_path / "audit.csv"
        code = main(
            ["validate-catalog", "--draws", "5", "--seed", "42",
             "--out", str(out)]
        )
        text = capsys.readouterr().out
        assert code == 0
        lines = text.strip().splitlines()
        header = lines[0].split(",")
        assert header == [
            "entry_id", "kernel", "penalty", "draws", "max_abs_err",
            "status", "note",
        ]
        assert out.read_text() == text
        assert len(lines) >= 2

    def test_seed_invariant_statuses(self, capsys):
        main(["validate-catalog", "--draws", "5", "--seed", "42"])
        a = capsys.readouterr().out
        main(["validate-catalog", "--draws", "5", "--seed", "7"])
        b = capsys.readouterr().out

        def statuses(text):
            import csv as _csv
            import io as _io

            rows = list(_csv.reader(_io.StringIO(text)))
            return [(r[0], r[5]) for r in rows[1:]]

        assert statuses(a) == statuses(b)
