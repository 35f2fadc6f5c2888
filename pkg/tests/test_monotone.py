import numpy as np
import pytest

from bregopt import (
    BoxSet,
    HalfspaceSet,
    HyperplaneSet,
    IterateTrace,
    bregman_distance,
    check_quasi_monotone,
    check_stationary_quasi_monotone,
    df_distance_to_set,
    first_step_below,
    separable,
    small_step_probe,
    step_distance_decay,
)


def constant_trace(x, n, kernel="boltzmann_shannon"):
    trace = IterateTrace(kernel=kernel)
    for _ in range(n):
        trace.append(np.asarray(x, float), np.ones(len(x)))
    return trace


class TestQuasiMonotone:
    def test_constant_trace_zero_slack(self):
        x = [1.0, 2.0]
        trace = constant_trace(x, 6)
        cert = check_quasi_monotone(trace, x, eps_budget=0.0)
        assert cert.verdict
        assert cert.sum_eps == 0.0
        assert all(e == 0.0 for e in cert.eps)

    def test_injected_jump_fails(self):
        trace = constant_trace([1.0, 1.0], 3)
        trace.append(np.array([50.0, 50.0]), np.ones(2))
        trace.append(np.array([1.0, 1.0]), np.ones(2))
        cert = check_quasi_monotone(trace, [1.0, 1.0], eps_budget=1e-6)
        assert not cert.verdict
        assert cert.sum_eps > 1.0

    def test_eta_absorbs_growth(self):
        # Distance grows by exactly 50% in one step; eta = 0.5 absorbs it.
        trace = IterateTrace(kernel="energy", eta=[0.5])
        trace.append(np.array([1.0]), np.ones(1))
        # D(0, x) = x^2/2: pick the next point so the distance grows 1.5x.
        trace.append(np.array([np.sqrt(1.5)]), np.ones(1))
        target = [0.0]
        assert check_quasi_monotone(trace, target, 1e-12).verdict
        trace.eta = [0.0]
        assert not check_quasi_monotone(trace, target, 1e-12).verdict

    def test_stationary_single_target_reduces(self):
        trace = constant_trace([0.5, 0.5], 4)
        a = check_quasi_monotone(trace, [0.4, 0.6], 1e-8)
        b = check_stationary_quasi_monotone(trace, [[0.4, 0.6]], 1e-8)
        assert a.eps == b.eps
        assert a.verdict == b.verdict

    def test_stationary_takes_worst_target(self):
        trace = IterateTrace(kernel="energy")
        trace.append(np.array([0.0]), np.ones(1))
        trace.append(np.array([1.0]), np.ones(1))
        # Moving away from 2.0 shrinks that distance but grows the distance
        # to -2.0; the shared slack must reflect the worst target.
        good = check_stationary_quasi_monotone(trace, [[2.0]], 1e-12)
        assert good.verdict
        both = check_stationary_quasi_monotone(trace, [[2.0], [-2.0]], 1e-12)
        assert not both.verdict

    def test_non_domain_target_rejected(self):
        from bregopt import DomainError

        trace = constant_trace([1.0], 2, kernel="burg")
        with pytest.raises(DomainError):
            check_quasi_monotone(trace, [-1.0], 1e-8)

    def test_corrupted_iterate_fails_certificate(self):
        # Iterates loaded from disk bypass interiority checks; a corrupted
        # point outside the domain must surface as an infinite slack.
        trace = constant_trace([1.0], 2, kernel="burg")
        trace.iterates[1] = np.array([-2.0])
        trace.weights[1] = np.ones(1)
        cert = check_quasi_monotone(trace, [1.0], 1e-8)
        assert not cert.verdict

    def test_weighted_distances_used(self):
        trace = IterateTrace(kernel="energy", eta=[0.0])
        trace.append(np.array([1.0]), np.array([1.0]))
        trace.append(np.array([1.2]), np.array([0.5]))
        # Halved weight at step 1 makes D^{f_1}(0, x_1) = 0.5*1.44/2 = 0.36
        # < D^{f_0}(0, x_0) = 0.5 even though |x| grew.
        cert = check_quasi_monotone(trace, [0.0], 1e-12)
        assert cert.verdict


class TestStepDecay:
    def test_constant_trace_zeros(self):
        trace = constant_trace([1.0, 1.0], 5)
        series = step_distance_decay(trace)
        np.testing.assert_allclose(series, 0.0)

    def test_nonnegative_and_recomputable(self):
        rng = np.random.default_rng(3)
        trace = IterateTrace(kernel="boltzmann_shannon")
        for _ in range(6):
            trace.append(rng.uniform(0.5, 2.0, 2), np.ones(2))
        series = step_distance_decay(trace)
        assert np.all(series >= 0.0)
        f = separable("boltzmann_shannon", [1.0, 1.0])
        want = [
            bregman_distance(f, trace.iterates[n + 1], trace.iterates[n])
            for n in range(5)
        ]
        np.testing.assert_allclose(series, want)

    def test_first_below(self):
        trace = IterateTrace(kernel="energy")
        for v in (16.0, 8.0, 4.0, 2.0, 1.0):
            trace.append(np.array([v]), np.ones(1))
        # Steps halve, so the recorded distances are (32, 8, 2, 0.5).
        assert first_step_below(trace, 1.0) == 3
        assert first_step_below(trace, 0.1) is None

    def test_too_short(self):
        from bregopt import DomainError

        with pytest.raises(DomainError):
            step_distance_decay(constant_trace([1.0], 1))


class TestDfDistance:
    def test_member_zero(self):
        f = separable("energy", [1.0, 1.0])
        cset = HyperplaneSet(a=[1.0, 0.0], b=1.0)
        assert df_distance_to_set(f, cset, [1.0, 5.0]) == pytest.approx(
            0.0, abs=1e-18
        )

    def test_euclidean_half_square(self):
        f = separable("energy", [1.0, 1.0])
        cset = HyperplaneSet(a=[1.0, 0.0], b=0.0)
        assert df_distance_to_set(f, cset, [3.0, 1.0]) == pytest.approx(4.5)

    def test_entropic_halfspace(self):
        f = separable("boltzmann_shannon", [1.0, 1.0])
        cset = HalfspaceSet(a=[1.0, 1.0], b=1.0)
        want = bregman_distance(f, [0.5, 0.5], [2.0, 2.0])
        assert df_distance_to_set(f, cset, [2.0, 2.0]) == pytest.approx(
            want, rel=1e-10
        )

    def test_box(self):
        f = separable("boltzmann_shannon", [1.0])
        cset = BoxSet(lo=[0.0], hi=[1.0])
        want = bregman_distance(f, [1.0], [3.0])
        assert df_distance_to_set(f, cset, [3.0]) == pytest.approx(want)


class TestTraceIO:
    def _sample_trace(self):
        trace = IterateTrace(
            kernel="boltzmann_shannon",
            eta=[0.5, 0.25],
            meta={"solver": "ppa", "problem_id": "sample", "halt_reason": "x"},
        )
        rng = np.random.default_rng(11)
        w = 1.0
        for n in range(5):
            x = rng.uniform(0.5, 2.0, 2)
            trace.append(
                x,
                np.full(2, w),
                step_distance=None if n == 0 else float(rng.uniform(0, 1)),
                objective=float(rng.uniform()),
                gamma=1.0,
            )
            w *= 0.9
        return trace

    def test_roundtrip(self, tmp_path):
        trace = self._sample_trace()
        path = tmp_path / "t.jsonl"
        trace.dump(path)
        back = IterateTrace.load(path)
        assert back.kernel == trace.kernel
        assert back.eta == trace.eta
        assert len(back) == len(trace)
        for a, b in zip(back.iterates, trace.iterates):
            np.testing.assert_array_equal(a, b)
        for a, b in zip(back.weights, trace.weights):
            np.testing.assert_array_equal(a, b)
        np.testing.assert_array_equal(back.step_distances, trace.step_distances)
        np.testing.assert_array_equal(back.objectives, trace.objectives)
        assert back.meta["solver"] == "ppa"

    def test_serialization_deterministic(self, tmp_path):
        trace = self._sample_trace()
        p1, p2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        trace.dump(p1)
        trace.dump(p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_timestamps_never_serialized(self, tmp_path):
        trace = self._sample_trace()
        assert "created_at" in trace.meta
        path = tmp_path / "t.jsonl"
        trace.dump(path)
        assert b"created_at" not in path.read_bytes()

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        with pytest.raises(ValueError, match="empty"):
            IterateTrace.load(path)

    def test_interior_enforced_on_append(self):
        from bregopt import DomainError

        trace = IterateTrace(kernel="boltzmann_shannon")
        with pytest.raises(DomainError):
            trace.append(np.array([-1.0]), np.ones(1))


def test_small_step_probe_flags_fake_plateau():
    trace = IterateTrace(kernel="energy")
    trace.append(np.array([0.0]), np.full(1, 1.0))
    # Tiny weight makes the recorded step distance minuscule while the step
    # itself stays large.
    trace.append(np.array([1.0]), np.full(1, 1e-30))
    trace.weights[0] = np.full(1, 1e-30)
    hits = small_step_probe(trace)
    assert hits and hits[0][0] == 0
