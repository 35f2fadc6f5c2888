import numpy as np
import pytest

from bregopt import (
    CATALOG,
    DomainError,
    NoClosedFormError,
    catalog_lookup,
    kernel,
    penalty,
    prox_scalar_closed,
    prox_scalar_numeric,
    prox_separable,
    pythagoras_check,
    separable,
    validate_catalog,
)
from bregopt import _scalar as core
from bregopt.oracle import prox_oracle


class TestClosedForms:
    def test_scaled_burg_example(self):
        pen = penalty("scaled_burg", gamma=0.5)
        assert prox_scalar_closed("burg", pen, 1.0, 2.0) == pytest.approx(3.0)

    def test_entropic_shrink_p1(self):
        pen = penalty("power", p=1.0)
        got = prox_scalar_closed("boltzmann_shannon", pen, 1.0, 2.0)
        assert got == pytest.approx(2.0 * np.exp(-1.0), abs=1e-12)

    def test_zero_penalty_identity(self):
        for kind, xi in [
            ("energy", 7.0),
            ("boltzmann_shannon", 2.0),
            ("fermi_dirac", 0.25),
            ("burg", 1.5),
            ("hellinger", -0.5),
        ]:
            assert prox_scalar_closed(kind, penalty("zero"), 2.0, xi) == xi

    def test_hellinger_self_oracle_confirmed(self):
        # Analytic value xi / sqrt((gamma+1)^2 - (gamma^2+2 gamma) xi^2).
        pen = penalty("hellinger_self")
        got = prox_scalar_closed("hellinger", pen, 1.0, 0.5)
        assert got == pytest.approx(0.5 / np.sqrt(3.25), abs=1e-14)
        assert got == pytest.approx(
            prox_oracle("hellinger", pen, 1.0, 0.5), abs=1e-9
        )

    def test_hellinger_boundary_input_rejected(self):
        # The domain is the open interval; the closure point 1.0 is invalid.
        with pytest.raises(DomainError):
            prox_scalar_closed("hellinger", penalty("hellinger_self"), 1.0, 1.0)

    def test_missing_pair(self):
        with pytest.raises(NoClosedFormError, match="prox_scalar_numeric"):
            prox_scalar_closed("energy", penalty("power", p=2.0), 1.0, 1.0)

    def test_gamma_restricted_pairs(self):
        pen = penalty("one_minus_entropy")
        assert prox_scalar_closed("fermi_dirac", pen, 1.0, 0.4) > 0.0
        with pytest.raises(NoClosedFormError, match="gamma = 1"):
            prox_scalar_closed("fermi_dirac", pen, 2.0, 0.4)

    def test_output_stays_interior(self, rng):
        for entry in CATALOG:
            kern = kernel(entry.kernel)
            for _ in range(20):
                gamma, xi, pen = entry.draw(rng)
                eta = entry.closed_form(pen, gamma, xi)
                assert kern.is_interior(eta)
                assert pen.lo <= eta <= pen.hi


class TestNumericProx:
    def test_matches_scaled_burg(self):
        pen = penalty("scaled_burg", gamma=0.5)
        got = prox_scalar_numeric("burg", pen, 1.0, 2.0)
        assert got == pytest.approx(3.0, abs=1e-8)
        assert got == pytest.approx(
            prox_oracle("burg", pen, 1.0, 2.0), abs=1e-8
        )

    def test_linear_entropy_fixed_point(self):
        # (1+gamma) ln eta = ln xi + gamma (omega - 1): at omega=1, xi=1 the
        # solution is 1.
        pen = penalty("linear_entropy", omega=1.0)
        got = prox_scalar_numeric("boltzmann_shannon", pen, 1.0, 1.0)
        assert got == pytest.approx(1.0, abs=1e-10)

    def test_zero_penalty(self):
        assert prox_scalar_numeric(
            "fermi_dirac", penalty("zero"), 3.0, 0.7
        ) == pytest.approx(0.7, abs=1e-12)

    def test_euclidean_reduction_quadratic(self, rng):
        # Under the energy kernel the prox of gamma |.|^2/2 is xi/(1+gamma).
        pen = penalty("power", p=2.0)
        for _ in range(50):
            gamma = float(rng.uniform(0.1, 3.0))
            xi = float(rng.uniform(-5.0, 5.0))
            got = prox_scalar_numeric("energy", pen, gamma, xi)
            assert got == pytest.approx(xi / (1.0 + gamma), abs=1e-10)

    def test_optimality_residual(self, rng):
        for entry in CATALOG:
            kern = kernel(entry.kernel)
            for _ in range(10):
                gamma, xi, pen = entry.draw(rng)
                eta = prox_scalar_numeric(kern, pen, gamma, xi)
                pa, pb, pc = pen.packed()
                resid = (
                    gamma * float(core.pen_deriv(pen.code, pa, pb, pc, np.float64(eta)))
                    + kern.deriv(eta)
                    - kern.deriv(xi)
                )
                assert abs(resid) <= 1e-8

    def test_agrees_with_closed_forms(self, rng):
        for entry in CATALOG:
            kern = kernel(entry.kernel)
            for _ in range(15):
                gamma, xi, pen = entry.draw(rng)
                closed = entry.closed_form(pen, gamma, xi)
                numeric = prox_scalar_numeric(kern, pen, gamma, xi)
                assert abs(closed - numeric) <= 1e-8 * max(1.0, abs(numeric))


class TestSeparable:
    def test_coordinatewise_example(self):
        f = separable("burg", [1.0, 1.0])
        pens = [penalty("scaled_burg", gamma=1.0)] * 2
        got = prox_separable(f, pens, 1.0, [1.0, 2.0])
        np.testing.assert_allclose(got, [2.0, 4.0], atol=1e-12)

    def test_zero_penalties(self):
        f = separable("boltzmann_shannon", [1.0, 2.0, 3.0])
        y = np.array([0.5, 1.0, 2.0])
        np.testing.assert_allclose(
            prox_separable(f, [penalty("zero")] * 3, 1.0, y), y
        )

    def test_weights_rescale_gamma(self):
        # Weight w on the kernel is the same as gamma/w on the penalty.
        f = separable("boltzmann_shannon", [2.0])
        pen = penalty("power", p=1.0)
        got = prox_separable(f, [pen], 1.0, [2.0])
        want = prox_scalar_closed("boltzmann_shannon", pen, 0.5, 2.0)
        np.testing.assert_allclose(got, [want], rtol=1e-14)

    def test_mixed_closed_numeric_agreement(self, rng):
        # Weighted coordinates force the gamma=1-only entries onto the
        # numeric path; compare with an all-numeric evaluation.
        f = separable("fermi_dirac", [1.0, 2.0])
        pens = [penalty("one_minus_entropy"), penalty("one_minus_entropy")]
        for _ in range(20):
            y = rng.uniform(0.05, 0.95, 2)
            got = prox_separable(f, pens, 1.0, y)
            allnum = [
                prox_scalar_numeric("fermi_dirac", pens[i], 1.0 / f.weights[i], y[i])
                for i in range(2)
            ]
            np.testing.assert_allclose(got, allnum, atol=1e-8)

    def test_dimension_checks(self):
        from bregopt import DimensionMismatchError

        f = separable("energy", [1.0, 1.0])
        with pytest.raises(DimensionMismatchError):
            prox_separable(f, [penalty("zero")], 1.0, [0.0, 0.0])


class TestPythagoras:
    def test_equal_output_and_target(self):
        f = separable("burg", [1.0])
        # x = v: D(x,v) = 0 so the inequality is an equality statement.
        cert = pythagoras_check(f, [3.0], [2.0], [3.0])
        assert cert.holds
        assert cert.lhs == pytest.approx(cert.rhs, abs=1e-12)

    def test_v_equals_y(self):
        f = separable("boltzmann_shannon", [1.0, 1.0])
        cert = pythagoras_check(f, [1.0, 1.0], [2.0, 0.5], [2.0, 0.5])
        assert cert.holds
        assert cert.slack == pytest.approx(0.0, abs=1e-12)

    def test_prox_step_descent(self, rng):
        # v = prox at y, x = global minimizer of the penalty.
        f = separable("boltzmann_shannon", [1.0])
        pen = penalty("kl_to_target", c=1.5)
        for _ in range(30):
            y = float(np.exp(rng.uniform(np.log(0.1), np.log(5.0))))
            v = prox_scalar_closed("boltzmann_shannon", pen, 1.0, y)
            cert = pythagoras_check(f, [1.5], [y], [v])
            assert cert.holds


class TestCatalogAudit:
    def test_quick_audit_statuses(self):
        rows = validate_catalog(draws=20, seed=7)
        by_id = {r.entry_id: r for r in rows}
        assert all(r.status != "unvalidated" for r in rows)
        assert by_id["burg__scaled_burg"].status == "validated"
        assert by_id["boltzmann_shannon__power_p1"].status == "validated"
        assert by_id["boltzmann_shannon__power_pgt1"].status == "validated"
        assert by_id["hellinger__hellinger_self"].status == "paper_typo_corrected"
        assert all(r.max_abs_err <= 1e-8 for r in rows)

    def test_seed_changes_draws_not_statuses(self):
        a = validate_catalog(draws=10, seed=42)
        b = validate_catalog(draws=10, seed=7)
        assert [r.status for r in a] == [r.status for r in b]
        assert any(x.max_abs_err != y.max_abs_err for x, y in zip(a, b))

    def test_lookup_dispatches_on_power_regime(self):
        e1 = catalog_lookup("boltzmann_shannon", penalty("power", p=1.0))
        e2 = catalog_lookup("boltzmann_shannon", penalty("power", p=2.0))
        assert e1.entry_id.endswith("p1")
        assert e2.entry_id.endswith("pgt1")
        assert catalog_lookup("energy", penalty("power", p=2.0)) is None
