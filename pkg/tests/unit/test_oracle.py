"""
Unit Tests for the Oracles
Module ID: VDP-TEST-ORACLE-001
Version: 0.1.0
"""

import math

import numpy as np
import pytest

from src.core.errors import CapacityError, RejectedInputError
from src.discretize import (
    ConstantControl,
    RampControl,
    Trajectory,
    check_lipschitz_admissible,
    discretize,
)
from src.dp import backward_sweep, band_for, control_indices, quantize, solve
from src.oracle import (
    ConvergenceRow,
    convergence_study,
    enumerate_min,
    fine_grid_reference,
    fit_order,
    has_linear_reference,
    linear_reference,
    linear_reference_for,
    optimality_gap_study,
    random_band_control,
    random_lattice_tail,
    run_oracle_check,
    states_at,
)
from src.oracle.certify import certify_containment, certify_oracle_equivalence
from src.problem import builtin_problem


@pytest.mark.unit
class TestEnumeration:

    def test_lq_minimum(self, lq_n2):
        dp, q = lq_n2
        control, value = enumerate_min(dp, q)
        assert value == 0.5
        assert control_indices(control, q) == [1, 1]

    def test_matches_sweep(self, any_builtin):
        dp = discretize(any_builtin, 3)
        q = quantize(any_builtin.control_box, 3)
        band = band_for(dp)
        table = backward_sweep(dp, q, band)
        _, value = enumerate_min(dp, q, band)
        assert value == pytest.approx(table.value, rel=1e-12, abs=1e-14)

    def test_band_excludes_jumps(self):
        p = builtin_problem("lq", lipschitz_budget=0.5)
        dp = discretize(p, 4)
        q = quantize(p.control_box, 5)
        control, value = enumerate_min(dp, q, band_for(dp))
        assert control_indices(control, q) == [2, 2, 2, 2]
        assert value == pytest.approx(0.5)

    def test_block_layout_and_workers_do_not_matter(self, memory_decay_problem):
        dp = discretize(memory_decay_problem, 4)
        q = quantize(memory_decay_problem.control_box, 3)
        serial = enumerate_min(dp, q)
        parallel = enumerate_min(dp, q, workers=3, block_size=7)
        assert serial[1] == parallel[1]
        assert np.array_equal(serial[0].values, parallel[0].values)

    def test_ties_resolve_lexicographically(self, zero_problem):
        dp = discretize(zero_problem, 3)
        q = quantize(zero_problem.control_box, 3)
        control, value = enumerate_min(dp, q, workers=2, block_size=4)
        assert value == 0.0
        assert control_indices(control, q) == [0, 0, 0]

    def test_cap(self, lq_problem):
        dp = discretize(lq_problem, 4)
        q = quantize(lq_problem.control_box, 3)
        with pytest.raises(CapacityError):
            enumerate_min(dp, q, cap=80)
        enumerate_min(dp, q, cap=81)


@pytest.mark.unit
class TestLinearReference:

    def test_exponential_growth(self):
        ref = linear_reference(1.0, 0.0, 1.0, lambda t: np.array([0.0]), 1.0, samples=2)
        np.testing.assert_allclose(ref.states[:, 0], [1.0, math.e], rtol=1e-12)

    def test_integrator(self):
        ref = linear_reference(0.0, 1.0, 0.0, lambda t: np.array([1.0]), 1.0, samples=[0.0, 0.5, 1.0])
        np.testing.assert_allclose(ref.states[:, 0], [0.0, 0.5, 1.0], atol=1e-10)

    def test_forced_exponential(self):
        """x' = -x + 1 from 0: x(t) = 1 - e^{-t}."""
        ref = linear_reference(-1.0, 1.0, 0.0, lambda t: np.array([1.0]), 2.0, samples=5)
        np.testing.assert_allclose(ref.states[:, 0], 1.0 - np.exp(-ref.times), atol=1e-10)

    def test_lq_cost_of_midpoint_control(self, lq_problem):
        ref = linear_reference_for(lq_problem, ConstantControl(lq_problem.control_box))
        assert ref.state(1.0) == pytest.approx(0.5, abs=1e-10)
        assert ref.cost(lq_problem.running_cost, lq_problem.terminal_cost) == pytest.approx(0.5, abs=1e-9)

    def test_applicability(self, lq_problem, memory_decay_problem, logistic_problem):
        assert has_linear_reference(lq_problem)
        assert not has_linear_reference(memory_decay_problem)
        assert not has_linear_reference(logistic_problem)
        with pytest.raises(RejectedInputError, match="closed-form"):
            linear_reference_for(memory_decay_problem, ConstantControl(memory_decay_problem.control_box))

    def test_no_samples(self):
        with pytest.raises(RejectedInputError):
            linear_reference(0.0, 0.0, 0.0, lambda t: np.array([0.0]), 1.0, samples=0)

    def test_fine_grid_reference(self, zero_problem):
        traj = fine_grid_reference(zero_problem, ConstantControl(zero_problem.control_box), 16)
        assert traj.states.shape == (17, 1)
        assert np.all(traj.states == 0.0)

    def test_fine_grid_approaches_linear_reference(self, linear_growth_problem):
        """x' = x + 0.5 from 1: the Euler error at T halves with every doubling of N_fine."""
        u = ConstantControl(linear_growth_problem.control_box)
        exact = linear_reference(1.0, 1.0, 1.0, u, 1.0, samples=[1.0]).states[0, 0]
        assert exact == pytest.approx(1.5 * math.e - 0.5, rel=1e-12)
        errors = {
            n: abs(fine_grid_reference(linear_growth_problem, u, n).states[-1, 0] - exact)
            for n in (2 ** 10, 2 ** 11, 2 ** 12)
        }
        assert errors[2 ** 10] < 5e-3
        assert errors[2 ** 10] / errors[2 ** 11] == pytest.approx(2.0, abs=0.1)
        assert errors[2 ** 10] / errors[2 ** 12] == pytest.approx(4.0, abs=0.2)

    def test_fine_grid_cauchy_differences_halve(self, logistic_problem):
        u = RampControl(logistic_problem.control_box, logistic_problem.lipschitz_budget)
        finals = [fine_grid_reference(logistic_problem, u, n).states[-1, 0] for n in (128, 256, 512, 1024)]
        diffs = np.abs(np.diff(finals))
        assert np.all(diffs > 0)
        ratios = diffs[1:] / diffs[:-1]
        assert np.all((ratios >= 0.35) & (ratios <= 0.65))

    def test_states_at(self):
        traj = Trajectory([0.0, 1.0, 2.0])
        out = states_at(traj, np.array([0.0, 0.5, 1.0]), np.array([0.25, 1.0]))
        np.testing.assert_allclose(out[:, 0], [0.5, 2.0])


@pytest.mark.unit
class TestFitOrder:

    def test_first_order_data(self):
        hs = [0.1, 0.05, 0.025]
        assert fit_order(hs, [3.0 * h for h in hs]) == pytest.approx(1.0)

    def test_second_order_data(self):
        hs = [0.2, 0.1, 0.05]
        assert fit_order(hs, [h * h for h in hs]) == pytest.approx(2.0)

    def test_vanishing_error_is_infinite_order(self):
        assert fit_order([0.5, 0.25], [0.0, 0.0]) == math.inf

    def test_too_few_points(self):
        with pytest.raises(RejectedInputError):
            fit_order([0.5], [0.1])

    def test_row_rejects_negative_error(self):
        with pytest.raises(RejectedInputError):
            ConvergenceRow(N=2, h=0.5, state_error=-1.0, cost_error=0.0)


@pytest.mark.unit
class TestConvergenceStudy:

    def test_ramp_on_lq_is_first_order(self, lq_problem):
        """Left-rectangle error of the ramp integral is h/2 at every node past the kink."""
        u = RampControl(lq_problem.control_box, L=2.0)
        study = convergence_study(lq_problem, u, [4, 8, 16])
        assert study.reference == "linear"
        assert study.N_fine is None
        for row in study.rows:
            assert row.state_error == pytest.approx(0.5 * row.h, abs=1e-8)
        assert study.state_order == pytest.approx(1.0, abs=1e-6)
        errors = [r.cost_error for r in study.rows]
        assert errors[0] > errors[1] > errors[2]
        assert study.cost_order > 0

    def test_fine_grid_fallback(self, memory_decay_problem):
        u = ConstantControl(memory_decay_problem.control_box)
        study = convergence_study(memory_decay_problem, u, [2, 4, 8], fine_factor=64)
        assert study.reference == "fine_grid"
        assert study.N_fine == 512
        errors = [r.state_error for r in study.rows]
        assert errors[0] > errors[1] > errors[2]
        assert study.state_order > 0.5

    def test_workers_give_same_rows(self, lq_problem):
        u = RampControl(lq_problem.control_box, L=2.0)
        serial = convergence_study(lq_problem, u, [2, 4, 8])
        parallel = convergence_study(lq_problem, u, [2, 4, 8], workers=3)
        assert serial.frame().equals(parallel.frame())

    def test_summary_is_serializable(self, zero_problem):
        study = convergence_study(zero_problem, ConstantControl(zero_problem.control_box), [2, 4, 8])
        summary = study.summary()
        assert summary["state_order"] == "inf"
        assert len(summary["rows"]) == 3
        assert list(study.frame().columns) == ["N", "h", "state_error", "cost_error", "gap"]

    def test_needs_three_step_counts(self, lq_problem):
        with pytest.raises(RejectedInputError):
            convergence_study(lq_problem, ConstantControl(lq_problem.control_box), [4, 8])

    def test_steps_must_increase(self, lq_problem):
        with pytest.raises(RejectedInputError):
            convergence_study(lq_problem, ConstantControl(lq_problem.control_box), [8, 4, 16])

    def test_control_must_respect_budget(self, lq_problem):
        with pytest.raises(RejectedInputError, match="Lipschitz"):
            convergence_study(lq_problem, RampControl(lq_problem.control_box, L=4.0), [2, 4, 8])


@pytest.mark.unit
class TestGapStudy:

    def test_zero_problem_has_no_gap(self, zero_problem):
        study = optimality_gap_study(zero_problem, 2, [2, 4], fine_factor=64)
        assert study.gaps() == [0.0, 0.0]
        assert study.reference_value == 0.0
        assert study.N_fine == 256

    def test_gaps_are_relative_to_best(self, lq_problem):
        study = optimality_gap_study(lq_problem, 3, [2, 4], fine_factor=16)
        assert min(study.gaps()) == 0.0
        assert all(g >= 0.0 for g in study.gaps())
        assert study.reference_value == min(study.surrogate_costs)
        assert len(study.frame()) == 2


@pytest.mark.unit
class TestSampling:

    def test_band_control_is_admissible(self, rng):
        box = np.array([[0.0, 1.0], [-1.0, 1.0]])
        for _ in range(20):
            c = random_band_control(box, L=2.0, h=0.1, N=12, rng=rng)
            assert c.values.shape == (12, 2)
            assert check_lipschitz_admissible(c, 2.0, 0.1)
            assert np.all(c.values >= box[:, 0]) and np.all(c.values <= box[:, 1])

    def test_band_control_needs_steps(self, rng):
        with pytest.raises(RejectedInputError):
            random_band_control(np.array([[0.0, 1.0]]), 1.0, 0.5, 0, rng)

    def test_lattice_tail_respects_band(self, rng):
        q = quantize(np.array([[0.0, 1.0]]), 5)
        band = band_for(discretize(builtin_problem("lq", lipschitz_budget=1.0), 4))
        table = band.transition_table(q)
        tail = random_lattice_tail(q, band, 2, 30, rng)
        assert len(tail) == 30
        for a, b in zip([2] + tail, tail):
            assert table[a, b]


@pytest.mark.unit
class TestOracleCheck:

    def test_lq_certificates(self, lq_problem):
        check = run_oracle_check(lq_problem, 4, 3, seed=0, spot_checks=10, containment_samples=5)
        assert check.all_valid, [c.error_details for c in check.failed()]
        info = check.to_dict()
        assert info["values_match"]
        assert info["settings"]["seed"] == 0
        assert len(info["certificates"]) == 5

    def test_memory_decay_certificates(self, memory_decay_problem):
        check = run_oracle_check(memory_decay_problem, 3, 3, use_band=False, spot_checks=10, containment_samples=5)
        assert check.all_valid, [c.error_details for c in check.failed()]

    def test_mismatch_is_reported(self, lq_problem):
        report = solve(lq_problem, 2, 3)
        cert = certify_oracle_equivalence(report, 0.4, 1e-12)
        assert not cert.is_valid
        assert "0.4" in cert.error_details

    def test_enumeration_cap_applies(self, lq_problem):
        with pytest.raises(CapacityError):
            run_oracle_check(lq_problem, 4, 3, enumeration_cap=10)

    def test_containment_without_estimate_is_skipped(self):
        # the logistic radius iteration runs away for c = 5 on a unit horizon
        p = builtin_problem(
            "logistic_memory", kernel={"form": "logistic_memory", "params": {"c": 5.0, "kappa": 1.0, "b": 0.1}}
        )
        report = solve(p, 2, 2, use_band=False)
        assert report.relevant_set is None
        cert = certify_containment(p, report, np.random.default_rng(0), 3)
        assert cert.skipped
        assert not cert.is_valid
        assert cert.reasoning.startswith("skipped")

    def test_skipped_certificate_is_listed_not_counted(self):
        p = builtin_problem(
            "logistic_memory", kernel={"form": "logistic_memory", "params": {"c": 5.0, "kappa": 1.0, "b": 0.1}}
        )
        check = run_oracle_check(p, 2, 2, use_band=False, spot_checks=5, containment_samples=2)
        assert [c.claim for c in check.skipped()] == ["trajectories stay in the relevant set"]
        assert check.failed() == []
        assert check.all_valid
        info = check.to_dict()
        assert info["skipped"] == ["trajectories stay in the relevant set"]
        assert [c["skipped"] for c in info["certificates"]] == [False, False, False, False, True]

    def test_lq_certificates_are_not_skipped(self, lq_problem):
        check = run_oracle_check(lq_problem, 2, 3, spot_checks=5, containment_samples=2)
        assert check.skipped() == []
