"""
Unit Tests for the Euler Discretization
Module ID: VDP-TEST-DISCRETIZE-001
Version: 0.1.0
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import NumericalFailure, RejectedInputError
from src.discretize import (
    ConstantControl,
    DiscreteControl,
    Grid,
    RampControl,
    Trajectory,
    check_continuous_control,
    check_lipschitz_admissible,
    discrete_cost,
    discretize,
    forward_solve,
    interpolate,
    read_control_csv,
    read_trajectory_csv,
    sample_control,
    stage_costs,
    tail_cost,
    write_control_csv,
    write_trajectory_csv,
)
from src.problem import CallableKernel, VolterraProblem
from src.problem.costs import ConstantInitial, ConstantRunningCost, ConstantTerminalCost


@pytest.mark.unit
class TestGrid:

    def test_nodes(self):
        grid = Grid(N=4, horizon=2.0)
        assert grid.h == 0.5
        np.testing.assert_array_equal(grid.nodes, [0.0, 0.5, 1.0, 1.5, 2.0])

    def test_last_node_is_horizon(self):
        grid = Grid(N=7, horizon=1.0)
        assert grid.nodes[-1] == 1.0

    @pytest.mark.parametrize("N", [0, -3, 1.5, True])
    def test_invalid_step_count(self, N):
        with pytest.raises(RejectedInputError):
            Grid(N=N, horizon=1.0)

    def test_invalid_horizon(self):
        with pytest.raises(RejectedInputError):
            Grid(N=2, horizon=0.0)


@pytest.mark.unit
class TestForwardSolve:
    """Hand-computed Euler iterates."""

    def test_lq_two_steps(self, lq_problem):
        dp = discretize(lq_problem, 2)
        traj = forward_solve(dp, DiscreteControl([0.5, 0.5]))
        np.testing.assert_allclose(traj.states[:, 0], [0.0, 0.25, 0.5])
        assert discrete_cost(dp, traj, DiscreteControl([0.5, 0.5])) == pytest.approx(0.5)

    def test_linear_growth_one_step(self, linear_growth_problem):
        dp = discretize(linear_growth_problem, 1)
        c = DiscreteControl([0.0])
        traj = forward_solve(dp, c)
        assert traj.states[1, 0] == pytest.approx(2.0)
        # h (x^2 + u^2) at x = 1, then x(1)^2
        assert discrete_cost(dp, traj, c) == pytest.approx(5.0)

    def test_history_enters_every_step(self, linear_growth_problem):
        """x(2) = x0 + h f(x(0)) + h f(x(1)), not a one-step recursion."""
        dp = discretize(linear_growth_problem, 2)
        traj = forward_solve(dp, DiscreteControl([0.0, 0.0]))
        x1 = 1.0 + 0.5 * 1.0
        assert traj.states[2, 0] == pytest.approx(1.0 + 0.5 * 1.0 + 0.5 * x1)

    def test_zero_problem(self, zero_problem):
        dp = discretize(zero_problem, 3)
        c = DiscreteControl([0.0, 1.0, 0.5])
        traj = forward_solve(dp, c)
        assert np.all(traj.states == 0.0)
        assert discrete_cost(dp, traj, c) == 0.0

    def test_two_dimensional_state(self, memory_decay_problem):
        dp = discretize(memory_decay_problem, 3)
        traj = forward_solve(dp, DiscreteControl(np.zeros((3, 1))))
        assert traj.states.shape == (4, 2)
        np.testing.assert_array_equal(traj.states[0], [1.0, 0.0])

    def test_wrong_length_rejected(self, lq_problem):
        dp = discretize(lq_problem, 3)
        with pytest.raises(RejectedInputError):
            forward_solve(dp, DiscreteControl([0.5, 0.5]))

    def test_out_of_box_rejected(self, lq_problem):
        dp = discretize(lq_problem, 2)
        with pytest.raises(RejectedInputError, match="control box"):
            forward_solve(dp, DiscreteControl([0.5, 1.5]))

    def test_non_finite_control_rejected(self):
        with pytest.raises(RejectedInputError):
            DiscreteControl([0.0, np.nan])

    def test_non_finite_state_raises(self):
        kernel = CallableKernel(
            lambda t, s, x, u: np.full_like(x, np.inf), dims=(1, 1),
            lipschitz_x=0.0, lipschitz_u=0.0, growth=(1.0, 0.0),
        )
        p = VolterraProblem(
            kernel=kernel,
            x0=ConstantInitial([0.0]),
            running_cost=ConstantRunningCost(0.0),
            terminal_cost=ConstantTerminalCost(0.0),
            horizon=1.0,
            control_box=np.array([[0.0, 1.0]]),
            lipschitz_budget=1.0,
        )
        with pytest.raises(NumericalFailure):
            forward_solve(discretize(p, 2), DiscreteControl([0.0, 0.0]))

    def test_phi_index_range(self, lq_problem):
        dp = discretize(lq_problem, 2)
        with pytest.raises(RejectedInputError):
            dp.phi(1, 1, np.array([0.0]), np.array([0.0]))
        with pytest.raises(RejectedInputError):
            dp.stage_cost(2, np.array([0.0]), np.array([0.0]))


@pytest.mark.unit
class TestCosts:

    def test_stage_costs_layout(self, lq_problem):
        dp = discretize(lq_problem, 2)
        c = DiscreteControl([0.5, 0.5])
        costs = stage_costs(dp, forward_solve(dp, c), c)
        np.testing.assert_allclose(costs, [0.125, 0.125, 0.25])

    def test_tail_cost(self, lq_problem):
        dp = discretize(lq_problem, 2)
        c = DiscreteControl([0.5, 0.5])
        traj = forward_solve(dp, c)
        assert tail_cost(dp, traj, c, 2) == pytest.approx(0.25)
        assert tail_cost(dp, traj, c, 1) == pytest.approx(0.375)
        assert tail_cost(dp, traj, c, 0) == discrete_cost(dp, traj, c)

    def test_tail_stage_out_of_range(self, lq_problem):
        dp = discretize(lq_problem, 2)
        c = DiscreteControl([0.5, 0.5])
        with pytest.raises(RejectedInputError):
            tail_cost(dp, forward_solve(dp, c), c, 3)

    def test_mismatched_trajectory(self, lq_problem):
        dp = discretize(lq_problem, 2)
        with pytest.raises(RejectedInputError):
            stage_costs(dp, Trajectory([0.0, 0.1]), DiscreteControl([0.5, 0.5]))


@pytest.mark.unit
class TestInterpolation:

    def test_band_check(self):
        assert check_lipschitz_admissible(DiscreteControl([0.0, 0.5, 1.0]), L=2.0, h=0.25)
        assert not check_lipschitz_admissible(DiscreteControl([0.0, 1.0]), L=2.0, h=0.25)
        assert check_lipschitz_admissible(DiscreteControl([0.3]), L=0.0, h=1.0)

    def test_interpolate_holds_last_value(self):
        grid = Grid(N=2, horizon=1.0)
        u = interpolate(DiscreteControl([0.0, 0.5]), grid, L=1.0)
        assert u(0.25)[0] == pytest.approx(0.25)
        assert u(1.0)[0] == 0.5
        np.testing.assert_array_equal(u.breakpoints, [0.5])

    def test_interpolate_rejects_band_violation(self):
        with pytest.raises(RejectedInputError, match="Lipschitz band"):
            interpolate(DiscreteControl([0.0, 1.0]), Grid(N=2, horizon=1.0), L=1.0)

    def test_evaluation_outside_horizon(self):
        u = interpolate(DiscreteControl([0.0, 0.0]), Grid(N=2, horizon=1.0), L=1.0)
        with pytest.raises(RejectedInputError):
            u(1.5)

    @given(
        N=st.integers(min_value=1, max_value=12),
        L=st.floats(min_value=0.0, max_value=4.0),
        seed=st.integers(min_value=0, max_value=2**16),
    )
    @settings(max_examples=50, deadline=None)
    def test_interpolant_is_lipschitz(self, N, L, seed):
        """A band-admissible control interpolates to an L-Lipschitz function."""
        grid = Grid(N=N, horizon=1.0)
        rng = np.random.default_rng(seed)
        values = [rng.uniform(0.0, 1.0)]
        for _ in range(N - 1):
            values.append(float(np.clip(values[-1] + rng.uniform(-L * grid.h, L * grid.h), 0.0, 1.0)))
        u = interpolate(DiscreteControl(values), grid, L)
        t = np.linspace(0.0, 1.0, 97)
        samples = u(t)[:, 0]
        assert np.all(np.abs(np.diff(samples)) <= L * np.diff(t) + 1e-9)

    def test_sample_ramp(self):
        grid = Grid(N=4, horizon=1.0)
        c = sample_control(RampControl(np.array([[0.0, 1.0]]), L=2.0), grid)
        np.testing.assert_allclose(c.values[:, 0], [0.0, 0.5, 1.0, 1.0])

    def test_sample_constant(self):
        c = sample_control(ConstantControl(np.array([[-1.0, 1.0], [0.0, 2.0]])), Grid(N=3, horizon=1.0))
        np.testing.assert_array_equal(c.values, [[0.0, 1.0]] * 3)

    def test_ramp_breakpoints(self):
        assert list(RampControl(np.array([[0.0, 1.0]]), L=2.0).breakpoints) == [0.5]
        assert RampControl(np.array([[0.0, 1.0]]), L=0.0).breakpoints.size == 0

    def test_continuous_control_check(self):
        box = np.array([[0.0, 1.0]])
        check_continuous_control(RampControl(box, L=2.0), box, L=2.0, horizon=1.0)
        with pytest.raises(RejectedInputError, match="Lipschitz"):
            check_continuous_control(RampControl(box, L=2.0), box, L=1.0, horizon=1.0)
        with pytest.raises(RejectedInputError, match="box"):
            check_continuous_control(lambda t: np.array([2.0]), box, L=1.0, horizon=1.0)


@pytest.mark.unit
class TestCsv:

    def test_control_round_trip_is_exact(self, temp_dir):
        grid = Grid(N=3, horizon=1.0)
        c = DiscreteControl([[0.1, 1.0 / 3.0], [0.2, 2.0 / 7.0], [np.pi / 10, 0.0]])
        path = write_control_csv(temp_dir / "control.csv", c, grid)
        assert path.read_text().splitlines()[0] == "i,t,u_1,u_2"
        np.testing.assert_array_equal(read_control_csv(path).values, c.values)

    def test_trajectory_round_trip(self, temp_dir, lq_problem):
        dp = discretize(lq_problem, 3)
        traj = forward_solve(dp, DiscreteControl([1.0 / 3.0] * 3))
        path = write_trajectory_csv(temp_dir / "trajectory.csv", traj, dp.grid)
        np.testing.assert_array_equal(read_trajectory_csv(path).states, traj.states)

    def test_length_mismatch(self, temp_dir):
        with pytest.raises(RejectedInputError):
            write_control_csv(temp_dir / "c.csv", DiscreteControl([0.0]), Grid(N=2, horizon=1.0))

    def test_missing_header(self, temp_dir):
        path = temp_dir / "bad.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(RejectedInputError, match="header"):
            read_control_csv(path)
