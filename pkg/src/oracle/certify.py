"""
Oracle Certificates
Module ID: VDP-ORACLE-CERT-001
Version: 0.1.0

Checks a solved instance against independent computations:

- oracle equivalence: V(0, empty) against exhaustive enumeration
- consistency chain: V(i, u*_(i)) against the tail cost of u* from every stage
- tail irrelevance: memoized prefix states against full forward solves
  with arbitrary tails
- necessity spot-check: V(i, beta) below the cost of random admissible tails,
  attained by the reconstructed tail
- relevant-set containment of the optimal and of random admissible
  trajectories

Every check yields a Certificate; the run passes when all of them hold.
A check that cannot run (no relevant-set estimate settles) is skipped:
it is reported but neither holds nor fails.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from src.core.constants import ORACLE_ABSOLUTE_TOL, VALUE_RELATIVE_TOL
from src.core.errors import RejectedInputError
from src.discretize.dynamics import DiscreteControl, forward_solve, tail_cost
from src.dp.history import encode
from src.dp.reconstruct import control_indices, reconstruct_tail
from src.dp.solver import SolveReport, solve
from src.dp.sweep import prefix_state
from src.monitoring.logging import get_logger
from src.oracle.enumeration import enumerate_min
from src.oracle.sampling import random_band_control, random_lattice_tail
from src.problem.bounds import estimate_relevant_set
from src.problem.model import VolterraProblem

logger = get_logger(__name__)

DEFAULT_SPOT_CHECKS = 100
DEFAULT_CONTAINMENT_SAMPLES = 20


@dataclass
class Certificate:
    """Outcome of one verification claim."""
    is_valid: bool
    claim: str
    reasoning: str
    error_details: str = ""
    skipped: bool = False


@dataclass
class OracleCheckReport:
    solve_report: SolveReport
    oracle_value: float
    oracle_control: DiscreteControl
    certificates: List[Certificate] = field(default_factory=list)
    seed: int = 0

    @property
    def all_valid(self) -> bool:
        """Every certificate that ran holds. Skipped ones do not count."""
        return all(c.is_valid for c in self.certificates if not c.skipped)

    def failed(self) -> List[Certificate]:
        return [c for c in self.certificates if not (c.is_valid or c.skipped)]

    def skipped(self) -> List[Certificate]:
        return [c for c in self.certificates if c.skipped]

    def to_dict(self) -> Dict[str, Any]:
        data = self.solve_report.to_dict()
        data.update(
            {
                "dp_value": self.solve_report.value,
                "oracle_value": self.oracle_value,
                "values_match": self.solve_report.value == self.oracle_value,
                "oracle_control": self.oracle_control.to_list(),
                "certificates": [asdict(c) for c in self.certificates],
                "all_valid": self.all_valid,
                "skipped": [c.claim for c in self.skipped()],
            }
        )
        data["settings"]["seed"] = self.seed
        return data


def _close(a: float, b: float, rel: float) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=ORACLE_ABSOLUTE_TOL)


# ============================================================================
# CERTIFICATES
# ============================================================================

def certify_oracle_equivalence(report: SolveReport, oracle_value: float, rel: float) -> Certificate:
    claim = "dp value equals exhaustive enumeration"
    if _close(report.value, oracle_value, rel):
        return Certificate(True, claim, f"V(0)={report.value!r}, enumeration={oracle_value!r}")
    return Certificate(
        False, claim, "values differ",
        f"V(0)={report.value!r}, enumeration={oracle_value!r}, rel tol {rel}",
    )


def certify_consistency_chain(report: SolveReport) -> Certificate:
    """V(i, u*_(i)) equals the tail cost of u* from stage i, for every i."""
    claim = "value table is consistent along the optimal control"
    dp, table = report.discrete_problem, report.table
    mismatches = []
    for i in range(dp.N + 1):
        value = table.value_at(encode(report.indices[:i], report.M))
        tail = tail_cost(dp, report.trajectory, report.control, i)
        if not _close(value, tail, VALUE_RELATIVE_TOL):
            mismatches.append(f"stage {i}: V={value!r}, tail cost={tail!r}")
    if mismatches:
        return Certificate(False, claim, f"{len(mismatches)} stages disagree", "; ".join(mismatches))
    return Certificate(True, claim, f"all {dp.N + 1} stages agree within rel {VALUE_RELATIVE_TOL}")


def certify_tail_irrelevance(report: SolveReport, rng: np.random.Generator, trials: int) -> Certificate:
    """x(i; i, beta) does not depend on the controls after stage i."""
    claim = "prefix states do not depend on the tail"
    dp, q, table = report.discrete_problem, report.quantization, report.table
    failures = []
    for _ in range(trials):
        stage = int(rng.integers(dp.N + 1))
        digits = [int(d) for d in rng.integers(q.M, size=dp.N)]
        history = encode(digits[:stage], q.M)
        memo = table.state_at(history)
        direct = prefix_state(dp, q, history)
        full = forward_solve(dp, DiscreteControl(q.points[digits])).states[stage]
        same_prefix = np.allclose(direct, memo, rtol=1e-12, atol=ORACLE_ABSOLUTE_TOL)
        if not same_prefix or not np.allclose(full, memo, rtol=1e-10, atol=1e-12):
            failures.append(f"stage {stage}, prefix {digits[:stage]}: memo={memo}, direct={direct}, full={full}")
    if failures:
        return Certificate(False, claim, f"{len(failures)} of {trials} prefixes disagree", "; ".join(failures[:5]))
    return Certificate(True, claim, f"{trials} random prefixes with random tails agree")


def certify_necessity(report: SolveReport, rng: np.random.Generator, trials: int) -> Certificate:
    """V(i, beta) <= J_{i,beta}(gamma) for random admissible gamma, equality along the optimal tail."""
    claim = "value function is minimal over sampled tails"
    dp, q, table, band = report.discrete_problem, report.quantization, report.table, report.constraint
    N = dp.N
    failures = []
    for _ in range(trials):
        stage = int(rng.integers(N))
        prefix = random_lattice_tail(q, band, None, stage, rng)
        history = encode(prefix, q.M)
        value = table.value_at(history)
        slack = VALUE_RELATIVE_TOL * max(1.0, abs(value))

        previous = prefix[-1] if prefix else None
        tail = random_lattice_tail(q, band, previous, N - stage, rng)
        control = DiscreteControl(q.points[prefix + tail])
        sampled = tail_cost(dp, forward_solve(dp, control), control, stage)
        if sampled < value - slack:
            failures.append(f"stage {stage}, prefix {prefix}: tail {tail} costs {sampled!r} < V={value!r}")

        best = reconstruct_tail(table, dp, q, band, history)
        control = DiscreteControl(q.points[prefix + best])
        attained = tail_cost(dp, forward_solve(dp, control), control, stage)
        if not _close(attained, value, VALUE_RELATIVE_TOL):
            failures.append(f"stage {stage}, prefix {prefix}: optimal tail costs {attained!r}, V={value!r}")
    if failures:
        return Certificate(False, claim, f"{len(failures)} violations in {trials} samples", "; ".join(failures[:5]))
    return Certificate(True, claim, f"{trials} sampled prefixes: no tail beats V, optimal tails attain it")


def certify_containment(
    p: VolterraProblem,
    report: SolveReport,
    rng: np.random.Generator,
    samples: int,
) -> Certificate:
    claim = "trajectories stay in the relevant set"
    try:
        relevant = report.relevant_set or estimate_relevant_set(p)
    except RejectedInputError as e:
        return Certificate(False, claim, f"skipped: {e.message}", skipped=True)
    dp = report.discrete_problem
    trajectories = [report.trajectory.states]
    for _ in range(samples):
        control = random_band_control(p.control_box, p.lipschitz_budget, dp.h, dp.N, rng)
        trajectories.append(forward_solve(dp, control).states)
    excess = [relevant.max_excess(states) for states in trajectories]
    outside = sum(1 for states in trajectories if not relevant.contains(states))
    if outside:
        return Certificate(
            False, claim, f"{outside} of {len(excess)} trajectories leave the set",
            f"radius {relevant.radius!r} ({relevant.method}), worst excess {max(excess):.3e}",
        )
    return Certificate(True, claim, f"{len(excess)} trajectories within radius {relevant.radius!r} ({relevant.method})")


# ============================================================================
# DRIVER
# ============================================================================

def run_oracle_check(
    p: VolterraProblem,
    N: int,
    Q: int,
    use_band: bool = True,
    *,
    workers: int = 1,
    seed: int = 0,
    spot_checks: int = DEFAULT_SPOT_CHECKS,
    containment_samples: int = DEFAULT_CONTAINMENT_SAMPLES,
    enumeration_cap: Optional[int] = None,
    value_rtol: Optional[float] = None,
) -> OracleCheckReport:
    """Solve, enumerate, and issue every certificate for one instance."""
    if value_rtol is None:
        from src.config.settings import get_settings
        value_rtol = get_settings().oracle.value_rtol
    rng = np.random.default_rng(seed)

    with logger.context(operation="oracle_check"):
        report = solve(p, N, Q, use_band, workers=workers)
        oracle_control, oracle_value = enumerate_min(
            report.discrete_problem, report.quantization, report.constraint,
            workers=workers, cap=enumeration_cap,
        )
        if control_indices(oracle_control, report.quantization) != report.indices:
            logger.info("Enumeration picked a different minimizer than reconstruction")

        certificates = [
            certify_oracle_equivalence(report, oracle_value, value_rtol),
            certify_consistency_chain(report),
            certify_tail_irrelevance(report, rng, spot_checks),
            certify_necessity(report, rng, spot_checks),
            certify_containment(p, report, rng, containment_samples),
        ]
        check = OracleCheckReport(
            solve_report=report,
            oracle_value=oracle_value,
            oracle_control=oracle_control,
            certificates=certificates,
            seed=seed,
        )
        for cert in certificates:
            logger.certificate(cert.claim, cert.is_valid, skipped=cert.skipped)
        if not check.all_valid:
            for cert in check.failed():
                logger.error(f"Certificate failed: {cert.claim}", reasoning=cert.reasoning, details=cert.error_details)
    return check
