"""
Relevant-Set Estimates
Module ID: VDP-PROBLEM-BOUNDS-001
Version: 0.1.0

A priori max-norm balls containing every continuous and discrete trajectory,
from Gronwall-type bounds. Two routes:

  growth:     |f| <= G0 + G1 |x|           radius = (x0_sup + T G0) exp(G1 T)
  lipschitz:  |f(.,.,0,u)| <= G2, L_f,x    radius = (G2 T + x0_sup) exp(Lf1 T)

The same radii bound the Euler iterates, since (1 + h G)^N <= exp(G T).
For kernels whose constants depend on the radius, the estimate is the
smallest fixed point R = bound(R), reached by monotone iteration from 0.
"""

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from src.core.constants import (
    RADIUS_DIVERGENCE_CEILING,
    RADIUS_FIXED_POINT_MAX_ITER,
    RADIUS_FIXED_POINT_TOL,
)
from src.core.errors import RejectedInputError
from src.monitoring.logging import get_logger

logger = get_logger(__name__)

# Relative slack on containment checks; states reaching the radius exactly
# are inside, rounding included.
CONTAINMENT_RTOL = 1e-12

RelevantSetMethod = Literal["growth", "lipschitz", "user"]


@dataclass(frozen=True)
class RelevantSet:
    """Max-norm ball of the given radius."""

    radius: float
    method: str

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius >= 0):
            raise RejectedInputError(
                f"relevant radius must be finite and non-negative, got {self.radius}", module="problem"
            )
        if self.method not in ("growth", "lipschitz", "user"):
            raise RejectedInputError(f"unknown relevant-set method {self.method!r}", module="problem")

    def max_excess(self, states: np.ndarray) -> float:
        """Largest amount by which any state exceeds the radius (<= 0 when contained)."""
        states = np.asarray(states, dtype=float)
        if states.size == 0:
            return -self.radius
        return float(np.abs(states).max() - self.radius)

    def contains(self, states: np.ndarray) -> bool:
        return self.max_excess(states) <= CONTAINMENT_RTOL * max(1.0, self.radius)

    def to_dict(self) -> dict:
        return {"radius": self.radius, "method": self.method}


def _check_non_negative(**values: float) -> None:
    for name, value in values.items():
        if not (math.isfinite(value) and value >= 0):
            raise RejectedInputError(f"{name} must be finite and non-negative, got {value}", module="problem")


def relevant_radius_growth(G0: float, G1: float, x0_sup: float, T: float) -> RelevantSet:
    """Radius from a linear growth bound |f| <= G0 + G1 |x|."""
    _check_non_negative(G0=G0, G1=G1, x0_sup=x0_sup, T=T)
    return RelevantSet(radius=(x0_sup + T * G0) * math.exp(G1 * T), method="growth")


def relevant_radius_lipschitz(G2: float, Lf1: float, x0_sup: float, T: float) -> RelevantSet:
    """Radius from |f(t,s,0,u)| <= G2 and an x-Lipschitz constant Lf1."""
    _check_non_negative(G2=G2, Lf1=Lf1, x0_sup=x0_sup, T=T)
    return RelevantSet(radius=(G2 * T + x0_sup) * math.exp(Lf1 * T), method="lipschitz")


def _smallest_fixed_point(bound: Callable[[float], float], method: str) -> float:
    radius = 0.0
    for _ in range(RADIUS_FIXED_POINT_MAX_ITER):
        try:
            updated = bound(radius)
        except OverflowError:
            break
        if not math.isfinite(updated) or updated > RADIUS_DIVERGENCE_CEILING:
            break
        if abs(updated - radius) <= RADIUS_FIXED_POINT_TOL * max(1.0, updated):
            return updated
        radius = updated
    raise RejectedInputError(
        f"{method} relevant-set iteration does not settle; supply relevant_radius manually",
        module="problem",
    )


def estimate_relevant_set(p, method: str = "auto") -> RelevantSet:
    """
    Relevant set of a problem.

    A user radius in the problem wins. Otherwise ``auto`` returns the
    smaller of the growth and Lipschitz estimates.
    """
    if p.relevant_radius is not None:
        return RelevantSet(radius=float(p.relevant_radius), method="user")
    if method not in ("auto", "growth", "lipschitz"):
        raise RejectedInputError(f"unknown relevant-set method {method!r}", module="problem")

    kernel = p.kernel
    u_sup = p.u_sup
    x0_sup = p.x0.sup(p.horizon)
    T = p.horizon

    def growth_bound(R: float) -> float:
        G0, G1 = kernel.growth(u_sup, R)
        return relevant_radius_growth(G0, G1, x0_sup, T).radius

    def lipschitz_bound(R: float) -> float:
        return relevant_radius_lipschitz(kernel.offset(u_sup), kernel.lipschitz_x(R), x0_sup, T).radius

    candidates = []
    for name, bound in (("growth", growth_bound), ("lipschitz", lipschitz_bound)):
        if method not in ("auto", name):
            continue
        try:
            candidates.append(RelevantSet(radius=_smallest_fixed_point(bound, name), method=name))
        except RejectedInputError:
            if method != "auto":
                raise
            logger.debug(f"{name} relevant-set estimate diverged for {p.name}")

    if not candidates:
        raise RejectedInputError(
            f"no relevant-set estimate settles for problem {p.name}; supply relevant_radius manually",
            module="problem",
        )
    return min(candidates, key=lambda rs: rs.radius)
