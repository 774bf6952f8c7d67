"""Nearest Neighbor construction and its hybrid center-selection variants.

Every variant runs the same loop: pick a distribution center that still has
capacity, then let it serve its cheapest unserved customers (by stage-2 unit
cost) until either its capacity or the total demand runs out.  The variants
differ only in how the center is picked:

``nn``
    deterministically, the center owning the cheapest edge to any unserved
    customer;
``dx``
    uniformly at random among centers with remaining capacity;
``dy10``, ``dy11``, ``dy12``
    at random, proportionally to a capacity-based weight (see
    :func:`selection_weights`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .evaluator import (
    FLOW_RTOL,
    CostBreakdown,
    FeasibilityReport,
    GhgMode,
    check_feasibility,
    total_cost,
)
from .model import EmissionParams, Instance, Solution, validate_instance


class Variant(str, enum.Enum):
    NN = "nn"
    DX = "dx"
    DY10 = "dy10"
    DY11 = "dy11"
    DY12 = "dy12"

    @property
    def label(self) -> str:
        return "NN" if self is Variant.NN else f"HNN-{self.value.upper()}"

    @property
    def stochastic(self) -> bool:
        return self is not Variant.NN


def make_rng(seed: int) -> np.random.Generator:
    """The generator used for one construction: PCG64 seeded with the raw 64-bit seed."""
    return np.random.Generator(np.random.PCG64(int(seed) & 0xFFFF_FFFF_FFFF_FFFF))


@dataclass
class ConstructionState:
    """Mutable bookkeeping of a single construction run."""

    instance: Instance
    remaining_capacity: np.ndarray
    remaining_demand: np.ndarray
    xcont: np.ndarray
    flow: np.ndarray
    rng: np.random.Generator

    @classmethod
    def start(cls, instance: Instance, seed: int = 0) -> "ConstructionState":
        return cls(
            instance=instance,
            remaining_capacity=instance.capacity.copy(),
            remaining_demand=instance.demand.copy(),
            xcont=np.zeros(instance.m, dtype=np.int64),
            flow=np.zeros((instance.m, instance.n)),
            rng=make_rng(seed),
        )

    @property
    def request(self) -> float:
        return math.fsum(self.remaining_demand)

    @property
    def done(self) -> bool:
        return not np.any(self.remaining_demand > 0)

    def eligible(self) -> np.ndarray:
        return self.remaining_capacity > 0


def selection_weights(state: ConstructionState, variant: Variant | str) -> np.ndarray:
    """Unnormalized selection weights of the ``dy*`` variants.

    With ``a`` the remaining capacity, ``request`` the remaining total demand
    and ``xcont`` the number of customers a center already ships to:

    * ``dy10``: ``a / request``
    * ``dy11``: ``a / (max(xcont, 1) * request)``
    * ``dy12``: ``max(xcont, 1) / a``

    Centers with no remaining capacity get weight 0.
    """
    variant = Variant(variant)
    if variant not in (Variant.DY10, Variant.DY11, Variant.DY12):
        raise ValueError(f"{variant.value} has no selection weights")
    a = state.remaining_capacity
    open_ = a > 0
    if not open_.any():
        raise RuntimeError("no center has remaining capacity")
    request = state.request
    if request <= 0:
        raise ValueError("request must be positive")
    used = np.maximum(state.xcont, 1).astype(float)
    weights = np.zeros(len(a))
    if variant is Variant.DY10:
        weights[open_] = a[open_] / request
    elif variant is Variant.DY11:
        weights[open_] = a[open_] / (used[open_] * request)
    else:
        weights[open_] = used[open_] / a[open_]
    return weights


def normalized_weights(weights: np.ndarray) -> np.ndarray:
    return weights / math.fsum(weights)


def _sample(rng: np.random.Generator, weights: np.ndarray) -> int:
    # Inverse CDF; zero-weight entries share their predecessor's cumulative
    # value, so side="right" never lands on them.
    cumulative = np.cumsum(weights)
    u = rng.random() * cumulative[-1]
    return int(min(np.searchsorted(cumulative, u, side="right"), len(weights) - 1))


def select_center(state: ConstructionState, variant: Variant | str) -> int:
    variant = Variant(variant)
    eligible = state.eligible()
    if not eligible.any() or state.done:
        raise RuntimeError("no eligible center")
    if variant is Variant.NN:
        costs = state.instance.edge_unit_cost[:, state.remaining_demand > 0]
        nearest = np.where(eligible, costs.min(axis=1), np.inf)
        return int(np.argmin(nearest))
    if variant is Variant.DX:
        candidates = np.flatnonzero(eligible)
        return int(candidates[state.rng.integers(len(candidates))])
    return _sample(state.rng, selection_weights(state, variant))


def assign_from_center(state: ConstructionState, center: int) -> ConstructionState:
    """Ship from ``center`` to its cheapest unserved customers until it is empty
    or every customer is served. Demands may be split across centers."""
    if not state.remaining_capacity[center] > 0:
        raise ValueError(f"center {center} has no remaining capacity")
    costs = state.instance.edge_unit_cost[center]
    # stable sort keeps the lowest index first among equal costs
    for j in np.argsort(costs, kind="stable"):
        if state.remaining_capacity[center] <= 0:
            break
        need = state.remaining_demand[j]
        if need <= 0:
            continue
        q = min(state.remaining_capacity[center], need)
        if state.flow[center, j] == 0:
            state.xcont[center] += 1
        state.flow[center, j] += q
        state.remaining_capacity[center] -= q
        state.remaining_demand[j] -= q
    return state


@dataclass(frozen=True)
class SolveResult:
    solution: Solution
    cost: CostBreakdown
    emissions: float
    feasibility: FeasibilityReport
    variant: Variant
    seed: int

    def summary(self) -> str:
        f = self.feasibility
        return (
            f"variant={self.variant.value} seed={self.seed} "
            f"Z={_short(self.cost.total)} Z_tc={_short(self.cost.transport)} Z_fc={_short(self.cost.fixed)} "
            f"emissions={_short(self.emissions)} ghg_ok={_flag(f.ghg_ok)} feasible={_flag(f.feasible)}"
        )


def _short(x: float) -> str:
    return f"{x:.12g}"


def _flag(b: bool) -> str:
    return "true" if b else "false"


def construct_solution(
    instance: Instance,
    params: EmissionParams,
    mode: GhgMode | str = GhgMode.EXAMPLE,
    variant: Variant | str = Variant.NN,
    seed: int = 0,
) -> SolveResult:
    """Build a solution with one heuristic variant.

    The emission cap is evaluated and reported, never enforced. The result is
    a pure function of the arguments.
    """
    variant = Variant(variant)
    report = validate_instance(instance)
    if not report.ok:
        raise ValueError("invalid instance: " + "; ".join(v.message for v in report.violations))
    state = ConstructionState.start(instance, seed)
    tol = FLOW_RTOL * np.maximum(1.0, instance.demand)
    while not state.done:
        if not state.eligible().any():
            # capacities that were rescaled to match demand can fall short by rounding
            if np.all(state.remaining_demand <= tol):
                break
            raise RuntimeError("capacity exhausted before demand was served")
        assign_from_center(state, select_center(state, variant))
    solution = Solution(state.flow)
    feasibility = check_feasibility(instance, params, solution, mode)
    return SolveResult(
        solution=solution,
        cost=total_cost(instance, solution),
        emissions=feasibility.emissions,
        feasibility=feasibility,
        variant=variant,
        seed=int(seed),
    )
