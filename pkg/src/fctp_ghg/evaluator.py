"""Cost, emission and feasibility evaluation of a shipment plan.

All sums go through :func:`math.fsum` in a fixed order (stage 1 before
stage 2, row-major), so results are exactly rounded and do not depend on
array layout or numpy's pairwise summation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import EmissionParams, Instance, Solution

# Split shipments accumulate rounding; demand equality and capacity bounds
# are checked to this relative tolerance.
FLOW_RTOL = 1e-9


class GhgMode(str, enum.Enum):
    """Which emission formula to apply.

    ``EXAMPLE`` charges ``alpha`` per unit shipped and ``beta * unit cost`` per
    unit shipped on each stage. ``EQ9_LITERAL`` additionally weights stage-1
    terms by the center capacity ``a_i`` and stage-2 terms by the customer
    demand ``b_j``.
    """

    EXAMPLE = "example"
    EQ9_LITERAL = "eq9"

    @classmethod
    def parse(cls, value: "str | GhgMode") -> "GhgMode":
        if isinstance(value, cls):
            return value
        aliases = {"example": cls.EXAMPLE, "eq9": cls.EQ9_LITERAL, "eq9_literal": cls.EQ9_LITERAL}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown ghg mode {value!r}") from None


@dataclass(frozen=True)
class CostBreakdown:
    transport: float
    fixed: float
    total: float


@dataclass(frozen=True, eq=False)
class Indicators:
    center_open: np.ndarray
    edge_used: np.ndarray


@dataclass(frozen=True)
class FeasibilityReport:
    nonneg_ok: bool
    capacity_ok: bool
    demand_ok: bool
    emissions: float
    ghg_ok: bool

    @property
    def feasible(self) -> bool:
        return self.nonneg_ok and self.capacity_ok and self.demand_ok and self.ghg_ok


def _flow(instance: Instance | None, solution: Solution) -> np.ndarray:
    flow = solution.flow
    if instance is not None and flow.shape != (instance.m, instance.n):
        raise ValueError(f"flow has shape {flow.shape}, instance is {instance.m}x{instance.n}")
    return flow


def stage1_flows(solution: Solution) -> np.ndarray:
    """Units shipped from the manufacturer to each center (the row sums)."""
    return np.array([math.fsum(row) for row in solution.flow])


def indicators(solution: Solution) -> Indicators:
    edge_used = solution.flow > 0
    return Indicators(center_open=edge_used.any(axis=1), edge_used=edge_used)


def total_cost(instance: Instance, solution: Solution) -> CostBreakdown:
    flow = _flow(instance, solution)
    shipped = stage1_flows(solution)
    ind = indicators(solution)
    transport = math.fsum(
        np.concatenate([instance.unit_cost * shipped, (instance.edge_unit_cost * flow).ravel()])
    )
    fixed = math.fsum(
        np.concatenate(
            [
                instance.opening_cost[ind.center_open],
                instance.edge_fixed_cost[ind.edge_used],
            ]
        )
    )
    return CostBreakdown(transport=transport, fixed=fixed, total=transport + fixed)


def ghg_emissions(
    instance: Instance,
    params: EmissionParams,
    solution: Solution,
    mode: GhgMode | str = GhgMode.EXAMPLE,
) -> float:
    mode = GhgMode.parse(mode)
    flow = _flow(instance, solution)
    shipped = stage1_flows(solution)
    alpha_man, alpha, beta_man, beta = params.expand(instance.m, instance.n)
    if mode is GhgMode.EQ9_LITERAL:
        a, b = instance.capacity, instance.demand[None, :]
    else:
        a, b = 1.0, 1.0
    stage1 = alpha_man * a * shipped + beta_man * a * instance.unit_cost * shipped
    stage2 = alpha[:, None] * b * flow + beta * b * instance.edge_unit_cost * flow
    return math.fsum(np.concatenate([stage1, stage2.ravel()]))


def check_feasibility(
    instance: Instance,
    params: EmissionParams,
    solution: Solution,
    mode: GhgMode | str = GhgMode.EXAMPLE,
) -> FeasibilityReport:
    flow = _flow(instance, solution)
    shipped = stage1_flows(solution)
    received = np.array([math.fsum(col) for col in flow.T])
    demand = instance.demand
    emissions = ghg_emissions(instance, params, solution, mode)
    return FeasibilityReport(
        nonneg_ok=bool(np.all(flow >= 0)),
        capacity_ok=bool(np.all(shipped <= instance.capacity + FLOW_RTOL * np.maximum(1.0, instance.capacity))),
        demand_ok=bool(np.all(np.abs(received - demand) <= FLOW_RTOL * np.maximum(1.0, demand))),
        emissions=emissions,
        ghg_ok=emissions <= params.ghg_cap,
    )
