"""Brute-force optimum over unsplit assignments, for small instances.

Every customer is sent in full to one center, so there are ``m ** n``
candidate plans. When each center alone can cover the whole demand this set
contains a true optimum: moving a split customer entirely onto its cheaper
path never raises the linear cost and drops at least one fixed charge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evaluator import CostBreakdown, GhgMode, ghg_emissions, total_cost
from .model import EmissionParams, Instance, Solution, validate_instance

ENUMERATION_BUDGET = 10**7
_CHUNK = 1 << 16


class EnumerationBudgetExceeded(ValueError):
    pass


class NoFeasibleAssignment(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    solution: Solution
    cost: CostBreakdown
    emissions: float
    assignment: tuple[int, ...]
    optimal_over: str = "unsplit_assignments"


def _unit_emissions(instance: Instance, params: EmissionParams, mode: GhgMode) -> np.ndarray:
    """Emissions per unit shipped along manufacturer -> i -> j, as an m x n table."""
    alpha_man, alpha, beta_man, beta = params.expand(instance.m, instance.n)
    stage1 = alpha_man + beta_man * instance.unit_cost
    stage2 = alpha[:, None] + beta * instance.edge_unit_cost
    if mode is GhgMode.EQ9_LITERAL:
        stage1 = stage1 * instance.capacity
        stage2 = stage2 * instance.demand[None, :]
    return stage1[:, None] + stage2


def brute_force_optimum(
    instance: Instance,
    params: EmissionParams,
    mode: GhgMode | str = GhgMode.EXAMPLE,
    *,
    respect_ghg_cap: bool = False,
    budget: int = ENUMERATION_BUDGET,
) -> OracleResult:
    """Minimum total cost over all capacity-respecting unsplit assignments.

    Ties go to the lexicographically smallest assignment (customer 1 is the
    most significant digit). With ``respect_ghg_cap`` assignments whose
    emissions exceed the cap are skipped as well.
    """
    mode = GhgMode.parse(mode)
    report = validate_instance(instance)
    if not report.ok:
        raise ValueError("invalid instance: " + "; ".join(v.message for v in report.violations))
    m, n = instance.m, instance.n
    total = m**n
    if total > budget:
        raise EnumerationBudgetExceeded(f"{m}^{n} = {total} assignments exceeds budget {budget}")

    b = instance.demand
    # cost of sending customer j wholly through center i, fixed edge charge included
    per_edge = b[None, :] * (instance.unit_cost[:, None] + instance.edge_unit_cost) + instance.edge_fixed_cost
    per_edge = np.where(b[None, :] > 0, per_edge, 0.0)
    unit_ghg = _unit_emissions(instance, params, mode) * b[None, :] if respect_ghg_cap else None
    cols = np.arange(n)
    radix = m ** np.arange(n - 1, -1, -1, dtype=np.int64)

    best_cost, best_code = np.inf, -1
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        assign = (codes[:, None] // radix[None, :]) % m  # (k, n)
        load = np.zeros((len(codes), m))
        np.add.at(load, (np.arange(len(codes))[:, None], assign), b[None, :])
        ok = np.all(load <= instance.capacity[None, :], axis=1)
        opened = load > 0
        cost = per_edge[assign, cols].sum(axis=1) + opened.astype(float) @ instance.opening_cost
        if unit_ghg is not None:
            ok &= unit_ghg[assign, cols].sum(axis=1) <= params.ghg_cap
        if not ok.any():
            continue
        cost = np.where(ok, cost, np.inf)
        k = int(np.argmin(cost))  # first minimum keeps lexicographic order
        if cost[k] < best_cost:
            best_cost, best_code = cost[k], int(codes[k])

    if best_code < 0:
        raise NoFeasibleAssignment("no unsplit assignment respects the capacities")
    assignment = tuple(int(d) for d in (best_code // radix) % m)
    flow = np.zeros((m, n))
    flow[list(assignment), cols] = b
    solution = Solution(flow)
    return OracleResult(
        solution=solution,
        cost=total_cost(instance, solution),
        emissions=ghg_emissions(instance, params, solution, mode),
        assignment=assignment,
    )
