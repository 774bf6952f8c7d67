"""Seeded random benchmark instances in the 10x10 / 10x30 / 30x100 families."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .model import EmissionParams, Instance

PRESETS = {"small": (10, 10), "medium": (10, 30), "large": (30, 100)}
INSTANCES_PER_PRESET = 3


@dataclass(frozen=True)
class GenSpec:
    m: int
    n: int
    demand_range: tuple[float, float] = (10, 100)
    unit_cost_range: tuple[float, float] = (1, 10)
    fixed_cost_range: tuple[float, float] = (50, 200)
    opening_cost_range: tuple[float, float] = (100, 500)
    capacity_slack: float = 1.5
    seed: int = 0
    integral: bool = True

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        for name in ("demand_range", "unit_cost_range", "fixed_cost_range", "opening_cost_range"):
            lo, hi = getattr(self, name)
            if not 0 <= lo <= hi:
                raise ValueError(f"{name} must satisfy 0 <= lo <= hi, got {(lo, hi)}")
        if not self.capacity_slack >= 1:
            raise ValueError("capacity_slack must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def default_emissions() -> EmissionParams:
    return EmissionParams(
        alpha_manufacturer=0.02,
        alpha_center=0.02,
        beta_manufacturer=0.04,
        beta_edge=0.04,
        ghg_cap=150_000,
    )


def _draw(rng: np.random.Generator, bounds, size, integral: bool) -> np.ndarray:
    lo, hi = bounds
    if integral:
        lo, hi = math.ceil(lo), math.floor(hi)
        if lo > hi:
            raise ValueError(f"range {bounds} contains no integer")
        return rng.integers(lo, hi, size=size, endpoint=True).astype(float)
    return rng.uniform(lo, hi, size=size)


def _integral_split(raw: np.ndarray, target: int) -> np.ndarray:
    """Scale ``raw`` to integers summing to ``target`` (largest remainder)."""
    share = raw / raw.sum() * target
    out = np.floor(share)
    short = int(target - out.sum())
    order = np.argsort(-(share - out), kind="stable")
    out[order[:short]] += 1
    return out


def generate_instance(spec: GenSpec) -> tuple[Instance, EmissionParams]:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    m, n = spec.m, spec.n
    demand = _draw(rng, spec.demand_range, n, spec.integral)
    unit_cost = _draw(rng, spec.unit_cost_range, m, spec.integral)
    opening = _draw(rng, spec.opening_cost_range, m, spec.integral)
    fixed = _draw(rng, spec.fixed_cost_range, (m, n), spec.integral)
    cost = _draw(rng, spec.unit_cost_range, (m, n), spec.integral)
    raw = rng.uniform(0.5, 1.5, size=m)

    request = math.fsum(demand)
    target = spec.capacity_slack * request
    if spec.integral:
        capacity = _integral_split(raw, math.ceil(target))
    else:
        capacity = raw / raw.sum() * target
        # pin the sum so the capacity check never fails by rounding
        capacity[-1] = target - math.fsum(capacity[:-1])
    instance = Instance(capacity, opening, unit_cost, demand, fixed, cost)
    return instance, default_emissions()


def preset_specs(name: str, seed: int = 0, **overrides) -> list[GenSpec]:
    try:
        m, n = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    base = GenSpec(m=m, n=n, **overrides)
    return [replace(base, seed=seed + k) for k in range(INSTANCES_PER_PRESET)]


def generate_preset(name: str, seed: int = 0, **overrides) -> list[tuple[Instance, EmissionParams]]:
    """The three instances of a named family, seeded ``seed, seed+1, seed+2``."""
    return [generate_instance(spec) for spec in preset_specs(name, seed, **overrides)]
