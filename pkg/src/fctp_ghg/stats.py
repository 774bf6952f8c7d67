"""Unpaired t-tests and the seeded experiment runner behind them.

The t distribution tail is computed from the regularized incomplete beta
function, evaluated with a modified Lentz continued fraction; no statistics
library is involved.
"""

from __future__ import annotations

import hashlib
import math
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .evaluator import GhgMode
from .heuristics import Variant, construct_solution
from .model import EmissionParams, Instance, format_number

_EPS = 1e-15
_TINY = 1e-300
_MAX_ITER = 10_000


def _betacf(a: float, b: float, x: float) -> float:
    c = 1.0
    d = 1.0 - (a + b) * x / (a + 1.0)
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for k in range(1, _MAX_ITER + 1):
        k2 = 2 * k
        num = k * (b - k) * x / ((a + k2 - 1.0) * (a + k2))
        d = 1.0 + num * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + num / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        num = -(a + k) * (a + b + k) * x / ((a + k2) * (a + k2 + 1.0))
        d = 1.0 + num * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + num / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # the continued fraction converges fast only below the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_two_tailed_p(t: float, df: float) -> float:
    if math.isinf(t):
        return 0.0
    return regularized_incomplete_beta(df / (df + t * t), df / 2.0, 0.5)


class TTestResult(NamedTuple):
    t: float
    p: float
    df: float
    n_a: int
    n_b: int


def _mean_var(xs: Sequence[float]) -> tuple[float, float]:
    n = len(xs)
    mean = math.fsum(xs) / n
    return mean, math.fsum((x - mean) ** 2 for x in xs) / (n - 1)


def unpaired_t_test(sample_a: Sequence[float], sample_b: Sequence[float], *, welch: bool = False) -> TTestResult:
    """Two-sample unpaired t-test, two-tailed.

    Pooled-variance Student test by default; ``welch=True`` uses separate
    variances with Welch-Satterthwaite degrees of freedom.
    """
    a, b = [float(x) for x in sample_a], [float(x) for x in sample_b]
    na, nb = len(a), len(b)
    if na < 2 or nb < 2:
        raise ValueError("each sample needs at least two values")
    mean_a, var_a = _mean_var(a)
    mean_b, var_b = _mean_var(b)
    diff = mean_a - mean_b
    if welch:
        va, vb = var_a / na, var_b / nb
        se2 = va + vb
        df = se2 * se2 / (va * va / (na - 1) + vb * vb / (nb - 1)) if se2 > 0 else float(na + nb - 2)
    else:
        df = float(na + nb - 2)
        pooled = ((na - 1) * var_a + (nb - 1) * var_b) / df
        se2 = pooled * (1.0 / na + 1.0 / nb)
    if se2 == 0.0:
        if diff == 0.0:
            return TTestResult(0.0, 1.0, df, na, nb)
        raise ZeroDivisionError("both samples are constant with different means")
    t = diff / math.sqrt(se2)
    return TTestResult(t, t_two_tailed_p(t, df), df, na, nb)


# ---------------------------------------------------------------------------
# experiments


class Sample(NamedTuple):
    seed: int
    total: float
    emissions: float
    ghg_ok: bool


@dataclass
class TrialTable:
    """Samples keyed by ``(instance id, variant)``, in insertion order."""

    samples: dict[tuple[str, Variant], list[Sample]] = field(default_factory=dict)

    def add(self, instance_id: str, variant: Variant, sample: Sample):
        self.samples.setdefault((instance_id, Variant(variant)), []).append(sample)

    def variants(self) -> list[Variant]:
        seen = dict.fromkeys(v for _, v in self.samples)
        return list(seen)

    def pooled(self, variant: Variant | str, metric: str = "emissions") -> list[float]:
        variant = Variant(variant)
        attr = _metric_attr(metric)
        return [getattr(s, attr) for (_, v), rows in self.samples.items() if v is variant for s in rows]

    def to_tsv(self) -> str:
        lines = ["instance\tvariant\tseed\tZ\temissions\tghg_ok"]
        for (iid, variant), rows in self.samples.items():
            for s in rows:
                lines.append(
                    f"{iid}\t{variant.value}\t{s.seed}\t{format_number(s.total)}"
                    f"\t{format_number(s.emissions)}\t{str(s.ghg_ok).lower()}"
                )
        return "\n".join(lines) + "\n"


def _metric_attr(metric: str) -> str:
    try:
        return {"cost": "total", "emissions": "emissions"}[metric]
    except KeyError:
        raise ValueError(f"metric must be 'cost' or 'emissions', got {metric!r}") from None


def trial_seed(base_seed: int, instance_id: str, variant: Variant | str, trial: int) -> int:
    """Stable 64-bit seed for one trial, derived with BLAKE2b."""
    key = f"{int(base_seed)}\x1f{instance_id}\x1f{Variant(variant).value}\x1f{int(trial)}".encode()
    return struct.unpack("<Q", hashlib.blake2b(key, digest_size=8).digest())[0]


def _run_one(job):
    instance, params, mode, variant, seed = job
    r = construct_solution(instance, params, mode, variant, seed)
    return Sample(seed, r.cost.total, r.emissions, r.feasibility.ghg_ok)


def run_experiment(
    instances: Sequence[tuple[Instance, EmissionParams]],
    mode: GhgMode | str = GhgMode.EXAMPLE,
    variants: Iterable[Variant | str] = tuple(Variant),
    trials_per_variant: int = 30,
    base_seed: int = 0,
    *,
    names: Sequence[str] | None = None,
    workers: int = 1,
) -> TrialTable:
    """Run every variant on every instance.

    The deterministic ``nn`` variant contributes one sample per instance; the
    others ``trials_per_variant`` each. Output order is (instance, variant,
    trial) whatever ``workers`` is.
    """
    mode = GhgMode.parse(mode)
    variants = [Variant(v) for v in variants]
    if trials_per_variant < 1:
        raise ValueError("trials_per_variant must be positive")
    if names is None:
        names = [str(k) for k in range(len(instances))]
    if len(names) != len(instances):
        raise ValueError("names and instances differ in length")

    keys, jobs = [], []
    for iid, (instance, params) in zip(names, instances):
        for variant in variants:
            count = trials_per_variant if variant.stochastic else 1
            for trial in range(count):
                seed = trial_seed(base_seed, iid, variant, trial)
                keys.append((iid, variant))
                jobs.append((instance, params, mode, variant, seed))

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=16))
    else:
        results = [_run_one(job) for job in jobs]

    table = TrialTable()
    for (iid, variant), sample in zip(keys, results):
        table.add(iid, variant, sample)
    return table


def compare_vs_baseline(
    table: TrialTable,
    baseline: Variant | str = Variant.DY10,
    metric: str = "emissions",
    *,
    welch: bool = False,
) -> list[tuple[Variant, TTestResult]]:
    """t-test of every other variant against ``baseline``, samples pooled over instances."""
    baseline = Variant(baseline)
    _metric_attr(metric)
    if baseline not in table.variants():
        raise KeyError(f"baseline {baseline.value} not in table")
    base = table.pooled(baseline, metric)
    return [
        (v, unpaired_t_test(table.pooled(v, metric), base, welch=welch))
        for v in table.variants()
        if v is not baseline
    ]


def comparison_tsv(results: Sequence[tuple[Variant, TTestResult]]) -> str:
    lines = ["variant\tt\tp\tdf\tn"]
    for variant, r in results:
        lines.append(f"{variant.value}\t{r.t:.6g}\t{r.p:.6g}\t{format_number(r.df)}\t{r.n_a}")
    return "\n".join(lines) + "\n"


def comparison_pretty(results: Sequence[tuple[Variant, TTestResult]], baseline: Variant | str) -> str:
    """Transposed layout: one column per variant, like a printed results table."""
    baseline = Variant(baseline)
    head = [f"vs {baseline.label}"] + [v.label for v, _ in results]
    rows = [
        ["t"] + [f"{r.t:.3f}" for _, r in results],
        ["p"] + [f"{r.p:.3f}" for _, r in results],
    ]
    widths = [max(len(row[k]) for row in [head, *rows]) for k in range(len(head))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in [head, *rows]) + "\n"
