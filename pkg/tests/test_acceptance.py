"""Exit criteria, one test each. A PASS/FAIL line per criterion is printed in
the terminal summary."""

import functools
import io
import math
import statistics
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, example_params, worked_example
from fctp_ghg import (
    EmissionParams,
    GhgMode,
    Solution,
    Variant,
    brute_force_optimum,
    check_feasibility,
    construct_solution,
    ghg_emissions,
    selection_weights,
    total_cost,
    unpaired_t_test,
)
from fctp_ghg.cli import main
from fctp_ghg.heuristics import ConstructionState, normalized_weights, select_center
from fctp_ghg.instances import GenSpec, generate_instance
from fctp_ghg.model import Instance
from helpers import slack_instance
from oracles import naive_cost, naive_emissions, student_two_tailed_p, textbook_t


def criterion(label):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException:
                ACCEPTANCE_LINES.append(f"FAIL  {label}")
                raise
            extra = f"  ({detail})" if detail else ""
            ACCEPTANCE_LINES.append(f"PASS  {label}  [{time.perf_counter() - start:.2f}s]{extra}")

        return run

    return wrap


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    assert code == 0, err.getvalue()
    return out.getvalue()


@criterion("1 golden emissions 4650 / 46.5 (rel 1e-9, < 1 ms)")
def test_ac1_golden_emissions():
    inst, sol = worked_example()
    for (alpha, beta), expected in [((1, 2), 4650), ((0.01, 0.02), 46.5)]:
        params = example_params(alpha, beta)
        got = ghg_emissions(inst, params, sol, GhgMode.EXAMPLE)
        assert abs(got - expected) <= 1e-9 * expected
        timings = []
        for _ in range(200):
            t0 = time.perf_counter()
            ghg_emissions(inst, params, sol, GhgMode.EXAMPLE)
            timings.append(time.perf_counter() - t0)
        median = statistics.median(timings)
        assert median < 1e-3
    return f"median {median * 1e6:.0f} us"


@criterion("2 cap check: ok under 50, violated under 40")
def test_ac2_cap_check():
    inst, sol = worked_example()
    assert check_feasibility(inst, example_params(0.01, 0.02, 50), sol).ghg_ok
    assert not check_feasibility(inst, example_params(0.01, 0.02, 40), sol).ghg_ok


@criterion("3 oracle dominance on 50 slack 3x4 instances (< 30 s)")
def test_ac3_oracle_dominance():
    start = time.perf_counter()
    runs = 0
    for k in range(50):
        inst, params = slack_instance(1000 + k)
        assert np.all(inst.capacity >= inst.demand.sum())
        best = brute_force_optimum(inst, params).cost.total
        for variant in Variant:
            for seed in range(1, 21):
                r = construct_solution(inst, params, "example", variant, seed)
                f = r.feasibility
                assert f.demand_ok and f.capacity_ok and f.nonneg_ok
                assert r.cost.total >= best
                runs += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 30
    return f"{runs} constructions"


@criterion("4 evaluator == naive oracle on 200 random solutions (rel 1e-12)")
def test_ac4_evaluator_oracle():
    rng = np.random.default_rng(2024)
    for k in range(200):
        m, n = int(rng.integers(1, 6)), int(rng.integers(1, 7))
        inst, _ = generate_instance(GenSpec(m=m, n=n, seed=k, integral=bool(k % 2)))
        flow = rng.uniform(0, 100, size=(m, n))
        flow[rng.random((m, n)) < 0.35] = 0
        if k % 3 == 0:
            flow = np.round(flow)
        alpha_man, alpha, beta_man, beta = (float(v) for v in rng.uniform(0, 1, 4))
        params = EmissionParams(alpha_man, alpha, beta_man, beta, 1.0)
        sol = Solution(flow)
        c = total_cost(inst, sol)
        want = naive_cost(inst, flow)
        for got, ref in zip((c.transport, c.fixed, c.total), want):
            assert math.isclose(got, ref, rel_tol=1e-12, abs_tol=0.0) or got == ref
        for mode in GhgMode:
            got = ghg_emissions(inst, params, sol, mode)
            ref = naive_emissions(inst, flow, alpha_man, alpha, beta_man, beta, mode is GhgMode.EQ9_LITERAL)
            assert math.isclose(got, ref, rel_tol=1e-12) or got == ref


@criterion("5 selection weights exact, normalized to 1e-12, sampler in [0.69, 0.71]")
def test_ac5_selection_weights():
    def state(capacity, demand, xcont=(0, 0), seed=0):
        m, n = len(capacity), len(demand)
        inst = Instance(capacity, np.zeros(m), np.zeros(m), demand, np.zeros((m, n)), np.ones((m, n)))
        s = ConstructionState.start(inst, seed)
        s.xcont[:] = xcont
        return s

    w10 = selection_weights(state([30, 70], [60, 40]), "dy10")
    w11 = selection_weights(state([30, 70], [60, 40], (2, 1)), "dy11")
    w12 = selection_weights(state([4, 10], [5, 5], (2, 1)), "dy12")
    assert w10.tolist() == [0.3, 0.7]
    assert w11.tolist() == [0.15, 0.7]
    assert w12.tolist() == [0.5, 0.1]
    for w in (w10, w11, w12):
        assert abs(math.fsum(normalized_weights(w)) - 1.0) <= 1e-12
    s = state([30, 70], [100], seed=20240601)
    freq = sum(select_center(s, "dy10") for _ in range(100_000)) / 100_000
    assert 0.69 <= freq <= 0.71
    return f"frequency {freq:.4f}"


@criterion("6 t-test vs textbook oracle (1e-9), identity, antisymmetry, shift/scale")
def test_ac6_t_test():
    rng = np.random.default_rng(77)
    for _ in range(20):
        a = rng.normal(rng.uniform(-10, 10), rng.uniform(0.5, 4), rng.integers(2, 30)).tolist()
        b = rng.normal(rng.uniform(-10, 10), rng.uniform(0.5, 4), rng.integers(2, 30)).tolist()
        r = unpaired_t_test(a, b)
        t, df = textbook_t(a, b)
        assert abs(r.t - t) <= 1e-9 * max(1.0, abs(t))
        assert abs(r.p - student_two_tailed_p(t, df)) <= 1e-9
    same = rng.normal(size=10).tolist()
    r = unpaired_t_test(same, same)
    assert (r.t, r.p) == (0.0, 1.0)
    for _ in range(100):
        a = rng.normal(0, rng.uniform(0.5, 3), rng.integers(2, 20))
        b = rng.normal(rng.uniform(-2, 2), rng.uniform(0.5, 3), rng.integers(2, 20))
        r, s = unpaired_t_test(a, b), unpaired_t_test(b, a)
        assert s.t == -r.t and s.p == r.p
        shift, scale = rng.uniform(-50, 50), rng.uniform(0.1, 10)
        for other in (unpaired_t_test(a + shift, b + shift), unpaired_t_test(a * scale, b * scale)):
            assert math.isclose(other.t, r.t, rel_tol=1e-9, abs_tol=1e-12)
            assert math.isclose(other.p, r.p, rel_tol=1e-9, abs_tol=1e-12)


@criterion("7 comparison protocol: 9 instances, 5 variants, 30 trials, 4 rows, stable (< 60 s)")
def test_ac7_table_protocol(tmp_path):
    start = time.perf_counter()
    for preset in ("small", "medium", "large"):
        cli("gen", "--preset", preset, "--seed", 2012, "--out", tmp_path)
    files = sorted(tmp_path.glob("*.fctp"))
    assert len(files) == 9
    from fctp_ghg import parse_instance

    for f in files:
        _, params = parse_instance(f.read_text())
        assert params == EmissionParams(0.02, 0.02, 0.04, 0.04, 150_000)
    argv = ("compare", "--in", tmp_path, "--trials", 30, "--seed", 2012, "--baseline", "dy10")
    first = cli(*argv)
    second = cli(*argv)
    elapsed = time.perf_counter() - start
    assert first == second
    lines = first.splitlines()
    assert lines[0] == "variant\tt\tp\tdf\tn"
    rows = [line.split("\t") for line in lines[1:]]
    assert [r[0] for r in rows] == ["nn", "dx", "dy11", "dy12"]
    for _, t, p, _, _ in rows:
        assert math.isfinite(float(t))
        assert 0 < float(p) <= 1
    assert elapsed < 60
    return f"{elapsed:.1f}s for gen + two compare runs"


@criterion("8 solve/compare byte-identical across repeats and worker counts")
def test_ac8_determinism(tmp_path):
    cli("gen", "--preset", "small", "--seed", 5, "--out", tmp_path)
    target = sorted(tmp_path.glob("*.fctp"))[0]
    for variant in Variant:
        outs = {cli("solve", "--in", target, "--variant", variant.value, "--seed", 99, "--show-flow") for _ in range(3)}
        assert len(outs) == 1
    base = ("compare", "--in", tmp_path, "--trials", 10, "--seed", 5)
    outs = {cli(*base, "--workers", w) for w in (1, 1, 2, 4)}
    assert len(outs) == 1
