"""Command-line entry point: ``fctp {gen,solve,eval,compare}``.

Exit status is 0 on success, 1 on usage errors and 2 on data errors
(missing files, malformed input, invalid instances).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .evaluator import GhgMode, check_feasibility, total_cost
from .heuristics import Variant, construct_solution
from .instances import PRESETS, generate_preset
from .model import (
    FormatError,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
    validate_instance,
)
from .stats import comparison_pretty, comparison_tsv, compare_vs_baseline, run_experiment

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fctp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    variants = [v.value for v in Variant]
    modes = [m.value for m in GhgMode]

    gen = sub.add_parser("gen", help="write the three instances of a preset family")
    gen.add_argument("--preset", required=True, choices=sorted(PRESETS))
    gen.add_argument("--seed", type=_seed, default=0)
    gen.add_argument("--out", required=True, type=Path)
    gen.add_argument("--real", action="store_true", help="real-valued data instead of integers")

    solve = sub.add_parser("solve", help="run one heuristic on one instance")
    solve.add_argument("--in", dest="input", required=True, type=Path)
    solve.add_argument("--variant", required=True, choices=variants)
    solve.add_argument("--seed", type=_seed, default=0)
    solve.add_argument("--ghg-mode", choices=modes, default=GhgMode.EXAMPLE.value)
    solve.add_argument("--show-flow", action="store_true", help="also print the flow matrix")
    solve.add_argument("--out", type=Path, help="write the solution file here")

    ev = sub.add_parser("eval", help="evaluate a solution file against an instance")
    ev.add_argument("--in", dest="input", required=True, type=Path)
    ev.add_argument("--solution", required=True, type=Path)
    ev.add_argument("--ghg-mode", choices=modes, default=GhgMode.EXAMPLE.value)

    cmp_ = sub.add_parser("compare", help="t-test every variant against a baseline")
    cmp_.add_argument("--in", dest="input", required=True, type=Path, help="directory of *.fctp files")
    cmp_.add_argument("--trials", type=_positive, default=30)
    cmp_.add_argument("--seed", type=_seed, default=0)
    cmp_.add_argument("--baseline", choices=variants, default=Variant.DY10.value)
    cmp_.add_argument("--variants", nargs="+", choices=variants, default=variants)
    cmp_.add_argument("--metric", choices=["emissions", "cost"], default="emissions")
    cmp_.add_argument("--ghg-mode", choices=modes, default=GhgMode.EXAMPLE.value)
    cmp_.add_argument("--welch", action="store_true")
    cmp_.add_argument("--workers", type=_positive, default=1)
    cmp_.add_argument("--raw", type=Path, help="also write every trial as TSV here")
    cmp_.add_argument("--pretty", action="store_true")
    return parser


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_instance(path: Path):
    try:
        instance, params = parse_instance(_read(path))
    except FormatError as exc:
        raise DataError(f"{path}: {exc}") from None
    report = validate_instance(instance)
    if not report.ok:
        raise DataError(f"{path}: " + "; ".join(v.message for v in report.violations))
    return instance, params


def _write(path: Path, text: str):
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc.strerror or exc}") from None


def _flag(b: bool) -> str:
    return "true" if b else "false"


def cmd_gen(args, out):
    try:
        args.out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise DataError(f"cannot create {args.out}: {exc.strerror or exc}") from None
    for k, (instance, params) in enumerate(generate_preset(args.preset, args.seed, integral=not args.real)):
        path = args.out / f"{args.preset}-{k + 1}.fctp"
        _write(path, serialize_instance(instance, params))
        print(path, file=out)


def cmd_solve(args, out):
    instance, params = _load_instance(args.input)
    result = construct_solution(instance, params, args.ghg_mode, args.variant, args.seed)
    print(result.summary(), file=out)
    text = serialize_solution(result.solution)
    if args.show_flow:
        out.write(text)
    if args.out:
        _write(args.out, text)


def cmd_eval(args, out):
    instance, params = _load_instance(args.input)
    try:
        solution = parse_solution(_read(args.solution))
    except FormatError as exc:
        raise DataError(f"{args.solution}: {exc}") from None
    if solution.shape != (instance.m, instance.n):
        raise DataError(f"solution is {solution.shape[0]}x{solution.shape[1]}, instance is {instance.m}x{instance.n}")
    cost = total_cost(instance, solution)
    f = check_feasibility(instance, params, solution, args.ghg_mode)
    print(f"Z={cost.total:.12g} Z_tc={cost.transport:.12g} Z_fc={cost.fixed:.12g}", file=out)
    print(f"emissions={f.emissions:.12g} ghg_cap={params.ghg_cap:.12g} ghg_ok={_flag(f.ghg_ok)}", file=out)
    print(
        f"nonneg_ok={_flag(f.nonneg_ok)} capacity_ok={_flag(f.capacity_ok)} "
        f"demand_ok={_flag(f.demand_ok)} feasible={_flag(f.feasible)}",
        file=out,
    )


def cmd_compare(args, out):
    if not args.input.is_dir():
        raise DataError(f"{args.input} is not a directory")
    paths = sorted(args.input.glob("*.fctp"))
    if not paths:
        raise DataError(f"no *.fctp files in {args.input}")
    variants = list(dict.fromkeys(Variant(v) for v in args.variants))
    baseline = Variant(args.baseline)
    if baseline not in variants:
        raise UsageError(f"--baseline {baseline.value} must be one of --variants")
    instances = [_load_instance(p) for p in paths]
    table = run_experiment(
        instances,
        args.ghg_mode,
        variants,
        args.trials,
        args.seed,
        names=[p.stem for p in paths],
        workers=args.workers,
    )
    try:
        results = compare_vs_baseline(table, baseline, args.metric, welch=args.welch)
    except (ValueError, ZeroDivisionError) as exc:
        raise DataError(f"t-test failed: {exc}") from None
    if args.raw:
        _write(args.raw, table.to_tsv())
    out.write(comparison_pretty(results, baseline) if args.pretty else comparison_tsv(results))


COMMANDS = {"gen": cmd_gen, "solve": cmd_solve, "eval": cmd_eval, "compare": cmd_compare}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except DataError as exc:
        print(f"fctp: {exc}", file=err)
        return EXIT_DATA
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
