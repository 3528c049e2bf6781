"""Command-line surface: generate fronts/scenarios, evaluate, run experiments, plot.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or
malformed inputs, indicator preconditions).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__, fronts, scenarios
from .errors import PfadistError
from .geometry import Pfa, normalize
from .harness import (
    ExperimentPlan,
    REFERENCE_CARDINALITIES,
    ordering_report,
    run_experiment,
)
from .indicators import INDICATOR_ORDER, IndicatorParams, evaluate_all
from .pfafile import read_points, write_pfa
from .reporting import emit_likert_svg, read_results, write_results
from .weights import lattice_cardinality, two_layer_lattice

SEED_ENV = "PARETO_DI_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get(SEED_ENV, "0"))


def _resolve_lattice(args, m: int) -> tuple[int, int]:
    h1, h2 = args.h1, args.h2
    if h1 is None:
        if m not in REFERENCE_CARDINALITIES:
            raise UsageError(f"--h1 required for m={m} (no built-in table row)")
        _, h1, h2_default = REFERENCE_CARDINALITIES[m]
        if h2 is None:
            h2 = h2_default
    return h1, h2 or 0


def _load_for_evaluation(path) -> Pfa:
    pts = read_points(path)
    if pts.min() >= 0.0 and pts.max() <= 1.0:
        return Pfa(pts, normalized=True)
    return normalize(Pfa(pts))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_generate(args) -> int:
    m = args.objectives
    seed = _resolve_seed(args)
    h1, h2 = _resolve_lattice(args, m)
    meta = {"version": __version__, "kind": args.kind, "objectives": m,
            "h1": h1, "h2": h2, "seed": seed}

    if args.gamma is not None:
        base = fronts.structured_front(args.kind, two_layer_lattice(m, h1, h2))
        out = scenarios.shrink_coverage(base, args.gamma)
        meta["scenario"] = f"coverage gamma={args.gamma:g}"
    elif args.beta is not None or args.case is not None:
        count = args.count or 2000
        dense = normalize(fronts.dense_sample(
            args.kind, m, count, fronts.derive_seed(seed, "dense")))
        meta["dense_count"] = count
        if args.beta is not None:
            uniform = scenarios.uniform_subset(dense, two_layer_lattice(m, h1, h2))
            out = scenarios.degrade_uniformity(
                uniform, dense, args.beta,
                fronts.derive_seed(seed, f"beta{args.beta}"))
            meta["scenario"] = f"uniformity beta={args.beta}"
        else:
            out = scenarios.pathology(
                dense, args.case, lattice_cardinality(m, h1, h2),
                fronts.derive_seed(seed, f"case{args.case}"))
            meta["scenario"] = f"pathology case={args.case}"
    elif args.count is not None:
        out = fronts.dense_sample(args.kind, m, args.count, seed)
        meta["scenario"] = "dense"
    else:
        out = fronts.structured_front(args.kind, two_layer_lattice(m, h1, h2))
        meta["scenario"] = "structured"
    write_pfa(out, args.out, metadata=meta)
    print(f"wrote {len(out)} points to {args.out}")
    return 0


def _format_result(res) -> str:
    if res.failed:
        return f"{res.indicator} error={res.error}"
    line = f"{res.indicator} {res.value:.8g}"
    if "log_value" in res.params:
        line += f" ln={res.params['log_value']:.8g}"
    return line


def _cmd_evaluate(args) -> int:
    pfa = _load_for_evaluation(args.file)
    if args.indicator == "cdi" and args.dbar is None:
        raise UsageError("--dbar is required when evaluating cdi")
    weights = None
    if args.weights:
        weights = read_points(args.weights)
    reference = None
    if args.reference:
        reference = _load_for_evaluation(args.reference)
    params = IndicatorParams(
        weights=weights, theta=args.theta, s=args.s, grid=args.t_grid,
        reference=reference, dbar=args.dbar, k=args.k)
    results = evaluate_all(pfa, params)
    if args.indicator != "all":
        results = [r for r in results if r.indicator == args.indicator]
        if results[0].failed:
            print(_format_result(results[0]), file=sys.stderr)
            return 2
    for res in results:
        print(_format_result(res))
    return 0


def _cmd_experiment(args) -> int:
    seed = _resolve_seed(args)
    defaults = {
        "coverage": (("linear", "inverted"), (2, 3)),
        "uniformity": (("linear", "dtlz1", "dtlz2"), (2, 3)),
        "pathology": (("linear", "dtlz1", "dtlz2"), (3,)),
    }[args.plan]
    problems = tuple(args.problems.split(",")) if args.problems else defaults[0]
    objectives = (tuple(int(v) for v in args.objectives.split(","))
                  if args.objectives else defaults[1])
    plan = ExperimentPlan(
        args.plan, problems, objectives, master_seed=seed,
        dense_count=args.dense_count,
        sizes=tuple(args.sizes.split(",")) if args.sizes else ("N100",),
        replicates=args.replicates)
    table = run_experiment(plan)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    meta = {"version": __version__, "experiment": plan.experiment,
            "problems": ",".join(plan.problems),
            "objectives": ",".join(map(str, plan.objective_counts)),
            "sizes": ",".join(plan.sizes), "replicates": plan.replicates,
            "dense_count": plan.dense_count, "seed": seed}
    csv_path = outdir / f"{plan.experiment}_results.csv"
    svg_path = outdir / f"{plan.experiment}_likert.svg"
    write_results(table, csv_path, metadata=meta)
    emit_likert_svg(table, svg_path)
    print(f"wrote {csv_path} and {svg_path}")
    if plan.experiment in ("coverage", "uniformity"):
        for code, tau in ordering_report(table):
            print(f"ordering {code} tau={tau:+.3f}")
    return 0


def _cmd_plot(args) -> int:
    table = read_results(args.results)
    emit_likert_svg(table, args.out)
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pfadist",
                     description="Distribution indicators for Pareto-front "
                                 "approximations: generators, evaluation, and "
                                 "preference experiments.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a front or scenario PFA file")
    gen.add_argument("--kind", required=True, choices=fronts.FRONT_KINDS)
    gen.add_argument("--objectives", type=int, required=True)
    gen.add_argument("--h1", type=int)
    gen.add_argument("--h2", type=int)
    level = gen.add_mutually_exclusive_group()
    level.add_argument("--gamma", type=float, help="coverage shrink factor")
    level.add_argument("--beta", type=int, help="uniformity percentage")
    level.add_argument("--case", type=int, choices=(1, 2, 3),
                       help="pathology case")
    gen.add_argument("--count", type=int, help="dense sample size")
    gen.add_argument("--seed", type=int)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_generate)

    ev = sub.add_parser("evaluate", help="evaluate indicators on a PFA file")
    ev.add_argument("file")
    ev.add_argument("--indicator", default="all",
                    choices=("all",) + INDICATOR_ORDER)
    ev.add_argument("--theta", type=float, default=10.0)
    ev.add_argument("--s", type=float)
    ev.add_argument("--t-grid", type=int, default=100)
    ev.add_argument("--k", type=int, default=3)
    ev.add_argument("--dbar", type=float)
    ev.add_argument("--weights", help="reference vectors (PFA CSV)")
    ev.add_argument("--reference", help="reference set for cpf (PFA CSV)")
    ev.set_defaults(func=_cmd_evaluate)

    ex = sub.add_parser("experiment", help="run a preference experiment")
    ex.add_argument("--plan", required=True,
                    choices=("coverage", "uniformity", "pathology"))
    ex.add_argument("--problems", help="comma-separated problem list")
    ex.add_argument("--objectives", help="comma-separated objective counts")
    ex.add_argument("--seed", type=int)
    ex.add_argument("--dense-count", type=int, default=2000)
    ex.add_argument("--sizes", help="pathology sizes, e.g. N50,N100")
    ex.add_argument("--replicates", type=int, default=3)
    ex.add_argument("--out-dir", required=True)
    ex.set_defaults(func=_cmd_experiment)

    pl = sub.add_parser("plot", help="render a results CSV as a Likert SVG")
    pl.add_argument("results")
    pl.add_argument("--out", required=True)
    pl.set_defaults(func=_cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (PfadistError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
