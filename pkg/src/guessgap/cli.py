"""Command-line front end.

Exit codes are fixed for scripting: 0 success, 1 usage or input errors,
2 verification failure, 3 search found no feasible point.  Human output
uses 6 decimal places; machine output (--json) keeps full precision.
"""

import argparse
import json
import sys

from .dist import Shape
from .errors import GuessgapError, NoFeasiblePoint, VerificationFailed
from .family import (
    CounterexampleParams,
    sweep as run_sweep,
    verify_counterexample,
    violation_boundary,
)
from .io import (
    ORDER_LITERAL,
    _write_text,
    emit_sweep_csv,
    load_distribution,
    render_sweep_svg,
)
from .metrics import analyze_tripartite
from .search import SearchConfig, run_search


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _report_line(rep) -> str:
    return (
        f"p_b={_fmt(rep.p_b)} p_e={_fmt(rep.p_e)} i_ab={_fmt(rep.i_ab)} "
        f"i_ae={_fmt(rep.i_ae)} h_a={_fmt(rep.h_a)} gap={_fmt(rep.gap)}"
    )


def _print_flags(rep):
    premise = "holds" if rep.premise_holds else "fails"
    print(f"premise p_b > p_e: {premise}")
    if rep.implication_violated:
        verdict = "VIOLATED"
    elif rep.premise_holds:
        verdict = "holds"
    else:
        verdict = "vacuous (premise fails)"
    print(f'implication "p_b > p_e => i_ab > i_ae": {verdict}')


def _cmd_verify(args) -> int:
    params = CounterexampleParams.from_epsilon(args.epsilon)
    report = verify_counterexample(args.epsilon, args.tol)
    print(f"epsilon={_fmt(params.epsilon)} epsilon_prime={_fmt(params.epsilon_prime)}")
    print(f"table route:  {_report_line(report.analyzed)}")
    print(f"closed forms: {_report_line(report.closed)}")
    print(f"max deviation: {report.max_deviation:.3e} (tol {report.tol:.3e})")
    _print_flags(report.analyzed)
    return 0


def _cmd_sweep(args) -> int:
    rows = run_sweep(args.start, args.end, args.steps)
    emit_sweep_csv(rows, args.csv)
    print(f"wrote {len(rows)} rows to {args.csv}")
    if args.svg:
        render_sweep_svg(rows, args.svg)
        print(f"wrote chart to {args.svg}")
    return 0


def _cmd_boundary(args) -> int:
    print(_fmt(violation_boundary()))
    return 0


def _cmd_analyze(args) -> int:
    dist = load_distribution(args.input)
    rep = analyze_tripartite(dist)
    s = dist.shape
    print(f"shape: bob={s.bob} alice={s.alice} eve={s.eve}")
    print(_report_line(rep))
    print(f"fano_slack_b={_fmt(rep.fano_slack_b)} fano_slack_e={_fmt(rep.fano_slack_e)}")
    _print_flags(rep)
    return 0


def _machine_doc(cfg: SearchConfig, res) -> dict:
    s = cfg.shape
    shape_doc = {"bob": s.bob, "alice": s.alice, "eve": s.eve}
    return {
        "command": "search",
        "config": {
            "shape": shape_doc,
            "delta": cfg.delta,
            "penalty_weight": cfg.penalty_weight,
            "restarts": cfg.restarts,
            "max_iters": cfg.max_iters,
            "init_step": cfg.init_step,
            "seed": cfg.seed,
            "converge_tol": cfg.converge_tol,
            "include_family_warm_start": cfg.include_family_warm_start,
        },
        "objective": res.objective,
        "feasible": res.feasible,
        "restart_index": res.restart_index,
        "iterations_used": res.iterations_used,
        "report": res.report.as_dict(),
        "distribution": {
            "shape": shape_doc,
            "order": ORDER_LITERAL,
            "probs": [float(v) for v in res.best_dist.flat],
        },
    }


def _cmd_search(args) -> int:
    cfg = SearchConfig(
        shape=Shape(args.bob, args.alice, args.eve),
        delta=args.delta,
        penalty_weight=args.penalty_weight,
        restarts=args.restarts,
        seed=args.seed,
    )
    res = run_search(cfg)
    print(f"best restart: {res.restart_index} ({res.iterations_used} iterations)")
    print(_report_line(res.report))
    print(f"objective={_fmt(res.objective)} feasible={res.feasible}")
    _print_flags(res.report)
    if args.json:
        text = json.dumps(_machine_doc(cfg, res), indent=2, sort_keys=True) + "\n"
        _write_text(args.json, text)
        print(f"wrote machine output to {args.json}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="guessgap",
        description=(
            "Guessing probabilities vs mutual information on tripartite "
            "distributions: verify the known counterexample family, sweep "
            "it, and search for new violations."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check the family against its closed forms")
    v.add_argument("--epsilon", type=float, required=True)
    v.add_argument("--tol", type=float, default=1e-9)
    v.set_defaults(func=_cmd_verify)

    sw = sub.add_parser("sweep", help="tabulate the family over an epsilon range")
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--end", type=float, required=True)
    sw.add_argument("--steps", type=int, required=True)
    sw.add_argument("--csv", required=True)
    sw.add_argument("--svg", default=None)
    sw.set_defaults(func=_cmd_sweep)

    se = sub.add_parser("search", help="maximize i_ae - i_ab under p_b - p_e >= delta")
    se.add_argument("--bob", type=int, required=True)
    se.add_argument("--alice", type=int, required=True)
    se.add_argument("--eve", type=int, required=True)
    se.add_argument("--delta", type=float, default=0.02)
    se.add_argument("--restarts", type=int, default=100)
    se.add_argument("--seed", type=int, default=0)
    se.add_argument("--lambda", dest="penalty_weight", type=float, default=10.0)
    se.add_argument("--json", default=None, metavar="PATH")
    se.set_defaults(func=_cmd_search)

    an = sub.add_parser("analyze", help="report on a distribution file")
    an.add_argument("--input", required=True)
    an.set_defaults(func=_cmd_analyze)

    b = sub.add_parser("boundary", help="print the epsilon where the family's gap hits 0")
    b.set_defaults(func=_cmd_boundary)

    return p


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1
    try:
        return args.func(args)
    except VerificationFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NoFeasiblePoint as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (GuessgapError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(dispatch(sys.argv[1:]))
