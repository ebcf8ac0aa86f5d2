"""Command-line front end.

    mql solve  --n 6 --k 3 --model yn
    mql play   --questioner pairing-bins --adversary greedy --n 8
    mql table  --model pairing --n 3-8
    mql verify --fast --json

Exit codes: 0 success, 1 verification or consistency failure, 2 usage or
feasibility error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .adversaries import ConsistencyGuard, HonestOracle, make_adversary
from .core import (
    Coloring,
    InconsistentAnswers,
    InfeasibleInstance,
    MajorityError,
    Model,
    QuestionerError,
    ground_truth,
    verdict_holds,
)
from .knowledge import build_pairing_graph, certifies, graph_certifies, knowledge_of
from .questioners import QUESTIONERS, majority3_bound, pairing_value
from .solver import MAX_N_COMPONENTS, MAX_N_MASK, Solver, optimal_questioner, solve, threads_default, worst_case_count
from .verify import run_all, yn_lower_bound

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    k: int = 3
    model: Model = Model.YN
    questioner: str | None = None
    adversary: str | None = None
    coloring: str | None = None
    output_format: str = "text"
    threads: int = 1


def value_label(n: int, k: int, model: Model) -> str:
    return f"q_{k}({n})" if model is Model.YN else f"q^p_{k}({n})"


def _emit(obj: dict, fmt: str, text: str) -> None:
    print(json.dumps(obj) if fmt == "json" else text)


# -- solve ---------------------------------------------------------------------------------


def cmd_solve(args) -> int:
    model = Model(args.model)
    try:
        if args.strategy_out:
            solver = Solver(args.n, args.k, model)
            value = solver.solve()
        else:
            solver = None
            value = solve(args.n, args.k, model, threads=args.threads)
    except InfeasibleInstance as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    label = value_label(args.n, args.k, model)
    text = f"{label} = {value.queries}" if value.solvable else f"{label}: unsolvable"
    report = {"n": args.n, "k": args.k, "model": model.value, "solvable": value.solvable, "queries": value.queries}
    if solver is not None:
        tree = solver.strategy()
        Path(args.strategy_out).write_text(json.dumps(tree.to_json() if value.solvable else None, indent=1))
        report["stats"] = solver.stats()
    _emit(report, args.format, text)
    return EXIT_OK


# -- play ---------------------------------------------------------------------------------------


def _resolve_play(args) -> tuple[str, object, int, Model]:
    name = args.questioner
    adv_name = args.adversary.split(":")[0]
    if name == "optimal":
        k = args.k
        allowed = (Model.YN, Model.PAIRING)
    elif name in QUESTIONERS:
        _, k, allowed = QUESTIONERS[name]
    else:
        raise ValueError(f"unknown questioner {name!r}; choose from {sorted(QUESTIONERS) + ['optimal']}")
    if args.model is not None:
        model = Model(args.model)
    elif adv_name == "greedy" or allowed == (Model.PAIRING,):
        model = Model.PAIRING
    else:
        model = Model.YN
    if model not in allowed:
        raise ValueError(f"questioner {name} does not play the {model.value} model")
    if name == "optimal":
        solver = Solver(args.n, k, model)
        if not solver.solve().solvable:
            raise InfeasibleInstance(f"{value_label(args.n, k, model)} is unsolvable")
        return name, optimal_questioner(solver), k, model
    return name, QUESTIONERS[name][0], k, model


def cmd_play(args) -> int:
    if args.coloring and not args.adversary:
        args.adversary = f"honest:{args.coloring}"
    if not args.adversary:
        print("error: --adversary or --coloring is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        name, questioner, k, model = _resolve_play(args)
        adversary = make_adversary(args.adversary, args.n, k, model)
    except (ValueError, InfeasibleInstance) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    guard = ConsistencyGuard(adversary, args.n, model)
    try:
        run = questioner(guard, args.n, model=model)
    except (InconsistentAnswers, QuestionerError, MajorityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL

    report = {
        "questioner": name,
        "adversary": args.adversary,
        "transcript": run.transcript.to_json(),
        "verdict": str(run.verdict),
        "queries": run.query_count,
    }
    if isinstance(adversary, HonestOracle):
        ok = verdict_holds(adversary.coloring, run.verdict)
        report["truth"] = str(ground_truth(adversary.coloring))
    elif model is Model.YN:
        ok = certifies(knowledge_of(run.transcript), run.verdict)
    else:
        ok = graph_certifies(build_pairing_graph(run.transcript), run.verdict)
    report["verified"] = ok

    if args.format == "json":
        print(json.dumps(report))
    else:
        print(json.dumps(report["transcript"]))
        print(f"verdict: {run.verdict}")
        print(f"queries: {run.query_count}")
        if not ok:
            print("verdict NOT supported by the answers", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# -- table --------------------------------------------------------------------------------------


def parse_range(text: str) -> range:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def table_rows(model: Model, ns: range, k: int = 3, exact_max: int | None = None) -> tuple[list[dict], list[str]]:
    """Bounds, exact values and measured worst cases; ``warnings`` lists partial rows."""
    if model is Model.YN:
        strategies = {"majority3": QUESTIONERS["majority3"][0], "majority3-gap": QUESTIONERS["majority3-gap"][0]}
        exact_cap, measure_cap = (MAX_N_MASK - 1 if exact_max is None else exact_max), 14
    else:
        strategies = {"pairing-bins": QUESTIONERS["pairing-bins"][0]}
        exact_cap, measure_cap = (MAX_N_COMPONENTS if exact_max is None else exact_max), 10
    rows, warnings = [], []
    for n in ns:
        row = {"n": n, "model": model.value, "lower": "", "upper": "", "exact": ""}
        if k == 3:
            if model is Model.YN and n >= 4:
                row["lower"], row["upper"] = yn_lower_bound(n), majority3_bound(n)
            elif model is Model.PAIRING and n >= 3:
                row["lower"] = row["upper"] = pairing_value(n)
        if n <= exact_cap:
            try:
                v = solve(n, k, model)
                row["exact"] = v.queries if v.solvable else "unsolvable"
            except InfeasibleInstance:
                pass
        for sname, q in strategies.items():
            col = f"measured_{sname}"
            row[col] = ""
            if k == 3 and n <= measure_cap and n >= (4 if model is Model.YN or sname != "pairing-bins" else 3):
                worst, correct = worst_case_count(q, n, k, model)
                row[col] = worst if correct else f"{worst}!"
        if any(row[c] == "" for c in row):
            warnings.append(f"n={n}: partial row (blank cells beyond feasible sizes)")
        rows.append(row)
    return rows, warnings


def cmd_table(args) -> int:
    model = Model(args.model or "yn")
    try:
        ns = parse_range(args.n_range)
    except ValueError:
        print(f"error: bad range {args.n_range!r}", file=sys.stderr)
        return EXIT_USAGE
    rows, warnings = table_rows(model, ns, args.k, args.exact_max)
    if args.format == "json":
        print(json.dumps({"rows": rows, "warnings": warnings}))
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]) if rows else ["n"], lineterminator="\r\n")
        w.writeheader()
        w.writerows(rows)
    for msg in warnings:
        print(f"warning: {msg}", file=sys.stderr)
    return EXIT_OK


# -- verify ------------------------------------------------------------------------------------


def cmd_verify(args) -> int:
    results = []
    for r in run_all(fast=args.fast, only=args.only):
        results.append(r)
        if not args.json:
            print(r.line(), flush=True)
    passed = all(r.passed for r in results)
    if args.json:
        print(json.dumps({"passed": passed, "fast": args.fast, "checks": [r.to_json() for r in results]}))
    return EXIT_OK if passed else EXIT_FAIL


# -- entry point --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mql", description="Majority search with k-queries.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_required=True):
        sp.add_argument("--n", type=int, required=n_required, help="number of balls")
        sp.add_argument("--k", type=int, default=3, help="query size")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    s = sub.add_parser("solve", help="exact game value")
    common(s)
    s.add_argument("--model", choices=[m.value for m in Model], default="yn")
    s.add_argument("--strategy-out", metavar="PATH")
    s.add_argument("--threads", type=int, default=threads_default())
    s.set_defaults(func=cmd_solve)

    pl = sub.add_parser("play", help="one match between a questioner and an adversary")
    common(pl)
    pl.add_argument("--model", choices=[m.value for m in Model], default=None)
    pl.add_argument("--questioner", required=True)
    pl.add_argument("--adversary", help="honest:<RB string>, partition, greedy or exact")
    pl.add_argument("--coloring", help="shorthand for --adversary honest:<RB string>")
    pl.set_defaults(func=cmd_play)

    t = sub.add_parser("table", help="bounds, exact values and measured worst cases as CSV")
    t.add_argument("--n", dest="n_range", required=True, help="range such as 3-8 or 4..12")
    t.add_argument("--k", type=int, default=3)
    t.add_argument("--model", choices=[m.value for m in Model], default="yn")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--exact-max", type=int, default=None, help="largest n handed to the solver")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--fast", action="store_true", help="small instances only")
    v.add_argument("--json", action="store_true", help="print one JSON summary object")
    v.add_argument("--only", nargs="*", default=None, help="names of checks to run")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "coloring", None):
        try:
            c = Coloring.parse(args.coloring)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if c.n != args.n:
            print(f"error: coloring has {c.n} balls, --n is {args.n}", file=sys.stderr)
            return EXIT_USAGE
    if getattr(args, "n", None) is not None and args.n < 1:
        print("error: --n must be positive", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
