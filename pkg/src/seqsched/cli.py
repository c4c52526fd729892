"""Command-line front end.

Exit status: 0 when everything checked holds, 1 when a bound or property is
violated (a finding, not a crash), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import __version__
from .analysis import DegenerateOpt, SpoaReport, spoa
from .engines import KINDS, RationalityModel, TreeTooLarge, play
from .generators import DISTRIBUTIONS, FAMILIES, RANDOM, GeneratorSpec, InvalidSpec, gen
from .model import Instance, InstanceError, loads_after, makespan
from .numeric import EpsValue, ParseError, parse_eps, parse_rational, render_rational
from .optimal import SizeLimit, opt
from .suites import SUITES, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

SPOA_COLUMNS = ["instance", "model", "k", "m", "n", "eq_makespan", "opt", "ratio", "bound", "ok"]


class UsageError(Exception):
    pass


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", action="append", default=[], metavar="PATH",
                   help="instance JSON file (repeatable)")
    p.add_argument("--family", choices=FAMILIES, help="generate the instance instead of reading it")
    p.add_argument("--m", type=int, help="machine count for generated families")
    p.add_argument("--n", type=int, help="job count for random instances")
    p.add_argument("--seed", type=int, help="seed for random instances")
    p.add_argument("--distribution", choices=DISTRIBUTIONS, default="uniform")


def _add_model(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=KINDS, required=True)
    p.add_argument("--k", type=int, help="lookahead depth (lookahead model only)")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("human", "csv"), default="human")
    p.add_argument("--output", "-o", metavar="PATH", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqsched",
        description="Sequential scheduling games on unrelated machines under bounded rationality.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("play", help="play the game under one rationality model")
    _add_source(p)
    _add_model(p)
    _add_output(p)

    p = sub.add_parser("opt", help="exact optimal makespan")
    _add_source(p)
    _add_output(p)

    p = sub.add_parser("spoa", help="equilibrium/optimum ratio with the proven bound")
    _add_source(p)
    _add_model(p)
    _add_output(p)
    p.add_argument("--jobs", type=int, default=1, help="worker processes across instances")

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("gen", help="write a generated instance file")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--distribution", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--surrogate", help="finite stand-in for infinite entries")
    p.add_argument("--concrete-eps", metavar="P/Q", help="substitute this eps into every entry")
    p.add_argument("--output", "-o", metavar="PATH")
    return parser


# helpers ------------------------------------------------------------------------


def _instances(args: argparse.Namespace) -> list[Instance]:
    out = [Instance.load(path) for path in args.instance]
    if args.family is not None:
        out.append(gen(GeneratorSpec(args.family, m=args.m, n=args.n, seed=args.seed,
                                     distribution=args.distribution)))
    if not out:
        raise UsageError("no instance given: use --instance PATH or --family NAME")
    return out


def _model(args: argparse.Namespace) -> RationalityModel:
    try:
        return RationalityModel.parse(args.model, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list[object]], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _both(x: EpsValue) -> str:
    return f"{x.human()}  ({x})"


# commands -----------------------------------------------------------------------


def cmd_play(args: argparse.Namespace) -> int:
    model = _model(args)
    lines: list[str] = []
    rows: list[list[object]] = []
    for inst in _instances(args):
        sched = play(inst, model)
        loads = loads_after(inst, sched)
        span = makespan(loads)
        if args.format == "csv":
            for d in sched.trace:
                alts = ";".join(f"{i}:{c}" for i, c in d.alternatives)
                rows.append([inst.name, model.kind, model.k if model.k is not None else "",
                             d.job, d.chosen, d.anticipated_cost, alts])
            continue
        lines.append(f"instance: {inst.name or '-'} (m={inst.m}, n={inst.n})")
        lines.append(f"model: {model}")
        for d in sched.trace:
            alts = ", ".join(f"m{i}: {c.human()}" for i, c in d.alternatives)
            lines.append(f"  job {d.job} -> machine {d.chosen}  anticipated {d.anticipated_cost.human()}  [{alts}]")
        lines.append("sigma: " + " ".join(str(i) for i in sched.sigma))
        lines.append("loads: " + ", ".join(x.human() for x in loads))
        lines.append(f"makespan: {_both(span)}")
        lines.append("")
    if args.format == "csv":
        _emit(args, _csv(rows, ["instance", "model", "k", "job", "chosen", "anticipated_cost", "alternatives"]))
    else:
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_opt(args: argparse.Namespace) -> int:
    rows: list[list[object]] = []
    lines: list[str] = []
    for inst in _instances(args):
        res = opt(inst)
        witness = " ".join(str(i) for i in res.schedule.sigma)
        rows.append([inst.name, inst.m, inst.n, res.makespan, witness, res.nodes_explored])
        lines.append(f"instance: {inst.name or '-'} (m={inst.m}, n={inst.n})")
        lines.append(f"optimal makespan: {_both(res.makespan)}")
        lines.append(f"witness: {witness}")
        lines.append(f"nodes explored: {res.nodes_explored}")
        lines.append("")
    if args.format == "csv":
        _emit(args, _csv(rows, ["instance", "m", "n", "opt", "witness", "nodes"]))
    else:
        _emit(args, "\n".join(lines))
    return EXIT_OK


def _spoa_job(item: tuple[Instance, RationalityModel]) -> SpoaReport | str:
    inst, model = item
    try:
        return spoa(inst, model)
    except (DegenerateOpt, SizeLimit, TreeTooLarge) as exc:
        return f"{inst.name or 'instance'}: {type(exc).__name__}: {exc}"


def spoa_row(r: SpoaReport) -> list[object]:
    return [
        r.instance,
        r.model.kind,
        r.model.k if r.model.k is not None else "",
        r.m,
        r.n,
        r.eq_makespan,
        r.opt_makespan,
        render_rational(r.ratio_limit),
        render_rational(r.bound) if r.bound is not None else "none",
        "ok" if r.bound_satisfied else "VIOLATED",
    ]


def cmd_spoa(args: argparse.Namespace) -> int:
    model = _model(args)
    items = [(inst, model) for inst in _instances(args)]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_spoa_job, items))
    else:
        results = [_spoa_job(it) for it in items]
    reports = [r for r in results if isinstance(r, SpoaReport)]
    errors = [r for r in results if isinstance(r, str)]
    rows = [spoa_row(r) for r in reports]
    if args.format == "csv":
        _emit(args, _csv(rows, SPOA_COLUMNS))
    else:
        width = [max(len(str(x)) for x in col) for col in zip(SPOA_COLUMNS, *rows)]
        text = "\n".join(
            "  ".join(str(x).ljust(w) for x, w in zip(row, width)).rstrip()
            for row in [SPOA_COLUMNS, *rows]
        )
        _emit(args, text + "\n")
    for e in errors:
        print(f"error: {e}", file=sys.stderr)
    if errors:
        return EXIT_USAGE
    return EXIT_OK if all(r.bound_satisfied for r in reports) else EXIT_VIOLATION


def cmd_verify(args: argparse.Namespace) -> int:
    if args.trials < 0:
        raise UsageError("trials: must be >= 0")
    res = run_suite(args.suite, args.trials, args.seed, jobs=args.jobs)
    status = "PASS" if res.ok else "FAIL"
    lines = [f"suite {res.suite} seed {res.seed}: {res.passed}/{res.trials} passed, {res.failed} failed [{status}]"]
    if res.first_failure is not None:
        f = res.first_failure
        lines.append(f"first counterexample (trial {res.failures[0]}): {f.detail}")
        if f.instance is not None:
            lines.append(f.instance.dumps().rstrip())
    if args.format == "csv":
        _emit(args, _csv([[res.suite, res.seed, res.trials, res.passed, res.failed, status.lower()]],
                         ["suite", "seed", "trials", "passed", "failed", "status"]))
    else:
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if res.ok else EXIT_VIOLATION


def cmd_gen(args: argparse.Namespace) -> int:
    surrogate = parse_eps(args.surrogate) if args.surrogate is not None else None
    spec = GeneratorSpec(args.family, m=args.m, n=args.n, seed=args.seed,
                         distribution=args.distribution, surrogate=surrogate)
    concrete = args.concrete_eps is not None
    if concrete:
        spec = dataclasses.replace(spec, eps=parse_rational(args.concrete_eps))
    inst = gen(spec, concrete=concrete)
    if args.output:
        inst.save(args.output)
        note = f" (seed {args.seed})" if args.family == RANDOM else ""
        print(f"wrote {args.output}{note}", file=sys.stderr)
    else:
        sys.stdout.write(inst.dumps())
    return EXIT_OK


COMMANDS = {
    "play": cmd_play,
    "opt": cmd_opt,
    "spoa": cmd_spoa,
    "verify": cmd_verify,
    "gen": cmd_gen,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InstanceError, InvalidSpec, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateOpt, SizeLimit, TreeTooLarge, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
