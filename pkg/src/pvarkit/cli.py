"""Command-line front door.

Subcommands wrap the library one-to-one: ``pvar`` and ``compose`` transform
JSON path files, ``holder`` and ``bound-check`` report on generators, and
``lab`` runs the packaged experiments, emitting a CSV plus a JSON summary.

Exit codes are the contract: 0 on success, 2 when an input file or flag
cannot be parsed, 3 when a domain invariant is violated (the message names
the invariant), and 4 when a lab experiment's claimed bound fails or its
pair search comes up empty.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .errors import NoViolatorFound, PvarkitError
from .lab import (
    DEFAULT_DEPTHS,
    SPIKE_CAP,
    DivergenceReport,
    example3_experiment,
    gen_example5_experiment,
    remark_experiment,
    step4_divergence_experiment,
    thm6_experiment,
)
from .operators import Generator, compose_path, composition_bound_check, estimate_holder
from .paths import DiscretePath
from .spaces import Vector, VectorSpace
from .variation import pvar

__all__ = ["RunConfig", "main", "entry"]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_CLAIM = 4

_LAB_DEFAULT_DEPTHS = {
    "example3": (10, 100, 1000),
    "step4": (1, 2, 4, 8),
    "example5": tuple(range(1, 11)),
    "thm6": DEFAULT_DEPTHS,
    "remark": (1, 4, 16, 64),
}


class _ParseFailure(Exception):
    """Internal marker for anything that maps to exit code 2."""


@dataclass
class RunConfig:
    """Validated knobs shared by the experiment commands."""

    p: float = 1.0
    q: float = 2.0
    depths: tuple[int, ...] = field(default_factory=tuple)
    cap: int = SPIKE_CAP
    strict: bool = False
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.p < 1.0:
            raise ValueError("p must satisfy p >= 1")
        if self.q < self.p:
            raise ValueError("q must satisfy q >= p")
        if any(d < 1 for d in self.depths):
            raise ValueError("depth schedule entries must be positive integers")
        if any(a >= b for a, b in zip(self.depths, self.depths[1:])):
            raise ValueError("depth schedule must be strictly increasing")
        if self.cap < 2:
            raise ValueError("cap must be at least 2")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fp:
            return json.load(fp)
    except OSError as exc:
        raise _ParseFailure("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise _ParseFailure("malformed JSON in %s: %s" % (path, exc)) from exc


def _schema(build, *args):
    """Run a from_json constructor, mapping schema errors to exit code 2.

    Domain invariants raise PvarkitError subclasses and pass through
    untouched; those belong to exit code 3.
    """
    try:
        return build(*args)
    except PvarkitError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise _ParseFailure(str(exc)) from exc


def _dump_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(obj, fp, indent=2)
        fp.write("\n")


def _parse_depths(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise _ParseFailure("depth schedule must be comma-separated integers") from exc


def _resolve_threads(flag_value: int) -> int:
    env = os.environ.get("PVARKIT_THREADS")
    if env is None:
        return flag_value
    try:
        return int(env)
    except ValueError as exc:
        raise _ParseFailure("PVARKIT_THREADS must be an integer, got %r" % env) from exc


def _load_path(path: str) -> DiscretePath:
    return _schema(DiscretePath.from_json, _load_json(path))


def _load_generator(path: str) -> Generator:
    return _schema(Generator.from_json, _load_json(path))


def _load_points(path: str) -> list[Vector]:
    obj = _load_json(path)

    def build(obj):
        if not isinstance(obj, dict) or "space" not in obj or "points" not in obj:
            raise ValueError("points file needs 'space' and 'points'")
        space = VectorSpace.from_json(obj["space"])
        return [Vector.from_json(space, v) for v in obj["points"]]

    return _schema(build, obj)


def cmd_pvar(args) -> int:
    path = _load_path(args.input)
    result = pvar(path, args.p)
    _dump_json(result.to_json(), args.out)
    print(
        "p-variation (p=%g) of %d samples: %.17g  (partition of %d points) -> %s"
        % (args.p, len(path), result.value, len(result.partition), args.out)
    )
    return EXIT_OK


def cmd_compose(args) -> int:
    f = _load_generator(args.gen)
    path = _load_path(args.input)
    composed = compose_path(f, path)
    _dump_json(composed.to_json(), args.out)
    print("composed %s over %d samples -> %s" % (f.label, len(path), args.out))
    return EXIT_OK


def cmd_holder(args) -> int:
    f = _load_generator(args.gen)
    points = _load_points(args.points)
    estimate = estimate_holder(f, points, args.alpha)
    if args.out:
        _dump_json(estimate.to_json(), args.out)
    shown = "inf" if estimate.infinite else "%.17g" % estimate.constant
    print(
        "holder estimate (alpha=%g) over %d points: constant %s from %d pairs"
        % (args.alpha, len(points), shown, estimate.pair_count)
    )
    return EXIT_OK


def cmd_bound_check(args) -> int:
    f = _load_generator(args.gen)
    path = _load_path(args.input)
    report = composition_bound_check(f, path, args.p, args.q)
    if args.out:
        _dump_json(report.to_json(), args.out)
    print(
        "bound check p=%g q=%g: L_hat=%.17g var_p=%.17g var_q=%.17g -> %s"
        % (
            args.p,
            args.q,
            report.l_hat,
            report.var_p,
            report.var_q,
            "holds" if report.bound_holds else "FAILS",
        )
    )
    if not report.bound_holds:
        print("claimed bound failed: var_q exceeds L_hat^q var_p", file=sys.stderr)
        return EXIT_CLAIM
    return EXIT_OK


def _subreport(report: DivergenceReport, depths: Sequence[int]) -> DivergenceReport:
    index = {d: i for i, d in enumerate(report.depths)}
    picked = [index[d] for d in depths]
    return DivergenceReport.build(
        [report.depths[i] for i in picked],
        [report.quantities[i] for i in picked],
        [report.claimed_lower_bounds[i] for i in picked],
    )


def cmd_lab(args) -> int:
    depths = _parse_depths(args.depths) if args.depths else _LAB_DEFAULT_DEPTHS[args.experiment]
    try:
        config = RunConfig(
            p=args.p,
            q=args.q,
            depths=tuple(depths),
            cap=args.cap,
            strict=args.strict,
            seed=args.seed,
            threads=_resolve_threads(args.threads),
        )
    except ValueError as exc:
        raise _ParseFailure(str(exc)) from exc

    gen = None
    if getattr(args, "gen", None):
        if args.experiment in ("example3", "example5"):
            raise _ParseFailure("--gen is not used by the %s experiment" % args.experiment)
        gen = _load_generator(args.gen)

    covering_note = None
    if args.experiment == "example3":
        outcome = example3_experiment(config.depths, eps=args.eps)
        report = outcome.report
        covering_note = "epsilon-net sizes at eps=%g: %s over point counts %s" % (
            outcome.eps,
            outcome.covering_counts,
            outcome.point_counts,
        )
    elif args.experiment == "step4":
        outcome = step4_divergence_experiment(
            p=config.p,
            q=config.q,
            depths=config.depths,
            cap=config.cap,
            strict=config.strict,
            threads=config.threads,
            generator=gen,
        )
        report = outcome.report
    elif args.experiment == "example5":
        report = _subreport(gen_example5_experiment(max(config.depths)), config.depths)
    elif args.experiment == "thm6":
        report = thm6_experiment(
            depths=config.depths,
            p=config.p,
            q=config.q,
            beta=config.p / (2.0 * config.q),
            seed=config.seed,
            generator=gen,
        )
    else:
        report = remark_experiment(depths=config.depths, q=config.q, generator=gen)

    with open(args.out, "w", encoding="utf-8", newline="") as fp:
        report.write_csv(fp)
    summary_path = args.json or os.path.splitext(args.out)[0] + ".json"
    _dump_json(report.to_json(), summary_path)

    for row in report.rows():
        print(
            "depth %d: quantity %.17g vs claimed %.17g -> %s"
            % (row[0], row[1], row[2], "ok" if row[3] else "FAILED")
        )
    if covering_note:
        print(covering_note)
    print("wrote %s and %s" % (args.out, summary_path))
    if not report.all_satisfied:
        bad = [str(row[0]) for row in report.rows() if not row[3]]
        print(
            "claimed bound failed at depth(s) %s: this signals a bug or a "
            "violated precondition" % ",".join(bad),
            file=sys.stderr,
        )
        return EXIT_CLAIM
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvarkit",
        description="p-variation of discrete paths, composition operators, "
        "and the packaged stress experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_pvar = sub.add_parser("pvar", help="p-variation of a JSON path")
    p_pvar.add_argument("--input", required=True, help="path JSON file")
    p_pvar.add_argument("--p", type=float, required=True)
    p_pvar.add_argument("--out", required=True, help="result JSON file")
    p_pvar.set_defaults(handler=cmd_pvar)

    p_comp = sub.add_parser("compose", help="apply a generator to every sample")
    p_comp.add_argument("--gen", required=True, help="generator JSON file")
    p_comp.add_argument("--input", required=True, help="path JSON file")
    p_comp.add_argument("--out", required=True, help="composed path JSON file")
    p_comp.set_defaults(handler=cmd_compose)

    p_hold = sub.add_parser("holder", help="largest observed Holder ratio")
    p_hold.add_argument("--gen", required=True, help="generator JSON file")
    p_hold.add_argument("--points", required=True, help="points JSON file")
    p_hold.add_argument("--alpha", type=float, required=True)
    p_hold.add_argument("--out", help="optional estimate JSON file")
    p_hold.set_defaults(handler=cmd_holder)

    p_bc = sub.add_parser("bound-check", help="variation transfer inequality check")
    p_bc.add_argument("--gen", required=True, help="generator JSON file")
    p_bc.add_argument("--input", required=True, help="path JSON file")
    p_bc.add_argument("--p", type=float, required=True)
    p_bc.add_argument("--q", type=float, required=True)
    p_bc.add_argument("--out", help="optional report JSON file")
    p_bc.set_defaults(handler=cmd_bound_check)

    p_lab = sub.add_parser("lab", help="run a packaged experiment")
    p_lab.add_argument(
        "--experiment",
        required=True,
        choices=("example3", "step4", "example5", "thm6", "remark"),
    )
    p_lab.add_argument("--p", type=float, default=1.0)
    p_lab.add_argument("--q", type=float, default=2.0)
    p_lab.add_argument("--depths", help="comma-separated depth schedule")
    p_lab.add_argument("--cap", type=int, default=SPIKE_CAP, help="spike cap per block")
    p_lab.add_argument("--strict", action="store_true", help="refuse capped blocks")
    p_lab.add_argument("--eps", type=float, default=0.01, help="covering radius (example3)")
    p_lab.add_argument("--gen", help="generator JSON overriding the default map")
    p_lab.add_argument("--seed", type=int, default=0)
    p_lab.add_argument("--threads", type=int, default=1)
    p_lab.add_argument("--out", required=True, help="CSV report file")
    p_lab.add_argument("--json", help="JSON summary file (default: out with .json)")
    p_lab.set_defaults(handler=cmd_lab)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _ParseFailure as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except NoViolatorFound as exc:
        print("NoViolatorFound: %s" % exc, file=sys.stderr)
        return EXIT_CLAIM
    except PvarkitError as exc:
        print("invariant violation: %s" % exc, file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print("invariant violation: %s" % exc, file=sys.stderr)
        return EXIT_INVARIANT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
