"""Command-line front end.

Exit codes: 0 success, 1 verification or holdout failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classes
from .arrangement import AffineArrangement, classify_position, sample_general_position
from .count import CountReport, default_threads, fibre_survey
from .errors import FeynquadError
from .ffield import PrimeField
from .graph import parse_graph
from .verify import (
    count_graph,
    graph_candidates,
    interpolate_counts,
    parse_primes,
    quadric_target,
    verify_graph,
    verify_quadric,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _prime(value: str) -> int:
    try:
        q = int(value)
    except ValueError:
        raise UsageError(f"{value!r} is not an integer") from None
    try:
        PrimeField(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return q


def cmd_class(args) -> int:
    d = args.dim
    if args.quadric:
        if args.quadric == "blowup":
            cls = classes.blowup_class(d)
        else:
            cls = quadric_target(args.quadric)[0](d)
        target = f"{args.quadric} quadric"
    elif args.config is not None:
        fn = {
            "scissor": classes.configuration_complement_class,
            "forgetful": classes.forgetful_route_class,
        }.get(args.method or "scissor")
        if fn is None:
            raise UsageError(f"method {args.method!r} is not valid for --config")
        cls = fn(args.config, d)
        target = f"configuration space n={args.config}"
    elif args.graph:
        g = parse_graph(args.graph)
        method = args.method or "corrected"
        cls = graph_candidates(g, d, [method])[method]
        target = f"Z[{g}]"
    else:
        raise UsageError("give one of --graph, --quadric, --config")
    _emit(args, {"target": target, "d": d, **cls.to_json()}, str(cls))
    return EXIT_OK


def cmd_count(args) -> int:
    g = parse_graph(args.graph)
    q = _prime(args.prime)
    rep: CountReport = count_graph(g, args.dim, q, args.algo, args.threads, args.budget)
    text = (
        f"graph={g} d={rep.d} q={rep.q} count={rep.count} "
        f"algorithm={rep.algorithm} elapsed_ms={rep.elapsed * 1000:.1f} threads={rep.thread_count}"
    )
    _emit(args, rep.to_json(), text)
    return EXIT_OK


def cmd_verify(args) -> int:
    primes = parse_primes(args.primes)
    if args.quadric:
        rep = verify_quadric(args.quadric, args.dim, primes, args.budget)
    elif args.graph:
        methods = [m.strip() for m in args.methods.split(",") if m.strip()]
        rep = verify_graph(
            parse_graph(args.graph), args.dim, primes, methods, args.algo, args.threads, args.budget
        )
    else:
        raise UsageError("give --graph or --quadric")
    _emit(args, rep.to_json(), rep.render())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_interpolate(args) -> int:
    g = parse_graph(args.graph)
    primes = parse_primes(args.primes)
    holdout = parse_primes(args.holdout) if args.holdout else []
    try:
        res = interpolate_counts(g, args.dim, primes, holdout, args.threads, args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"class: {res.fit}" if res.fit is not None else f"no integer fit: {res.error}"]
    for q, c, p in res.holdout_rows:
        status = "match" if c == p else "MISMATCH"
        lines.append(f"holdout q={q}: count={c} predicted={p} {status}")
    _emit(args, res.to_json(), "\n".join(lines))
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_survey(args) -> int:
    q = _prime(args.prime)
    s = fibre_survey(args.n, args.dim, q, budget=args.budget)
    text = "\n".join(
        [
            f"survey n={s.n} d={s.d} q={s.q} (base points {s.base_cardinality})",
            f"  case1 (in Z x A^d):        {s.case1_count}",
            f"  case2 (w^a = w^i):         {s.case2_count}",
            f"  case3 general:             {s.case3_general}",
            f"  case3 almost-general:      {s.case3_almost_general}",
            f"  case3 violating:           {s.case3_violating}",
            f"    of which parallel pairs: {s.case3_parallel}",
            f"  fibre point total:         {s.fibre_point_total}",
            f"  fibrewise count:           {s.expected_total}",
            f"  consistent:                {s.consistent}",
        ]
    )
    _emit(args, s.to_json(), text)
    return EXIT_OK if s.consistent else EXIT_FAIL


def cmd_arr_classify(args) -> int:
    try:
        with open(args.file) as fh:
            arr = AffineArrangement.from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read arrangement from {args.file}: {exc}") from None
    pos = classify_position(arr)
    _emit(args, pos.to_json(), pos.render())
    return EXIT_OK


def cmd_arr_sample(args) -> int:
    q = _prime(args.prime)
    arr = sample_general_position(args.dim, q, args.k, args.seed)
    _emit(args, arr.to_json(), json.dumps(arr.to_json()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--threads", type=int, default=default_threads())
    common.add_argument("--budget", type=int, default=None, help="enumeration budget override")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = argparse.ArgumentParser(prog="feynquad", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("class", parents=[common], help="print a class in Z[L]")
    c.add_argument("--graph")
    c.add_argument("--quadric", choices=["simple", "closure", "exceptional", "blowup"])
    c.add_argument("--config", type=int, help="configuration space for a star of this size")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--method", help="paper|corrected (graphs), scissor|forgetful (--config)")
    c.set_defaults(func=cmd_class)

    c = sub.add_parser("count", parents=[common], help="count F_q-points of a Feynman quadric")
    c.add_argument("--graph", required=True)
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--prime", required=True)
    c.add_argument("--algo", choices=["auto", "brute", "fibrewise"], default="auto")
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("verify", parents=[common], help="compare candidate classes with counts")
    c.add_argument("--graph")
    c.add_argument("--quadric", choices=["simple", "closure", "exceptional"])
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--primes", required=True)
    c.add_argument("--methods", default="paper,corrected")
    c.add_argument("--algo", choices=["auto", "brute", "fibrewise"], default="auto")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("interpolate", parents=[common], help="fit a class to counts")
    c.add_argument("--graph", required=True)
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--primes", required=True)
    c.add_argument("--holdout", default="")
    c.set_defaults(func=cmd_interpolate)

    c = sub.add_parser("survey", parents=[common], help="classify base points by fibre type")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--prime", required=True)
    c.set_defaults(func=cmd_survey)

    arr = sub.add_parser("arr", help="hyperplane arrangement tools")
    arr_sub = arr.add_subparsers(dest="arr_command", required=True)
    c = arr_sub.add_parser("classify", parents=[common], help="classify an arrangement JSON file")
    c.add_argument("file")
    c.set_defaults(func=cmd_arr_classify)
    c = arr_sub.add_parser("sample", parents=[common], help="seeded general-position sample")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--prime", required=True)
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_arr_sample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, FeynquadError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
