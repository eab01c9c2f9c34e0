"""``onematch`` command line: gen, validate, match, audit, oracle, bound.

stdout carries exactly one JSON document; diagnostics go to stderr.
Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .audit import AuditInputError, audit_instance
from .bounds import theorem_bound
from .drawing import Drawing, DrawingError, validate_drawing
from .generators import FIXED_NAMES, GenConfig, fixed_instance, generate
from .graph import GraphError, Matching, matching_from_json, min_degree, validate_matching
from .matching import (
    GraphTooLargeError,
    brute_force_maximum_matching,
    eliminate_bounded_augmenting_paths,
)

log = logging.getLogger("onematch")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
SEED_ENV = "ONEMATCH_SEED"


class InputError(Exception):
    pass


def _emit(doc: object) -> None:
    json.dump(doc, sys.stdout, indent=None, separators=(",", ":"))
    sys.stdout.write("\n")


def _read_json(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _read_drawing(path: str) -> Drawing:
    data = _read_json(path)
    if "drawing" in data and isinstance(data["drawing"], dict):
        data = data["drawing"]
    try:
        return Drawing.from_json(data)
    except (DrawingError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _read_matching(path: str) -> Matching:
    data = _read_json(path)
    if "matching" in data:
        data = data["matching"]
    try:
        return matching_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed matching: {exc!r}") from exc


def _graph_of(d: Drawing):
    try:
        return d.to_graph()
    except (DrawingError, GraphError) as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------- verbs


def cmd_gen(args: argparse.Namespace) -> int:
    seed = int(os.environ[SEED_ENV]) if os.environ.get(SEED_ENV) else args.seed
    if args.fixed:
        d = fixed_instance(args.fixed)
    else:
        try:
            cfg = GenConfig(args.n, seed, args.crossings, args.sparsify)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        d = generate(cfg, stellated=args.stellate)
    _emit(d.to_json())
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    d = _read_drawing(args.file)
    problems = validate_drawing(d, simple=args.simple, allow_disconnected=True)
    doc = {"valid": not problems, "problems": problems,
           "n": len(d.vertices), "m": len(d.edges), "crossings": len(d.crossings)}
    if not problems:
        try:
            doc["min_degree"] = min_degree(d.to_graph())
        except (DrawingError, GraphError):
            doc["min_degree"] = min((d.degree(v) for v in d.vertices), default=None)
    for p in problems:
        log.error("%s: %s", args.file, p)
    _emit(doc)
    return EXIT_FAIL if problems else EXIT_OK


def cmd_match(args: argparse.Namespace) -> int:
    d = _read_drawing(args.file)
    g = _graph_of(d)
    m = eliminate_bounded_augmenting_paths(g, None, args.k)
    assert validate_matching(g, m)
    _emit({"matching": m.to_json(),
           "stats": {"n": g.n, "m": g.m, "k": args.k, "size": len(m),
                     "free": g.n - 2 * len(m)}})
    return EXIT_OK


def _audit_one(path: str, k: int, matching: str | None, dump: str | None) -> dict:
    d = _read_drawing(path)
    M = _read_matching(matching) if matching else None
    return audit_instance(d, M, k, dump_dir=dump).to_json()


def cmd_audit(args: argparse.Namespace) -> int:
    if args.matching and len(args.files) > 1:
        raise InputError("--matching applies to a single drawing")
    dumps = [args.dump_stages if len(args.files) == 1 else
             (os.path.join(args.dump_stages, str(i)) if args.dump_stages else None)
             for i in range(len(args.files))]
    jobs = [(f, args.k, args.matching, dd) for f, dd in zip(args.files, dumps)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_audit_star, jobs))
    else:
        reports = [_audit_star(j) for j in jobs]
    for path, r in zip(args.files, reports):
        for rec in r["records"]:
            if rec["status"] == "fail":
                log.error("%s: %s failed (%s vs %s)", path, rec["name"], rec["lhs"], rec["rhs"])
    _emit(reports[0] if len(reports) == 1 else {"reports": reports})
    return EXIT_OK if all(r["ok"] for r in reports) else EXIT_FAIL


def _audit_star(job: tuple) -> dict:
    return _audit_one(*job)


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _graph_of(_read_drawing(args.file))
    try:
        m = brute_force_maximum_matching(g)
    except GraphTooLargeError as exc:
        raise InputError(str(exc)) from exc
    _emit({"matching": m.to_json(), "stats": {"n": g.n, "size": len(m)}})
    return EXIT_OK


def bound_expression(n: int, delta: int, k: int) -> str:
    b = theorem_bound(n, delta, k)
    num, den = {
        (3, 9): (n + 12, 7), (3, 3): (n + 12, 8), (4, 9): (3 * (n + 12), 10),
    }.get((delta, k), (n + 12, 3))
    value = str(b.numerator) if b.denominator == 1 else f"{b.numerator}/{b.denominator}"
    return f"{num}/{den} = {value}"


def cmd_bound(args: argparse.Namespace) -> int:
    try:
        b = theorem_bound(args.n, args.delta, args.k)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    expr = bound_expression(args.n, args.delta, args.k)
    print(expr, file=sys.stderr)
    _emit({"n": args.n, "delta": args.delta, "k": args.k,
           "bound": f"{b.numerator}/{b.denominator}", "expression": expr,
           "min_matching_size": math.ceil(Fraction(b))})
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="onematch", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="generate a seeded 1-planar drawing")
    g.add_argument("--n", type=int, default=30)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--crossings", type=float, default=0.1, metavar="P")
    g.add_argument("--sparsify", type=float, default=0.0, metavar="Q")
    g.add_argument("--stellate", action="store_true",
                   help="add a degree-3 vertex in every face before crossings")
    g.add_argument("--fixed", metavar="NAME",
                   help=f"named instance: {', '.join(FIXED_NAMES)} or medial:SEED")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("validate", help="check a drawing")
    v.add_argument("file")
    v.add_argument("--simple", action="store_true", help="also reject parallel edges")
    v.set_defaults(func=cmd_validate)

    m = sub.add_parser("match", help="matching without short augmenting paths")
    m.add_argument("file")
    m.add_argument("--k", type=int, default=9)
    m.set_defaults(func=cmd_match)

    a = sub.add_parser("audit", help="check every bound on an instance")
    a.add_argument("files", nargs="+", metavar="FILE")
    a.add_argument("--k", type=int, default=9, choices=(3, 9))
    a.add_argument("--matching", metavar="FILE")
    a.add_argument("--dump-stages", metavar="DIR")
    a.add_argument("--jobs", type=int, default=1)
    a.set_defaults(func=cmd_audit)

    o = sub.add_parser("oracle", help="maximum matching by brute force (n <= 16)")
    o.add_argument("file")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bound", help="lower bound on the matching size")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--delta", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.set_defaults(func=cmd_bound)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    # a fresh handler per run so the current sys.stderr is used
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("onematch: %(message)s"))
    log.handlers = [handler]
    log.propagate = False
    log.setLevel(logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (InputError, AuditInputError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
