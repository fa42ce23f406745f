"""Command-line driver: ``lbca present|groebner|complex|singular|oracle|schema``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from pathlib import Path

from . import complex as cx
from .catalog import random_corpus
from .polynomial import Polynomial, YHeavyOrder, pi_map
from .presentation import (
    adjacent_cluster_variables,
    certify_groebner,
    choice_expansion_oracle,
    cycle_polynomial,
    expansion_rhs,
    generators,
    initial_ideal_generators,
)
from .quiver import DirectedCycle, QuiverError, seed_from_dict, simple_cycles
from .report import REPORT_SCHEMA, RunReport, digest
from .singularity import (
    NotOnVariety,
    RationalPoint,
    jacobian_rank,
    on_variety,
    path_quiver,
    path_singular_locus,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2
ORACLE_MAX_CYCLE = 8


class InputError(Exception):
    pass


class _Timer:
    def __init__(self):
        self.timings: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = time.perf_counter() - start


def _read_json(path: str) -> tuple[dict, bytes]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(raw), raw
    except json.JSONDecodeError as exc:
        raise InputError(f"ParseError: {path}: {exc}") from exc


def _load_seed(path: str):
    data, raw = _read_json(path)
    try:
        return seed_from_dict(data), raw
    except QuiverError as exc:
        raise InputError(f"ValidationError: {type(exc).__name__}: {exc}") from exc


def _order(args) -> YHeavyOrder:
    return YHeavyOrder(args.order)


def _monomial_text(n: int, m: tuple) -> str:
    return Polynomial(n, {m: 1}).format()


def cmd_present(args, timer: _Timer) -> RunReport:
    seed, raw = _load_seed(args.input)
    order = _order(args)
    with timer.stage("present"):
        primes = adjacent_cluster_variables(seed)
        pres = generators(seed, order)
    verdicts = {
        "n": seed.n,
        "frozen": sorted(seed.frozen),
        "order": order.value,
        "adjacent": [
            {"vertex": i, "laurent": p.format(), "fraction": p.format_fraction()}
            for i, p in enumerate(primes, start=1)
        ],
        "defining": [p.format(order) for p in pres.defining],
        "cycles": [
            {"cycle": list(c.vertices), "polynomial": p.format(order)} for c, p in pres.cycles.items()
        ],
    }
    return RunReport("present", digest(raw), verdicts)


def _certify_one(seed, order: YHeavyOrder) -> dict:
    cert = certify_groebner(seed, order)
    g = cert.groebner
    out = {
        "certified": cert.certified,
        "reason": cert.reason,
        "s_pairs": {"total": g.pairs_total, "skipped": g.pairs_skipped, "reduced": g.pairs_reduced},
    }
    if order is YHeavyOrder.GRADED_LEX:
        out["initial_ideal"] = [_monomial_text(seed.n, m) for m in initial_ideal_generators(seed, order)]
    else:
        out["informational"] = True
    return out


def cmd_groebner(args, timer: _Timer) -> RunReport:
    order = _order(args)
    if args.corpus is not None:
        failed = []
        with timer.stage("corpus"):
            corpus = random_corpus(args.corpus, args.seed, args.max_n, args.max_mult)
            for idx, q in enumerate(corpus):
                if not certify_groebner(q, order):
                    failed.append({"index": idx, "quiver": q.to_dict()})
        verdicts = {
            "order": order.value,
            "corpus": args.corpus,
            "seed": args.seed,
            "passed": args.corpus - len(failed),
            "failed": failed,
        }
        key = f"corpus:{args.corpus}:{args.seed}:{args.max_n}:{args.max_mult}".encode()
        return RunReport("groebner", digest(key), verdicts, ok=not failed)
    if not args.input:
        raise InputError("groebner needs an input file or --corpus N")
    seed, raw = _load_seed(args.input)
    with timer.stage("certify"):
        verdicts = {"order": order.value, **_certify_one(seed, order)}
    return RunReport("groebner", digest(raw), verdicts, ok=verdicts["certified"])


def _load_complex(path: str):
    data, raw = _read_json(path)
    if "S" in data:
        try:
            return cx.ComplexSpec.from_dict(data), raw
        except (cx.ComplexError, TypeError, KeyError) as exc:
            raise InputError(f"ValidationError: {exc}") from exc
    try:
        return cx.complex_of_quiver(seed_from_dict(data)), raw
    except QuiverError as exc:
        raise InputError(f"ValidationError: {type(exc).__name__}: {exc}") from exc


def cmd_complex(args, timer: _Timer) -> RunReport:
    spec, raw = _load_complex(args.input)
    wanted = {k for k in ("facets", "f_vector", "classify", "decompose", "boundary") if getattr(args, k)}
    wanted = wanted or {"classify"}
    verdicts: dict = {"spec": spec.to_dict()}
    ok = True
    try:
        if "facets" in wanted:
            with timer.stage("facets"):
                verdicts["facets"] = [cx.format_face(F) for F in cx.facets(spec)]
        if "f_vector" in wanted:
            with timer.stage("f_vector"):
                fv = cx.f_vector(spec)
            verdicts["f_vector"] = list(fv)
            verdicts["euler_characteristic"] = cx.euler_characteristic(fv)
        if "classify" in wanted:
            with timer.stage("classify"):
                try:
                    verdicts["classification"] = cx.classify(spec).to_dict()
                except cx.EvidenceMismatch as exc:
                    verdicts["classification"] = {"error": str(exc)}
                    ok = False
        if "decompose" in wanted:
            with timer.stage("decompose"):
                try:
                    tree = cx.vertex_decomposition(spec)
                    verified = cx.verify_shedding_tree(tree)
                    verdicts["decomposition"] = {
                        "shedding_order": [str(v) for v in cx.shedding_order(tree)],
                        "depth": cx.tree_depth(tree),
                        "nodes": cx.tree_size(tree),
                        "verified": verified,
                    }
                    ok = ok and verified
                except cx.ShedFailure as exc:
                    verdicts["decomposition"] = {"error": str(exc), "verified": False}
                    ok = False
        if "boundary" in wanted:
            with timer.stage("boundary"):
                if spec.is_sphere_case:
                    verdicts["boundary"] = {"sphere": True, "ridges": []}
                else:
                    ridges = cx.boundary(spec)
                    verdicts["boundary"] = {
                        "sphere": False,
                        "ridges": [cx.format_face(R) for R in ridges],
                    }
    except cx.GroundSetTooLarge as exc:
        raise InputError(f"GroundSetTooLarge: {exc}") from exc
    return RunReport("complex", digest(raw), verdicts, ok=ok)


def cmd_singular(args, timer: _Timer) -> RunReport:
    if args.path_quiver is not None:
        n = args.path_quiver
        if n < 1:
            raise InputError("--path-quiver needs n >= 1")
        with timer.stage("locus"):
            pts = path_singular_locus(n)
            q = path_quiver(n)
            found = [{**p.to_dict(), "rank": jacobian_rank(q, p).rank} for p in pts]
        verdicts = {"mode": "path-quiver", "n": n, "singular_points": found}
        return RunReport("singular", digest(f"path-quiver:{n}".encode()), verdicts)
    if not (args.input and args.point):
        raise InputError("singular needs --path-quiver N, or an input file with --point FILE")
    seed, raw = _load_seed(args.input)
    pdata, praw = _read_json(args.point)
    try:
        point = RationalPoint.from_dict(pdata)
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"ParseError: bad point file: {exc}") from exc
    with timer.stage("jacobian"):
        try:
            ev = jacobian_rank(seed, point)
        except NotOnVariety as exc:
            verdicts = {"mode": "point", "on_variety": False, "error": str(exc)}
            return RunReport("singular", digest(raw + praw), verdicts, ok=False)
    verdicts = {
        "mode": "point",
        "on_variety": on_variety(seed, point),
        "rank": ev.rank,
        "n": seed.n,
        "smooth": ev.rank >= seed.n,
    }
    return RunReport("singular", digest(raw + praw), verdicts)


def cmd_oracle(args, timer: _Timer) -> RunReport:
    seed, raw = _load_seed(args.input)
    if args.cycle:
        try:
            cycles = [DirectedCycle(tuple(int(v) for v in args.cycle.split(",")))]
        except (ValueError, QuiverError) as exc:
            raise InputError(f"bad --cycle: {exc}") from exc
    else:
        cycles = [DirectedCycle(c) for c in simple_cycles(seed.quiver) if len(c) <= ORACLE_MAX_CYCLE]
    results = []
    ok = True
    with timer.stage("oracle"):
        for c in cycles:
            try:
                brute = choice_expansion_oracle(seed, c)
                expanded = pi_map(seed, expansion_rhs(seed, c))
                relation = pi_map(seed, cycle_polynomial(seed, c))
            except QuiverError as exc:
                raise InputError(f"{type(exc).__name__}: {exc}") from exc
            entry = {
                "cycle": list(c.vertices),
                "choice_graphs": 2 ** len(c),
                "oracle_terms": len(brute),
                "expansion_matches": brute == expanded,
                "cycle_relation_vanishes": relation.is_zero(),
            }
            ok = ok and entry["expansion_matches"] and entry["cycle_relation_vanishes"]
            results.append(entry)
    return RunReport("oracle", digest(raw), {"cycles": results}, ok=ok)


def _text(report: RunReport) -> str:
    lines = [f"{report.command}: {'ok' if report.ok else 'FAILED'}"]

    def walk(value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            for k, v in value.items():
                if isinstance(v, list) and all(isinstance(e, (int, bool)) for e in v):
                    lines.append(f"{pad}{k}: {v}")
                elif isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(value, list):
            for v in value:
                if isinstance(v, dict):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {v}")
        else:
            lines.append(f"{pad}{value}")

    walk(report.verdicts, 1)
    if report.timings:
        lines.append("  timings:")
        for k, v in report.timings.items():
            lines.append(f"    {k}: {v:.4f}s")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")

    parser = argparse.ArgumentParser(prog="lbca", description="Lower bound cluster algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("present", parents=[common], help="adjacent variables and generators")
    p.add_argument("input")
    p.add_argument("--order", choices=[o.value for o in YHeavyOrder], default=YHeavyOrder.GRADED_LEX.value)
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("groebner", parents=[common], help="Groebner certification")
    p.add_argument("input", nargs="?")
    p.add_argument("--order", choices=[o.value for o in YHeavyOrder], default=YHeavyOrder.GRADED_LEX.value)
    p.add_argument("--corpus", type=int, help="certify N random quivers instead of a file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-mult", type=int, default=2)
    p.set_defaults(func=cmd_groebner)

    p = sub.add_parser("complex", parents=[common], help="Stanley-Reisner complex analysis")
    p.add_argument("input")
    p.add_argument("--facets", action="store_true")
    p.add_argument("--f-vector", dest="f_vector", action="store_true")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--decompose", action="store_true")
    p.add_argument("--boundary", action="store_true")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("singular", parents=[common], help="Jacobian singularity analysis")
    p.add_argument("input", nargs="?")
    p.add_argument("--path-quiver", type=int)
    p.add_argument("--point")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("oracle", parents=[common], help="choice-graph cross-check of cycle relations")
    p.add_argument("input")
    p.add_argument("--cycle", help="comma-separated cycle, e.g. 1,2,3")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("schema", help="print the JSON schema of run reports")
    p.set_defaults(func=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "schema":
        print(json.dumps(REPORT_SCHEMA, indent=2, sort_keys=True))
        return EXIT_OK
    timer = _Timer()
    try:
        report = args.func(args, timer)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timings:
        report.timings = timer.timings
    if args.format == "json":
        print(report.to_json(with_timings=args.timings))
    else:
        print(_text(report))
    return EXIT_OK if report.ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
