"""Command-line front end.

Exit codes: 0 ok, 1 internal invariant violation, 2 a checked inequality
or identity failed, 64 usage error, 75 time budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from triedge import extremal, search, simplex
from triedge.config import TOL, Tolerances
from triedge.extremal import ConstructionParams
from triedge.graph import (
    GraphFormatError,
    clique_number,
    non_triangular_subgraph,
    parse_graph6,
    to_graph6,
    tr_count,
)

EXIT_OK, EXIT_INTERNAL, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 64, 75


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    fmt: str | None
    workers: int
    cap: int | None
    seed: int
    trace: bool
    max_seconds: float | None
    tol: Tolerances


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", dest="fmt", choices=["json", "csv", "table"], default=None)
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $TRIEDGE_WORKERS or 1)")
    p.add_argument("--cap", type=int, default=search.DEFAULT_CAP, help="witnesses to report (0 = all)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", action="store_true", help="stream reduction moves to stderr as JSON lines")
    p.add_argument("--max-seconds", type=float, default=None)
    p.add_argument("--tol-supp", type=float, default=None)
    p.add_argument("--tol-eq", type=float, default=None)
    p.add_argument("--tol-assert", type=float, default=None)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="triedge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", parents=[common], help="t(n,e), g(n,e) and optionally exact Tr")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--exact", action="store_true")

    p = sub.add_parser("sweep", parents=[common], help="bounds table for all e above n^2/4")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--no-exact", action="store_true")

    p = sub.add_parser("brute", parents=[common], help="exact Tr(n,e) by exhaustive search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--g6", default=None, help="read candidate graphs from a file, or '-' for stdin")

    p = sub.add_parser("verify-efr", parents=[common], help="check Tr(n, floor(n^2/4)+1) = 2 floor(n/2) + 1")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("conjecture", parents=[common], help="dense-range family check of all minimizers")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("construct", parents=[common], help="three-part witness graph")
    p.add_argument("--n", type=int)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)

    p = sub.add_parser("reduce", parents=[common], help="triangular-edge weight reduction of a graph")
    p.add_argument("--g6", required=True, help="graph6 string, or '-' for stdin")

    p = sub.add_parser("zykov", parents=[common], help="Zykov symmetrization to a complete multipartite graph")
    p.add_argument("--g6", required=True)

    p = sub.add_parser("motzkin", parents=[common], help="seeded restarts of single-graph symmetrization")
    p.add_argument("--g6", required=True)
    p.add_argument("--restarts", type=int, default=20)
    return parser


def _config(args) -> RunConfig:
    workers = args.workers
    if workers is None:
        env = os.environ.get("TRIEDGE_WORKERS")
        try:
            workers = int(env) if env else 1
        except ValueError:
            raise UsageError(f"TRIEDGE_WORKERS={env!r} is not an integer")
    if workers < 1:
        raise UsageError("--workers must be positive")
    if args.cap < 0:
        raise UsageError("--cap must be nonnegative")
    if args.max_seconds is not None and args.max_seconds < 0:
        raise UsageError("--max-seconds must be nonnegative")
    tol = TOL.with_overrides(supp=args.tol_supp, eq=args.tol_eq, assertion=args.tol_assert)
    return RunConfig(args.command, args.fmt, workers, args.cap or None, args.seed,
                     args.trace, args.max_seconds, tol)


def _graph_lines(spec: str) -> Iterable[str]:
    if spec == "-":
        return [ln for ln in sys.stdin.read().splitlines() if ln.strip()]
    return [spec]


def _emit(rows: list[dict], fmt: str, fields: list[str] | None = None) -> None:
    if fmt == "json":
        payload = rows[0] if len(rows) == 1 else rows
        print(json.dumps(payload, indent=None))
        return
    fields = fields or list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
        return
    widths = {f: max(len(f), *(len(_cell(r.get(f))) for r in rows)) for f in fields}
    print("  ".join(f.rjust(widths[f]) for f in fields))
    for r in rows:
        print("  ".join(_cell(r.get(f)).rjust(widths[f]) for f in fields))


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def _search_kw(cfg: RunConfig) -> dict:
    return {"workers": cfg.workers, "max_seconds": cfg.max_seconds}


def cmd_bounds(args, cfg: RunConfig) -> int:
    rec = extremal.bounds(args.n, args.e, with_exact=args.exact, **_search_kw(cfg))
    _emit([rec.to_json()], cfg.fmt or "json", extremal.CSV_FIELDS)
    return EXIT_OK


def cmd_sweep(args, cfg: RunConfig) -> int:
    rows = search.sweep_bounds(args.n, exact=not args.no_exact, **_search_kw(cfg))
    bad = [f"e={r.e}: {m}" for r in rows for m in r.check()]
    _emit([r.to_json() for r in rows], cfg.fmt or "csv", extremal.CSV_FIELDS)
    for m in bad:
        print(f"VIOLATION {m}", file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_brute(args, cfg: RunConfig) -> int:
    if args.g6 is not None:
        if args.g6 == "-":
            lines = sys.stdin
        else:
            with open(args.g6) as fh:
                lines = fh.read().splitlines()
        res = search.brute_tr_from_stream(args.n, args.e, lines, cap=cfg.cap)
    else:
        res = search.brute_tr(args.n, args.e, cap=cfg.cap, **_search_kw(cfg))
    _emit([res.to_json()], cfg.fmt or "json")
    if res.n >= 3 and 4 * res.e > res.n ** 2 and res.tr_min > extremal.g_of(res.n, res.e)[0]:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify_efr(args, cfg: RunConfig) -> int:
    n = args.n
    e = search.efr_edges(n)
    res = search.brute_tr(n, e, cap=1, **_search_kw(cfg))
    want = search.efr_value(n)
    ok = res.tr_min == want
    if cfg.fmt == "json":
        _emit([{"n": n, "e": e, "tr": res.tr_min, "expected": want, "ok": ok}], "json")
    else:
        print(f"OK Tr({n},{e})={res.tr_min}" if ok else f"FAIL Tr({n},{e})={res.tr_min}, expected {want}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_conjecture(args, cfg: RunConfig) -> int:
    rep = search.check_conjecture1_dense(args.n, **_search_kw(cfg))
    if (cfg.fmt or "json") == "json":
        _emit([rep.to_json()], "json")
    else:
        rows = [dict(r.to_json(), violations=";".join(r.violations)) for r in rep.rows]
        _emit(rows, cfg.fmt, ["e", "status", "tr", "g", "minimizers", "violations"])
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_construct(args, cfg: RunConfig) -> int:
    parts = (args.a, args.b, args.c)
    if all(v is not None for v in parts):
        p = ConstructionParams(*parts)
    elif args.n is not None and not any(v is not None for v in parts):
        p = extremal.witness_params(args.n, args.e)
    else:
        raise UsageError("give either --n or all of --a --b --c")
    g = extremal.build_construction(p, args.e)
    out = {"a": int(p.a), "b": int(p.b), "c": int(p.c), "n": g.n, "e": g.edge_count,
           "tr": tr_count(g), "g6": to_graph6(g)}
    _emit([out], cfg.fmt or "json")
    return EXIT_OK


def cmd_reduce(args, cfg: RunConfig) -> int:
    outs = []
    for line in _graph_lines(args.g6):
        g = parse_graph6(line)
        g2 = non_triangular_subgraph(g)
        out = {"g6": to_graph6(g), "n": g.n, "e": g.edge_count, "tr": tr_count(g)}
        if g2.edge_count == 0:
            out["status"] = "not-applicable"
            outs.append(out)
            continue
        x = simplex.WeightVector.uniform(g.n)
        y, (u, v), trace = simplex.reduce_triangular(g, g2, x, cfg.tol)
        if cfg.trace and trace.moves:
            print(trace.to_jsonl(), file=sys.stderr)
        out.update({
            "status": "ok",
            "y": [float(w) for w in y.x],
            "support": list(y.support),
            "edge": [u, v],
            "f_g1": [simplex.quad_form(g, x), simplex.quad_form(g, y)],
            "f_g2": [simplex.quad_form(g2, x), simplex.quad_form(g2, y)],
            "moves": len(trace),
        })
        if 4 * g.edge_count > g.n ** 2:
            bound, _ = simplex.theorem7_bound(g, cfg.tol)
            out["tr_lower_bound"] = bound
        outs.append(out)
    _emit(outs, cfg.fmt or "json")
    return EXIT_OK


def cmd_zykov(args, cfg: RunConfig) -> int:
    outs = []
    for line in _graph_lines(args.g6):
        g = parse_graph6(line)
        z = simplex.zykov_symmetrize(g)
        outs.append({"g6": to_graph6(g), "result": to_graph6(z), "e_before": g.edge_count,
                     "e_after": z.edge_count, "omega_before": clique_number(g),
                     "omega_after": clique_number(z),
                     "complete_multipartite": simplex.is_complete_multipartite(z)})
    _emit(outs, cfg.fmt or "json")
    return EXIT_OK


def cmd_motzkin(args, cfg: RunConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    outs = []
    for line in _graph_lines(args.g6):
        g = parse_graph6(line)
        val, y = simplex.motzkin_straus_search(g, args.restarts, rng)
        target = simplex.motzkin_straus_value(g)
        outs.append({"g6": to_graph6(g), "value": float(val), "target": target,
                     "support": list(y.support), "ok": bool(abs(val - target) <= cfg.tol.loose)})
    _emit(outs, cfg.fmt or "json")
    return EXIT_OK if all(o["ok"] for o in outs) else EXIT_VIOLATION


COMMANDS = {
    "bounds": cmd_bounds,
    "sweep": cmd_sweep,
    "brute": cmd_brute,
    "verify-efr": cmd_verify_efr,
    "conjecture": cmd_conjecture,
    "construct": cmd_construct,
    "reduce": cmd_reduce,
    "zykov": cmd_zykov,
    "motzkin": cmd_motzkin,
}

_USAGE_ERRORS = (UsageError, GraphFormatError, search.StreamError, search.CapacityError,
                 extremal.InfeasibleInstance, extremal.InfeasibleConstruction, ValueError,
                 FileNotFoundError)
_VIOLATIONS = (extremal.SandwichViolation, simplex.CertificateError)
_INTERNAL = (extremal.ConstructionInvariantError, simplex.ReductionStalled, RuntimeError, AssertionError)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except search.BudgetExceeded as exc:
        print(f"triedge: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _VIOLATIONS as exc:
        print(f"triedge: violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except _INTERNAL as exc:
        print(f"triedge: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except _USAGE_ERRORS as exc:
        print(f"triedge: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
