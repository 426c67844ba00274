"""Exact Tr(n, e) by isomorphism-free exhaustive search.

Graphs are grown one vertex at a time by canonical augmentation: a child
is kept only when the added vertex lies in the automorphism orbit of the
child's canonically last vertex, so each isomorphism class appears once.
Two facts prune the tree, both valid for every induced subgraph of a
target graph:

* an edge in a triangle of an induced subgraph stays in that triangle, so
  the triangular-edge count of a partial graph is a lower bound;
* a k-vertex induced subgraph of an e-edge graph on n vertices has at least
  e - (C(n,2) - C(k,2)) edges.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator

import pynauty
from pynauty.nautywrap import graph_autgrp as _autgrp, graph_canonlab as _canonlab

from triedge.extremal import ConstructionParams, g_of
from triedge.graph import Graph, GraphFormatError, non_triangular_subgraph, parse_graph6, to_graph6, tr_count

MAX_SEARCH_N = 10
DEFAULT_CAP = 100


class CapacityError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class StreamError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class SearchResult:
    n: int
    e: int
    tr_min: int
    witnesses: list[str]
    family_verdicts: list[tuple[int, int, int] | None]
    nodes_explored: int = 0
    n_minimizers: int = 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "e": self.e,
            "tr_min": self.tr_min,
            "witnesses": self.witnesses,
            "family_verdicts": [list(v) if v else None for v in self.family_verdicts],
            "nodes_explored": self.nodes_explored,
            "n_minimizers": self.n_minimizers,
        }


# -- canonical forms ---------------------------------------------------------

class _FastGraph(pynauty.Graph):
    """pynauty graph built straight from bit-rows, skipping per-vertex validation."""

    def __init__(self, rows: list[int], k: int):
        self.number_of_vertices = k
        self.directed = False
        self._adjacency_dict = {v: _bit_list(rows[v]) for v in range(k)}
        self._vertex_coloring = []


_BIT_LISTS: dict[int, list[int]] = {}


def _bit_list(mask: int) -> list[int]:
    out = _BIT_LISTS.get(mask)
    if out is None:
        out = _BIT_LISTS[mask] = [v for v in range(mask.bit_length()) if mask >> v & 1]
    return out


def _nauty(rows: list[int], k: int) -> pynauty.Graph:
    return _FastGraph(rows, k)


def _relabel_rows(rows: list[int], lab: list[int]) -> tuple[int, ...]:
    pos = [0] * len(lab)
    for i, v in enumerate(lab):
        pos[v] = i
    out = []
    for v in lab:
        row, r = 0, rows[v]
        while r:
            low = r & -r
            row |= 1 << pos[low.bit_length() - 1]
            r ^= low
        out.append(row)
    return tuple(out)


def canonical_form(g: Graph) -> Graph:
    lab = pynauty.canon_label(_nauty(list(g.adj), g.n))
    return Graph(g.n, _relabel_rows(list(g.adj), lab))


def _nontri_edges(rows: list[int], k: int) -> list[int]:
    """Non-triangular edges as two-bit masks."""
    out = []
    for u in range(k):
        r = rows[u] >> (u + 1)
        v = u + 1
        while r:
            if r & 1 and not rows[u] & rows[v]:
                out.append(1 << u | 1 << v)
            r >>= 1
            v += 1
    return out


# -- search engine -----------------------------------------------------------

@dataclass
class _Node:
    rows: list[int]
    k: int
    edges: int
    tr: int
    nontri: list[int]


def _root() -> _Node:
    return _Node([0], 1, 0, 0, [])


@dataclass
class _Engine:
    n: int
    bound: dict[int, int]           # e -> largest Tr still of interest
    deadline: float | None = None
    best: dict[int, int] = field(default_factory=dict)
    minimizers: dict[int, set] = field(default_factory=dict)
    nodes: int = 0
    prune: bool = True

    def __post_init__(self):
        self._masks = {k: self._by_popcount(k) for k in range(1, self.n)}
        self._rebuild()

    @staticmethod
    def _by_popcount(k: int) -> list[list[int]]:
        out = [[] for _ in range(k + 1)]
        for m in range(1 << k):
            out[m.bit_count()].append(m)
        return out

    def _rebuild(self) -> None:
        """allowed[k][m]: largest Tr worth keeping for a k-vertex, m-edge graph."""
        n, total = self.n, comb(self.n, 2)
        self.allowed = {}
        for k in range(1, n + 1):
            room = total - comb(k, 2)
            row = []
            for m in range(comb(k, 2) + 1):
                if not self.prune:
                    row.append(m)
                    continue
                vals = [b for e, b in self.bound.items() if m <= e <= m + room]
                if k == n:
                    vals = [self.bound[m]] if m in self.bound else []
                row.append(max(vals) if vals else -1)
            self.allowed[k] = row

    def _tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes & 255 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("search exceeded its time budget")

    def children(self, node: _Node) -> Iterator[_Node]:
        k, rows = node.k, node.rows
        allowed = self.allowed[k + 1]
        seen = set()
        for d in range(k + 1):
            m = node.edges + d
            if m >= len(allowed) or allowed[m] < 0:
                continue
            cap = allowed[m]
            if node.tr > cap:
                continue
            for mask in self._masks[k][d]:
                tr = node.tr
                for pair in node.nontri:
                    if pair & mask == pair:
                        tr += 1
                r = mask
                while r:
                    low = r & -r
                    if rows[low.bit_length() - 1] & mask:
                        tr += 1
                    r ^= low
                if tr > cap:
                    continue
                child = [row | (mask >> v & 1) << k for v, row in enumerate(rows)]
                child.append(mask)
                ng = _nauty(child, k + 1)
                lab = _canonlab(ng)
                last = lab[-1]
                if last != k:
                    orbits = _autgrp(ng)[3]
                    if orbits[k] != orbits[last]:
                        continue
                cert = _relabel_rows(child, lab)
                if cert in seen:
                    continue
                seen.add(cert)
                nontri = _nontri_edges(child, k + 1) if k + 1 < self.n else []
                yield _Node(child, k + 1, m, tr, nontri), cert

    def run(self, node: _Node) -> None:
        self._tick()
        if node.k == self.n:
            return
        last_level = node.k + 1 == self.n
        for child, cert in self.children(node):
            if last_level:
                self._record(child, cert)
            else:
                self.run(child)

    def _record(self, child: _Node, cert: tuple[int, ...]) -> None:
        self.nodes += 1
        e, tr = child.edges, child.tr
        if e not in self.bound:
            return
        cur = self.best.get(e)
        if cur is None or tr < cur:
            self.best[e] = tr
            self.minimizers[e] = {cert}
            if self.prune and tr < self.bound[e]:
                self.bound[e] = tr
                self._rebuild()
        elif tr == cur:
            self.minimizers[e].add(cert)

    def frontier(self, depth: int) -> list[_Node]:
        level = [_root()]
        for _ in range(depth - 1):
            level = [c for node in level for c, _ in self.children(node)]
        return level


def _initial_bounds(n: int, es: Iterable[int]) -> dict[int, int]:
    return {e: max(g_of(n, e)[0], 0) if n >= 3 else e for e in es}


def _run_subtree(args):
    n, bound, rows, k, edges, tr, deadline = args
    eng = _Engine(n, dict(bound), deadline)
    eng.run(_Node(list(rows), k, edges, tr, _nontri_edges(list(rows), k)))
    return eng.best, eng.minimizers, eng.nodes


def _workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("TRIEDGE_WORKERS", "1"))
    return max(1, workers)


def _search(n: int, es: list[int], workers: int | None = None,
            max_seconds: float | None = None) -> tuple[dict, dict, int]:
    if n > MAX_SEARCH_N:
        raise CapacityError(
            f"native search stops at n={MAX_SEARCH_N}; pipe graphs from an external "
            f"generator into stream mode for n={n}")
    if n < 1:
        raise CapacityError("n must be positive")
    for e in es:
        if not 0 <= e <= comb(n, 2):
            raise ValueError(f"e={e} outside [0, C({n},2)]")
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    bound = _initial_bounds(n, es)
    if n == 1:
        return {0: 0}, {0: {(0,)}}, 1
    workers = _workers(workers)
    if workers == 1 or n <= 5:
        eng = _Engine(n, bound, deadline)
        eng.run(_root())
        return eng.best, eng.minimizers, eng.nodes
    eng = _Engine(n, dict(bound), deadline)
    items = eng.frontier(min(n - 1, 5))
    tasks = [(n, bound, tuple(nd.rows), nd.k, nd.edges, nd.tr, deadline) for nd in items]
    best, mins, nodes = {}, {}, eng.nodes
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for b, m, cnt in pool.map(_run_subtree, tasks):
            nodes += cnt
            for e, tr in b.items():
                if e not in best or tr < best[e]:
                    best[e], mins[e] = tr, set(m[e])
                elif tr == best[e]:
                    mins[e] |= m[e]
    return best, mins, nodes


def _result(n: int, e: int, best: dict, mins: dict, nodes: int, cap: int | None) -> SearchResult:
    if e not in best:
        raise RuntimeError(f"search found no graph with n={n}, e={e}")
    graphs = sorted(to_graph6(Graph(n, cert)) for cert in mins[e])
    shown = graphs if cap is None else graphs[:cap]
    verdicts = [_verdict(parse_graph6(s)) for s in shown]
    return SearchResult(n, e, best[e], shown, verdicts, nodes, len(graphs))


def _verdict(g: Graph):
    p = is_in_family(g)
    return None if p is None else (int(p.a), int(p.b), int(p.c))


def brute_tr(n: int, e: int, cap: int | None = DEFAULT_CAP, workers: int | None = None,
             max_seconds: float | None = None) -> SearchResult:
    """Exact Tr(n, e) with its minimizers (up to isomorphism)."""
    best, mins, nodes = _search(n, [e], workers, max_seconds)
    return _result(n, e, best, mins, nodes, cap)


def brute_tr_range(n: int, es: Iterable[int], cap: int | None = DEFAULT_CAP,
                   workers: int | None = None, max_seconds: float | None = None) -> dict[int, SearchResult]:
    """Several edge counts sharing one enumeration tree."""
    es = sorted(set(es))
    best, mins, nodes = _search(n, es, workers, max_seconds)
    return {e: _result(n, e, best, mins, nodes, cap) for e in es}


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """Every graph on n vertices once up to isomorphism (no pruning)."""
    if n == 1:
        yield Graph.empty(1)
        return
    eng = _Engine(n, {e: e for e in range(comb(n, 2) + 1)}, prune=False)

    def walk(node):
        for child, cert in eng.children(node):
            if child.k == n:
                yield Graph(n, cert)
            else:
                yield from walk(child)

    yield from walk(_root())


def brute_tr_from_stream(n: int, e: int, lines: Iterable[str], cap: int | None = DEFAULT_CAP) -> SearchResult:
    best, mins, count = None, set(), 0
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            g = parse_graph6(line)
        except GraphFormatError as exc:
            raise StreamError(str(exc), lineno) from exc
        if g.n != n or g.edge_count != e:
            raise StreamError(f"graph has n={g.n}, e={g.edge_count}; expected n={n}, e={e}", lineno)
        count += 1
        tr = tr_count(g)
        if best is None or tr < best:
            best, mins = tr, set()
        if tr == best:
            mins.add(canonical_form(g).adj)
    if best is None:
        raise StreamError("no graphs in stream", 0)
    return _result(n, e, {e: best}, {e: mins}, count, cap)


def efr_edges(n: int) -> int:
    return n * n // 4 + 1


def efr_value(n: int) -> int:
    return 2 * (n // 2) + 1


def verify_efr(n: int, **kw) -> bool:
    if not 4 <= n:
        raise ValueError("need n >= 4")
    return brute_tr(n, efr_edges(n), **kw).tr_min == efr_value(n)


# -- family membership -------------------------------------------------------

def is_in_family(g: Graph) -> ConstructionParams | None:
    """(a, b, c) if g splits as A | B | C with B x C exactly its
    non-triangular edges, C seeing only B, and A plus A x B missing fewer
    than a - 1 edges; None otherwise (including when no edge is
    non-triangular)."""
    f = non_triangular_subgraph(g)
    touched = [v for v in range(g.n) if f.adj[v]]
    if not touched:
        return None
    # two-colour the non-triangular edges
    side = {touched[0]: 0}
    stack = [touched[0]]
    while stack:
        v = stack.pop()
        for w in f.neighbors(v):
            if w not in side:
                side[w] = 1 - side[v]
                stack.append(w)
            elif side[w] == side[v]:
                return None
    if len(side) != len(touched):
        return None
    parts = [[v for v in touched if side[v] == s] for s in (0, 1)]
    for bside, cside in ((parts[0], parts[1]), (parts[1], parts[0])):
        p = _check_partition(g, bside, cside)
        if p is not None:
            return p
    return None


def _check_partition(g: Graph, bside: list[int], cside: list[int]) -> ConstructionParams | None:
    bmask = sum(1 << v for v in bside)
    cmask = sum(1 << v for v in cside)
    for v in bside:
        if g.adj[v] & bmask or g.adj[v] & cmask != cmask:
            return None
    for v in cside:
        if g.adj[v] != bmask:
            return None
    amask = ((1 << g.n) - 1) & ~bmask & ~cmask
    a, b, c = amask.bit_count(), len(bside), len(cside)
    if a < 2:
        return None
    inside = sum((g.adj[v] & amask).bit_count() for v in range(g.n) if amask >> v & 1) // 2
    across = sum((g.adj[v] & bmask).bit_count() for v in range(g.n) if amask >> v & 1)
    if inside + across <= comb(a - 1, 2) + a * b:
        return None
    return ConstructionParams(a, b, c)


# -- verification drivers ----------------------------------------------------

def dense_range(n: int) -> list[int]:
    lo = n * n // 4 + 1
    if n > 8:
        lo = max(lo, comb(n, 2) - (3 * n - 13))
    return list(range(lo, comb(n, 2) + 1))


OPEN_PAIRS = {(10, 27)}


@dataclass
class ConjectureRow:
    e: int
    status: str              # pass | degenerate-pass | violation | open
    tr: int | None = None
    g: int | None = None
    minimizers: int = 0
    violations: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"e": self.e, "status": self.status, "tr": self.tr, "g": self.g,
                "minimizers": self.minimizers, "violations": self.violations}


@dataclass
class ConjectureReport:
    n: int
    rows: list[ConjectureRow]

    @property
    def ok(self) -> bool:
        return all(r.status != "violation" for r in self.rows)

    def to_json(self) -> dict:
        return {"n": self.n, "ok": self.ok, "rows": [r.to_json() for r in self.rows]}


def check_conjecture1_dense(n: int, workers: int | None = None,
                            max_seconds: float | None = None) -> ConjectureReport:
    """Every minimizer on the checked range must realize g and belong to
    the three-part family."""
    if n > MAX_SEARCH_N:
        raise CapacityError(f"native search stops at n={MAX_SEARCH_N}")
    es = dense_range(n)
    results = brute_tr_range(n, es, cap=None, workers=workers, max_seconds=max_seconds) if es else {}
    rows = [ConjectureRow(e, "open") for (m, e) in sorted(OPEN_PAIRS) if m == n and e not in es]
    for e in es:
        res = results[e]
        g = g_of(n, e)[0]
        row = ConjectureRow(e, "pass", res.tr_min, g, res.n_minimizers)
        if res.tr_min != g:
            row.status = "violation"
            row.violations.append(f"Tr={res.tr_min} != g={g}")
        elif res.tr_min == e:
            row.status = "degenerate-pass"
        else:
            for s, v in zip(res.witnesses, res.family_verdicts):
                if v is None:
                    row.status = "violation"
                    row.violations.append(s)
        rows.append(row)
    rows.sort(key=lambda r: r.e)
    return ConjectureReport(n, rows)


def sweep_bounds(n: int, exact: bool = True, workers: int | None = None,
                 max_seconds: float | None = None):
    """BoundsRecord for every e in (n^2/4, C(n,2)]."""
    from triedge.extremal import BoundsRecord, t_of

    es = [e for e in range(comb(n, 2) + 1) if 4 * e > n * n]
    exact_vals = {}
    if exact:
        res = brute_tr_range(n, es, cap=1, workers=workers, max_seconds=max_seconds)
        exact_vals = {e: r.tr_min for e, r in res.items()}
    rows = []
    for e in es:
        g, gp = g_of(n, e)
        t, tp = t_of(n, e)
        rows.append(BoundsRecord(n, e, t, g, gp, exact_vals.get(e), tp))
    return rows
