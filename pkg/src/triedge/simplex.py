"""Quadratic forms on the simplex and support-shrinking symmetrization.

``f(G, x)`` is the sum of ``x_i x_j`` over the edges of ``G``.  Every move
here keeps ``x`` in the simplex, never decreases the tracked forms, and
drops at least one vertex from the support.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from triedge.config import TOL, Tolerances
from triedge.extremal import ConstructionParams, t_of
from triedge.graph import (
    Graph,
    clique_number,
    find_independent_set,
    independence_number,
    non_triangular_subgraph,
    tr_count,
)


class MoveInapplicable(Exception):
    """The requested move's preconditions fail at the current point."""


class ReductionStalled(RuntimeError):
    def __init__(self, message: str, trace: "ReductionTrace", y: "WeightVector"):
        super().__init__(message)
        self.trace = trace
        self.y = y


class NotApplicable(ValueError):
    pass


class CertificateError(AssertionError):
    pass


@dataclass(frozen=True)
class WeightVector:
    x: np.ndarray

    @classmethod
    def from_array(cls, values, tol: Tolerances = TOL) -> "WeightVector":
        x = np.array(values, dtype=float)
        if x.ndim != 1 or len(x) == 0:
            raise ValueError("weights must be a nonempty vector")
        if np.any(x < -tol.supp):
            raise ValueError("weights must be nonnegative")
        x[x <= tol.supp] = 0.0
        if abs(x.sum() - 1.0) > 1e-12 * max(1, len(x)):
            raise ValueError(f"weights sum to {x.sum()!r}, not 1")
        x.setflags(write=False)
        return cls(x)

    @classmethod
    def uniform(cls, n: int) -> "WeightVector":
        return cls.from_array(np.full(n, 1.0 / n))

    @classmethod
    def on(cls, n: int, weights: dict[int, float]) -> "WeightVector":
        x = np.zeros(n)
        for v, w in weights.items():
            x[v] = w
        return cls.from_array(x)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.x))

    def __getitem__(self, i):
        return self.x[i]


def _values(x):
    return x.x if isinstance(x, WeightVector) else x


def quad_form(g: Graph, x) -> float:
    """Sum of x_i x_j over edges, in lexicographic edge order.

    Works on floats or on ``Fraction`` entries for exact evaluation.
    """
    v = _values(x)
    if len(v) != g.n:
        raise ValueError(f"dimension mismatch: {len(v)} weights for {g.n} vertices")
    total = Fraction(0) if isinstance(v[0], Fraction) else 0.0
    for i, j in g.edges():
        total += v[i] * v[j]
    return total


def partial(g: Graph, x, k: int) -> float:
    v = _values(x)
    total = Fraction(0) if isinstance(v[0], Fraction) else 0.0
    for w in g.neighbors(k):
        total += v[w]
    return total


# -- linear geometry ---------------------------------------------------------

def _null_vector(m: np.ndarray) -> np.ndarray:
    z = np.linalg.svd(m)[2][-1]
    lead = z[np.flatnonzero(np.abs(z) > 1e-12)[0]]
    return z if lead > 0 else -z


def _solve_with_rhs(vectors, rhs, tol: Tolerances) -> np.ndarray:
    a = np.atleast_2d(np.asarray(vectors, dtype=float))
    d = a.shape[0]
    if a.shape[1] != d + 1:
        raise ValueError(f"need d vectors in R^(d+1), got shape {a.shape}")
    m = np.vstack([a, np.ones(d + 1)])
    norms = np.linalg.norm(m, axis=1)
    if np.any(norms == 0) or abs(np.linalg.det(m / norms[:, None])) < tol.det:
        return _null_vector(m)
    return np.linalg.solve(m, rhs)


def solve_balanced_halfspace(vectors: Sequence[Sequence[float]], tol: Tolerances = TOL) -> np.ndarray:
    """Nonzero z with sum(z) = 0 and a_i . z >= 0 for every given a_i."""
    d = len(vectors)
    if d < 1:
        raise ValueError("need at least one vector")
    rhs = np.r_[np.ones(d), 0.0]
    return _solve_with_rhs(vectors, rhs, tol)


def solve_equality_variant(vectors: Sequence[Sequence[float]], keep: int,
                           tol: Tolerances = TOL) -> np.ndarray:
    """Like :func:`solve_balanced_halfspace` but with a_i . z = 0 for all
    i != ``keep`` (0-based) and a_keep . z >= 0."""
    d = len(vectors)
    if not 0 <= keep < d:
        raise ValueError(f"keep index {keep} outside [0, {d})")
    rhs = np.zeros(d + 1)
    rhs[keep] = 1.0
    return _solve_with_rhs(vectors, rhs, tol)


# -- traces ------------------------------------------------------------------

@dataclass
class Move:
    kind: str
    vertices: tuple[int, ...]
    t: float
    before: tuple[float, ...]
    after: tuple[float, ...]

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "vertices": list(self.vertices), "t": self.t,
                           "f_before": list(self.before), "f_after": list(self.after)})


@dataclass
class ReductionTrace:
    moves: list[Move] = field(default_factory=list)

    def record(self, kind, vertices, t, before, after) -> None:
        self.moves.append(Move(kind, tuple(int(v) for v in vertices), float(t),
                               tuple(map(float, before)), tuple(map(float, after))))

    def to_jsonl(self) -> str:
        return "\n".join(m.to_json() for m in self.moves)

    def monotone(self, tol: float = TOL.eq) -> bool:
        return all(a >= b - tol for m in self.moves for b, a in zip(m.before, m.after))

    def __len__(self):
        return len(self.moves)


def _fvals(graphs, y) -> tuple[float, ...]:
    return tuple(quad_form(h, y) for h in graphs)


def _step(y: np.ndarray, verts, z: np.ndarray, tol: Tolerances) -> tuple[np.ndarray, float]:
    """Largest step along z (embedded on ``verts``) keeping y >= 0."""
    if not np.any(z < 0):
        z = -z
    neg = [(y[v] / -zj, idx) for idx, (v, zj) in enumerate(zip(verts, z)) if zj < 0]
    t, hit = min(neg)
    out = y.copy()
    for v, zj in zip(verts, z):
        out[v] += t * zj
    out[verts[hit]] = 0.0
    out[out <= tol.supp] = 0.0
    return out, t


# -- multi-graph symmetrization ----------------------------------------------

def symmetrize_multi(g: Graph, subgraphs: Sequence[Graph], x, keep_equal: int | None = None,
                     tol: Tolerances = TOL, trace: ReductionTrace | None = None):
    """Shrink the support of ``x`` until ``G[support]`` has independence
    number at most ``d = len(subgraphs)``, never decreasing any ``f(G_i, .)``.

    With ``keep_equal = l`` (0-based), every form except ``f(G_l, .)`` is
    held fixed.  Returns ``(y, trace)``.
    """
    d = len(subgraphs)
    if any(not h.is_subgraph_of(g) for h in subgraphs):
        raise ValueError("every tracked graph must be a subgraph of g")
    trace = ReductionTrace() if trace is None else trace
    y = np.array(_values(x), dtype=float)
    for _ in range(g.n + 1):
        supp = np.flatnonzero(y)
        indep = find_independent_set(g, d + 1, supp)
        if indep is None:
            break
        verts = list(indep)
        a = [[partial(h, y, u) for u in verts] for h in subgraphs]
        if keep_equal is None:
            z = solve_balanced_halfspace(a, tol)
        else:
            z = solve_equality_variant(a, keep_equal, tol)
        before = _fvals(subgraphs, y)
        y, t = _step(y, verts, z, tol)
        trace.record("independent-set", verts, t, before, _fvals(subgraphs, y))
    else:
        raise RuntimeError("support failed to shrink")
    return WeightVector.from_array(y, tol), trace


# -- moves used by the triangular-edge reduction -----------------------------

def merge_move(g1: Graph, g2: Graph, y, k: int, h: int, tol: Tolerances = TOL) -> WeightVector:
    """Move all of vertex h's weight onto a nonadjacent vertex k whose
    partial derivatives dominate h's in both forms."""
    v = np.array(_values(y), dtype=float)
    if k == h or v[k] <= 0 or v[h] <= 0:
        raise MoveInapplicable(f"need distinct support vertices, got {k}, {h}")
    if g1.has_edge(k, h):
        raise MoveInapplicable(f"{k} and {h} are adjacent")
    for gi in (g1, g2):
        if partial(gi, v, k) < partial(gi, v, h) - tol.move:
            raise MoveInapplicable(f"partial of {k} below partial of {h}")
    v[k] += v[h]
    v[h] = 0.0
    return WeightVector.from_array(v, tol)


def _direction_coeffs(g: Graph, y: np.ndarray, plus, minus) -> tuple[float, float]:
    """f(g, y + t d) - f(g, y) = lin * t + quad * t^2 for d = e_plus - e_minus."""
    sign = {v: 1.0 for v in plus} | {v: -1.0 for v in minus}
    lin = sum(s * partial(g, y, v) for v, s in sign.items())
    quad = sum(sign[u] * sign[w] for u, w in combinations(sign, 2) if g.has_edge(u, w))
    return lin, quad


def endpoint_line_search(g1: Graph, g2: Graph, y, quad: tuple[int, int, int, int],
                         tol: Tolerances = TOL) -> tuple[WeightVector, float]:
    """Slide along e_i + e_j - e_k - e_l, which must leave f(g1) unchanged,
    to whichever end of the feasible interval is better for f(g2).

    Returns the new point and the step taken.
    """
    i, j, k, l = quad
    v = np.array(_values(y), dtype=float)
    if len({i, j, k, l}) != 4 or min(v[i], v[j], v[k], v[l]) <= 0:
        raise MoveInapplicable("need four distinct support vertices")
    lin1, quad1 = _direction_coeffs(g1, v, (i, j), (k, l))
    if abs(lin1) > tol.eq or abs(quad1) > tol.eq:
        raise MoveInapplicable("direction changes f(G1)")
    lo, hi = max(-v[i], -v[j]), min(v[k], v[l])
    if hi - lo <= tol.supp:
        raise MoveInapplicable("degenerate interval")
    lin2, quad2 = _direction_coeffs(g2, v, (i, j), (k, l))
    gain_lo = lin2 * lo + quad2 * lo * lo
    gain_hi = lin2 * hi + quad2 * hi * hi
    # near-ties go to the left endpoint
    t, gain = (lo, gain_lo) if gain_lo >= gain_hi - tol.eq else (hi, gain_hi)
    if gain < -tol.eq:
        raise MoveInapplicable("no endpoint improves f(G2)")
    for p in (i, j):
        v[p] += t
    for m in (k, l):
        v[m] -= t
    hit = (i, j) if t < 0 else (k, l)
    for p in hit:
        if v[p] <= tol.supp * 10:
            v[p] = 0.0
    v[v <= tol.supp] = 0.0
    return WeightVector.from_array(v, tol), t


def reduced_structure(g1: Graph, g2: Graph, support) -> tuple[int, int] | None:
    """The unique g2-edge uv inside ``support`` when g1[support - {u,v}] is
    complete, else None."""
    supp = sorted(support)
    mask = sum(1 << v for v in supp)
    edges = [(u, w) for u in supp for w in supp if u < w and g2.has_edge(u, w)]
    if len(edges) != 1:
        return None
    u, w = edges[0]
    rest = mask & ~(1 << u) & ~(1 << w)
    for p in supp:
        if rest >> p & 1 and (g1.adj[p] | 1 << p) & rest != rest:
            return None
    return u, w


def _try_merge(g1, g2, y, tol):
    supp = y.support
    for k in supp:
        for h in supp:
            if k != h and not g1.has_edge(k, h):
                try:
                    return merge_move(g1, g2, y, k, h, tol), (k, h)
                except MoveInapplicable:
                    continue
    return None


def _try_line_search(g1, g2, y, tol):
    for four in combinations(y.support, 4):
        p, q, r, s = four
        for quad in ((p, q, r, s), (p, r, q, s), (p, s, q, r)):
            try:
                y2, t = endpoint_line_search(g1, g2, y, quad, tol)
            except MoveInapplicable:
                continue
            return y2, quad, t
    return None


def reduce_triangular(g1: Graph, g2: Graph, x, tol: Tolerances = TOL):
    """Find y with f(g1, y) >= f(g1, x), f(g2, y) >= f(g2, x) whose support
    K holds exactly one g2-edge uv while g1[K - {u, v}] is complete.

    ``g2`` must consist of edges lying in no triangle of ``g1``.  Returns
    ``(y, (u, v), trace)``; raises :class:`ReductionStalled` if no move
    applies before the structure is reached.
    """
    if not g2.is_subgraph_of(g1):
        raise ValueError("g2 must be a subgraph of g1")
    g2_edges = g2.edges()
    if not g2_edges:
        raise ValueError("g2 has no edges")
    if any(g1.adj[u] & g1.adj[v] for u, v in g2_edges):
        raise ValueError("g2 contains an edge lying in a triangle of g1")
    pair = (g1, g2)
    y, trace = symmetrize_multi(g1, pair, x, tol=tol)

    if quad_form(g1, y) <= 0.25 + tol.supp:
        inside = [(u, v) for u, v in g2_edges if y[u] > 0 and y[v] > 0]
        u, v = (inside or g2_edges)[0]
        before = _fvals(pair, y)
        y = WeightVector.on(g1.n, {u: 0.5, v: 0.5})
        trace.record("quarter-jump", (u, v), 0.0, before, _fvals(pair, y))

    while True:
        uv = reduced_structure(g1, g2, y.support)
        if uv is not None:
            return y, uv, trace
        before = _fvals(pair, y)
        found = _try_merge(g1, g2, y, tol)
        if found is not None:
            y, (k, h) = found
            trace.record("merge", (k, h), 1.0, before, _fvals(pair, y))
            continue
        found = _try_line_search(g1, g2, y, tol)
        if found is not None:
            y, quad, t = found
            trace.record("line-search", quad, t, before, _fvals(pair, y))
            continue
        if independence_number(g1, y.support) > 2:
            y, _ = symmetrize_multi(g1, pair, y, tol=tol, trace=trace)
            continue
        raise ReductionStalled(
            f"no move applies on support {y.support} before reaching the single-edge structure",
            trace, y)


def theorem7_bound(g: Graph, tol: Tolerances = TOL) -> tuple[float, ConstructionParams]:
    """Lower bound e - bc on the triangular edges of ``g`` read off the
    reduced weight vector, with its feasibility chain checked."""
    n, e = g.n, g.edge_count
    g2 = non_triangular_subgraph(g)
    if g2.edge_count == 0:
        raise NotApplicable("every edge lies in a triangle")
    if 4 * e <= n * n:
        raise NotApplicable(f"e={e} is not above n^2/4")
    y, (u, v), _ = reduce_triangular(g, g2, WeightVector.uniform(n), tol)
    y1, y2 = max(y[u], y[v]), min(y[u], y[v])
    b, c = y1 * n, y2 * n
    a = n - b - c
    f1 = quad_form(g, y)
    lhs = e / n ** 2
    if lhs > f1 + tol.assertion:
        raise CertificateError(f"e/n^2={lhs} exceeds f(G1,y)={f1}")
    cap = (b * c + a * b + a * a / 2) / n ** 2
    if f1 > cap + tol.assertion:
        raise CertificateError(f"f(G1,y)={f1} exceeds (bc+ab+a^2/2)/n^2={cap}")
    bound = e - b * c
    t, _ = t_of(n, e)
    if bound < t - tol.loose:
        raise CertificateError(f"bound {bound} below t(n,e)={t}")
    if tr_count(g) < bound - tol.loose:
        raise CertificateError(f"bound {bound} exceeds tr_count={tr_count(g)}")
    return bound, ConstructionParams(a, b, c)


# -- Motzkin-Straus ----------------------------------------------------------

def clique_polish(g: Graph, y: WeightVector) -> WeightVector:
    """Uniform weights on a clique support, grown to a maximal clique.

    On a clique the form is (1 - |y|^2)/2, maximal at uniform weights, and
    adding a vertex joined to the whole clique raises (k-1)/2k.
    """
    supp = list(y.support)
    mask = sum(1 << v for v in supp)
    if any((g.adj[v] | 1 << v) & mask != mask for v in supp):
        raise ValueError("support is not a clique")
    for v in range(g.n):
        if not mask >> v & 1 and g.adj[v] & mask == mask:
            supp.append(v)
            mask |= 1 << v
    return WeightVector.on(g.n, {v: 1.0 / len(supp) for v in supp})


def motzkin_straus_search(g: Graph, restarts: int = 20, rng: np.random.Generator | None = None):
    """Best f over random simplex starts pushed through single-graph
    symmetrization.  Returns ``(value, y)``."""
    rng = np.random.default_rng(0) if rng is None else rng
    best = (-1.0, None)
    for _ in range(restarts):
        x = rng.dirichlet(np.ones(g.n))
        y, _ = symmetrize_multi(g, [g], x / x.sum())
        y = clique_polish(g, y)
        val = quad_form(g, y)
        if val > best[0]:
            best = (val, y)
    return best


def motzkin_straus_value(g: Graph) -> float:
    w = clique_number(g)
    return (w - 1) / (2 * w)


# -- discrete Zykov symmetrization -------------------------------------------

def _zykov_pair(g: Graph) -> tuple[int, int] | None:
    for i in range(g.n):
        for j in range(g.n):
            if i == j or g.has_edge(i, j):
                continue
            di, dj = g.degree(i), g.degree(j)
            if di > dj or (di == dj and i < j and g.adj[i] != g.adj[j]):
                return i, j
    return None


def zykov_symmetrize(g: Graph, max_steps: int | None = None) -> Graph:
    """Repeatedly rewire a nonadjacent vertex j onto the neighbourhood of a
    vertex i of larger degree (equal degree: smaller index donates) until
    the graph is complete multipartite."""
    max_steps = 4 * g.n ** 3 if max_steps is None else max_steps
    rows = list(g.adj)
    for _ in range(max_steps):
        pair = _zykov_pair(Graph(g.n, tuple(rows)))
        if pair is None:
            return Graph(g.n, tuple(rows))
        i, j = pair
        for w in range(g.n):
            rows[w] &= ~(1 << j)
        rows[j] = rows[i]
        for w in range(g.n):
            if rows[i] >> w & 1:
                rows[w] |= 1 << j
    raise RuntimeError(f"Zykov symmetrization did not settle within {max_steps} steps")


def is_complete_multipartite(g: Graph) -> bool:
    """Nonadjacency is an equivalence relation (with reflexivity)."""
    full = (1 << g.n) - 1
    non = [full & ~row for row in g.adj]  # includes the vertex itself
    return all(non[i] == non[j] for i in range(g.n) for j in range(g.n) if non[i] >> j & 1)
