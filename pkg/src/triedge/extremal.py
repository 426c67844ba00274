"""Construction bound g(n, e), its real relaxation t(n, e), and the
three-part witness graphs A | B | C that realize g.

In a witness, B and C are independent, B x C is complete bipartite, C sees
only B, and A together with A x B is complete up to a small deficiency.
The B x C edges are exactly the edges not lying in any triangle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.optimize import minimize_scalar

from triedge.graph import Graph, triangular_edges


class InfeasibleInstance(ValueError):
    pass


class InfeasibleConstruction(ValueError):
    pass


class ConstructionInvariantError(AssertionError):
    pass


class SandwichViolation(AssertionError):
    """A computed value breaks t <= Tr <= g or g <= t + 1.5n."""


@dataclass(frozen=True)
class ConstructionParams:
    a: float
    b: float
    c: float

    @property
    def n(self):
        return self.a + self.b + self.c

    def int_capacity(self) -> int:
        """Edges available in the integer family: C(a,2) + ab + bc."""
        a, b, c = int(self.a), int(self.b), int(self.c)
        return comb(a, 2) + a * b + b * c

    def real_capacity(self) -> float:
        return self.a ** 2 / 2 + self.a * self.b + self.b * self.c

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c)


@dataclass
class BoundsRecord:
    n: int
    e: int
    t_value: float
    g_value: int
    g_params: ConstructionParams
    tr_exact: int | None = None
    t_params: ConstructionParams | None = None

    def check(self, slack: float = 1e-9) -> list[str]:
        """Violated sandwich inequalities, empty when all hold."""
        bad = []
        if self.t_value > self.g_value + slack:
            bad.append(f"t={self.t_value} > g={self.g_value}")
        if self.g_value > self.t_value + 1.5 * self.n + slack:
            bad.append(f"g={self.g_value} > t + 1.5n = {self.t_value + 1.5 * self.n}")
        if self.tr_exact is not None:
            if self.tr_exact > self.g_value:
                bad.append(f"Tr={self.tr_exact} > g={self.g_value}")
            if self.t_value > self.tr_exact + slack:
                bad.append(f"t={self.t_value} > Tr={self.tr_exact}")
        return bad

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "e": self.e,
            "t": self.t_value,
            "g": self.g_value,
            "a": int(self.g_params.a),
            "b": int(self.g_params.b),
            "c": int(self.g_params.c),
        }
        if self.tr_exact is not None:
            out["tr_exact"] = self.tr_exact
        return out


CSV_FIELDS = ["n", "e", "t", "g", "a", "b", "c", "tr_exact"]


def _check_instance(n: int, e: int) -> None:
    if n < 3:
        raise InfeasibleInstance(f"need n >= 3, got {n}")
    if e < 0 or e > comb(n, 2):
        raise InfeasibleInstance(f"e={e} outside [0, C({n},2)={comb(n, 2)}]")


def g_triples(n: int, e: int):
    """All integer (a, b, c) with a+b+c = n and C(a,2)+ab+bc >= e."""
    for a in range(n + 1):
        for b in range(n - a + 1):
            c = n - a - b
            if comb(a, 2) + a * b + b * c >= e:
                yield a, b, c


def g_of(n: int, e: int) -> tuple[int, ConstructionParams]:
    """Minimum of e - bc over feasible integer triples.

    Ties go to the largest c, then the largest b.
    """
    _check_instance(n, e)
    best = None
    for a, b, c in g_triples(n, e):
        key = (e - b * c, -c, -b)
        if best is None or key < best[0]:
            best = (key, (a, b, c))
    return best[0][0], ConstructionParams(*best[1])


def _inner_b(n: float, a: float, e: float) -> float | None:
    """Best b for fixed a: projection of s/2 onto the feasible b-interval."""
    s = n - a
    disc = n * n + 2 * a * a - 4 * e
    if disc < 0:
        return None
    lo = (n - math.sqrt(disc)) / 2
    if lo > s:
        # tolerate rounding at the a = n end
        if lo - s > 1e-12 * max(1.0, n):
            return None
        lo = s
    return min(max(s / 2, lo, 0.0), s)


def _t_objective(n: float, e: float, a: float) -> float:
    b = _inner_b(n, a, e)
    if b is None:
        return math.inf
    return e - b * (n - a - b)


def t_of(n: float, e: float, scan: int = 10_000) -> tuple[float, ConstructionParams]:
    """Real relaxation: min e - bc over a,b,c >= 0, a+b+c = n, a^2/2+ab+bc >= e."""
    if e < 0 or e > n * n / 2:
        raise InfeasibleInstance(f"e={e} outside [0, n^2/2={n * n / 2}]")
    grid = np.linspace(0.0, n, scan + 1)
    vals = np.array([_t_objective(n, e, a) for a in grid])
    order = np.argsort(vals, kind="stable")
    best_a, best_v = float(grid[order[0]]), float(vals[order[0]])
    seen = set()
    # refine the few best grid cells; separate basins show up as separate cells
    for k in order[:8]:
        k = int(k)
        if not math.isfinite(vals[k]) or k in seen:
            continue
        seen.update({k - 1, k, k + 1})
        lo, hi = float(grid[max(k - 1, 0)]), float(grid[min(k + 1, scan)])

        def obj(a):
            v = _t_objective(n, e, a)
            return v if math.isfinite(v) else e + 1.0

        res = minimize_scalar(obj, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-13 * max(1.0, n)})
        if res.fun < best_v:
            best_a, best_v = float(res.x), float(res.fun)
    b = _inner_b(n, best_a, e)
    params = ConstructionParams(best_a, b, max(n - best_a - b, 0.0))
    return best_v, params


def round_params(p: ConstructionParams, n: int, e: int) -> ConstructionParams:
    """Integer triple (ceil(a+1), ceil(b), rest), with c clamped at zero."""
    eps = 1e-9
    a = min(math.ceil(p.a + 1 - eps), n)
    b = min(math.ceil(p.b - eps), n - a)
    return ConstructionParams(a, b, n - a - b)


def build_construction(p: ConstructionParams, e: int) -> Graph:
    """Witness graph with parts A = [0, a), B = [a, a+b), C = [a+b, n).

    Missing edges are taken out of A in lexicographic order; the result is
    checked to have exactly ``e - bc`` triangular edges.
    """
    a, b, c = int(p.a), int(p.b), int(p.c)
    if (a, b, c) != p.as_tuple() or min(a, b, c) < 0:
        raise InfeasibleConstruction(f"parts must be nonnegative integers, got {p}")
    n = a + b + c
    core = e - b * c
    if a < 2 or not comb(a - 1, 2) + a * b < core <= comb(a, 2) + a * b:
        raise InfeasibleConstruction(
            f"(a,b,c)={p.as_tuple()} cannot hold e={e}: need a >= 2 and "
            f"C(a-1,2)+ab < e-bc <= C(a,2)+ab")
    deficiency = comb(a, 2) + a * b - core
    inside_a = [(i, j) for i in range(a) for j in range(i + 1, a)]
    edges = inside_a[deficiency:]
    edges += [(i, a + j) for i in range(a) for j in range(b)]
    edges += [(a + j, a + b + k) for j in range(b) for k in range(c)]
    g = Graph.from_edges(n, edges)
    if g.edge_count != e:
        raise ConstructionInvariantError(f"built {g.edge_count} edges, wanted {e}")
    tri = set(triangular_edges(g))
    bc_edges = {(a + j, a + b + k) for j in range(b) for k in range(c)}
    if tri & bc_edges or len(tri) != core:
        raise ConstructionInvariantError(
            f"{p.as_tuple()}, e={e}: tr_count={len(tri)}, expected {core}")
    return g


def witness_params(n: int, e: int) -> ConstructionParams:
    """A buildable triple attaining g(n, e), preferring the g_of tie order."""
    g, params = g_of(n, e)
    cands = sorted(
        (t for t in g_triples(n, e) if e - t[1] * t[2] == g),
        key=lambda t: (-t[2], -t[1]))
    for a, b, c in cands:
        core = e - b * c
        if a >= 2 and comb(a - 1, 2) + a * b < core <= comb(a, 2) + a * b:
            return ConstructionParams(a, b, c)
    raise InfeasibleConstruction(f"no buildable triple attains g({n},{e})={g}")


def construction_for(n: int, e: int) -> Graph:
    return build_construction(witness_params(n, e), e)


def bounds(n: int, e: int, with_exact: bool = False, exact_max_n: int = 10,
           **search_kw) -> BoundsRecord:
    g, gp = g_of(n, e)
    t, tp = t_of(n, e)
    rec = BoundsRecord(n, e, t, g, gp, t_params=tp)
    if with_exact and n <= exact_max_n:
        from triedge.search import brute_tr

        rec.tr_exact = brute_tr(n, e, **search_kw).tr_min
    bad = rec.check()
    if bad:
        raise SandwichViolation(f"bounds({n},{e}): " + "; ".join(bad))
    return rec

