"""Dense small graphs stored as adjacency bit-rows.

Vertices are 0-indexed; row ``adj[i]`` has bit ``j`` set iff ``ij`` is an
edge.  Capacity is one machine word per row (n <= 64).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_N = 64

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Malformed graph6 input; ``offset`` is the offending byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n must be in [1, {MAX_N}], got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full or row >> i & 1:
                raise ValueError(f"row {i} has out-of-range bits or a loop")
            for j in _bits(row):
                if not self.adj[j] >> i & 1:
                    raise ValueError(f"asymmetric adjacency at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << i) for i in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete_bipartite(cls, p: int, q: int) -> "Graph":
        return cls.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def edges(self) -> list[Edge]:
        """All edges ``(i, j)`` with ``i < j`` in lexicographic order."""
        return [(i, j) for i in range(self.n) for j in _bits(self.adj[i] >> (i + 1) << (i + 1))]

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(self.adj)))

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is vertex ``order[i]`` of this graph."""
        pos = {v: i for i, v in enumerate(order)}
        rows = []
        for v in order:
            row = 0
            for w in _bits(self.adj[v]):
                row |= 1 << pos[w]
            rows.append(row)
        return Graph(self.n, tuple(rows))

    def without_edges(self, edges: Iterable[Edge]) -> "Graph":
        rows = list(self.adj)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.adj, other.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count}, g6={to_graph6(self)!r})"


def triangular_edges(g: Graph) -> list[Edge]:
    """Edges with a common neighbour, lexicographically ordered."""
    adj = g.adj
    return [(u, v) for u, v in g.edges() if adj[u] & adj[v]]


def tr_count(g: Graph) -> int:
    adj = g.adj
    count = 0
    for u in range(g.n):
        row = adj[u]
        for v in _bits(row >> (u + 1) << (u + 1)):
            if row & adj[v]:
                count += 1
    return count


def non_triangular_subgraph(g: Graph) -> Graph:
    return g.without_edges(triangular_edges(g))


def _max_clique_size(adj: Sequence[int], cand: int) -> int:
    best = 0

    def expand(size: int, p: int) -> None:
        nonlocal best
        if not p:
            if size > best:
                best = size
            return
        while p:
            if size + p.bit_count() <= best:
                return
            v = p.bit_length() - 1
            expand(size + 1, p & adj[v])
            p &= ~(1 << v)

    expand(0, cand)
    return best


def clique_number(g: Graph) -> int:
    return _max_clique_size(g.adj, (1 << g.n) - 1)


def independence_number(g: Graph, subset: Iterable[int] | None = None) -> int:
    """Independence number of the induced subgraph on ``subset`` (all of V by default)."""
    full = (1 << g.n) - 1
    cand = full if subset is None else sum(1 << v for v in set(subset))
    co = [full & ~row & ~(1 << i) for i, row in enumerate(g.adj)]
    return _max_clique_size(co, cand)


def induced(g: Graph, subset: Iterable[int]) -> Graph:
    keep = sorted(set(subset))
    if not keep:
        raise ValueError("induced subgraph needs at least one vertex")
    if keep[-1] >= g.n or keep[0] < 0:
        raise ValueError(f"subset {keep} not inside the vertex set")
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for w in _bits(g.adj[v]):
            if w in pos:
                row |= 1 << pos[w]
        rows.append(row)
    return Graph(len(keep), tuple(rows))


def find_independent_set(g: Graph, size: int, among: Iterable[int]) -> tuple[int, ...] | None:
    """Lexicographically first independent set of ``size`` vertices inside ``among``."""
    verts = sorted(among)
    adj = g.adj
    for combo in combinations(verts, size):
        mask = 0
        for v in combo:
            mask |= 1 << v
        if all(adj[v] & mask == 0 for v in combo):
            return combo
    return None


# -- graph6 (dense variant) --------------------------------------------------

_HEADER = ">>graph6<<"


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    else:
        out = [chr(126)] + [chr(((n >> s) & 63) + 63) for s in (12, 6, 0)]
    bits = [1 if g.adj[i] >> j & 1 else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = val << 1 | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.rstrip("\r\n")
    base = 0
    if s.startswith(_HEADER):
        base = len(_HEADER)
    data = s[base:]
    if not data:
        raise GraphFormatError("missing size header", base)
    for k, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"byte {ch!r} outside graph6 range", base + k)
    vals = [ord(ch) - 63 for ch in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    else:
        if len(vals) < 4:
            raise GraphFormatError("truncated long size header", base + len(vals))
        if vals[1] == 63:
            raise GraphFormatError("8-byte size header is beyond supported capacity", base + 1)
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    if n < 1 or n > MAX_N:
        raise GraphFormatError(f"vertex count {n} outside [1, {MAX_N}]", base)
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = vals[pos:]
    if len(body) < nbytes:
        raise GraphFormatError(f"expected {nbytes} data bytes, found {len(body)}", base + len(vals))
    if len(body) > nbytes:
        raise GraphFormatError("trailing bytes after graph data", base + pos + nbytes)
    pad = nbytes * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise GraphFormatError("nonzero padding bits", base + pos + nbytes - 1)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))
