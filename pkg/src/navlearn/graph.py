"""Graph core: representation, synthetic generators, BFS, closeness ranking.

Graphs are simple and undirected, with vertices labeled 0..n-1 and sorted
neighbor lists. All iteration orders downstream derive from that sorted
order, which is what makes whole runs reproducible given seeds.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, TextIO

from .errors import DisconnectedGraphError, NoPathError

# Distance sentinel for unreachable vertices (finite distances are >= 0).
UNREACHED = -1

EDGE_LIST_MAGIC = "# nav-graph v1"


class Graph:
    """Immutable undirected simple graph with sorted adjacency lists.

    Construction validates simplicity (no self-loops, no duplicate edges)
    and vertex ids in 0..n-1. Instances are safe to share across threads.
    """

    __slots__ = ("n", "adj", "_adj_by_degree")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise ValueError(f"vertex count must be >= 1, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj: list[list[int]] = [sorted(s) for s in adj]
        self._adj_by_degree: list[list[int]] | None = None

    @property
    def m(self) -> int:
        """Number of undirected edges."""
        return sum(len(nbrs) for nbrs in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, in sorted order."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def adjacent(self, u: int, v: int) -> bool:
        nbrs = self.adj[u]
        lo, hi = 0, len(nbrs)
        while lo < hi:
            mid = (lo + hi) // 2
            if nbrs[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(nbrs) and nbrs[lo] == v

    def neighbors_by_degree(self, v: int) -> list[int]:
        """Neighbors of v sorted by descending degree, ties by ascending id.

        Cached on first use; the cache is shared by all degree-based
        navigation calls on this graph.
        """
        if self._adj_by_degree is None:
            deg = [len(nbrs) for nbrs in self.adj]
            self._adj_by_degree = [
                sorted(nbrs, key=lambda x: (-deg[x], x)) for nbrs in self.adj
            ]
        return self._adj_by_degree[v]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def is_valid_path(g: Graph, vertices: Sequence[int]) -> bool:
    """True iff *vertices* is a simple path in *g* (single vertex allowed)."""
    if len(vertices) == 0:
        return False
    if len(set(vertices)) != len(vertices):
        return False
    if not all(0 <= v < g.n for v in vertices):
        return False
    return all(g.adjacent(a, b) for a, b in zip(vertices, vertices[1:]))


def is_valid_walk(g: Graph, vertices: Sequence[int]) -> bool:
    """True iff consecutive vertices are adjacent (repeats allowed)."""
    if len(vertices) == 0:
        return False
    if not all(0 <= v < g.n for v in vertices):
        return False
    return all(g.adjacent(a, b) for a, b in zip(vertices, vertices[1:]))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def gen_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): each of the C(n,2) vertex pairs is an edge with probability p.

    Uses geometric skipping over the pair sequence, so the cost is
    O(n + expected edges) rather than O(n^2). Deterministic for a fixed seed.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    if p == 1.0:
        edges = [(u, v) for v in range(n) for u in range(v)]
    elif p > 0.0:
        log_q = math.log1p(-p)
        v, w = 1, -1
        while v < n:
            w += 1 + int(math.log(1.0 - rng.random()) / log_q)
            while w >= v and v < n:
                w -= v
                v += 1
            if v < n:
                edges.append((w, v))
    return Graph(n, edges)


def gen_barabasi_albert(n: int, m: int, seed: int) -> Graph:
    """Preferential-attachment graph: complete seed on m+1 vertices, then each
    new vertex attaches to m distinct existing vertices chosen with
    probability proportional to current degree.

    Edge count is exactly C(m+1,2) + (n-m-1)*m. Deterministic for a fixed seed.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if n < m + 1:
        raise ValueError(f"n must be >= m+1 = {m + 1}, got {n}")
    rng = random.Random(seed)
    edges = [(u, v) for v in range(m + 1) for u in range(v)]
    # One entry per unit of degree; sampling an index is degree-proportional.
    degree_pool: list[int] = []
    for u, v in edges:
        degree_pool.append(u)
        degree_pool.append(v)
    for new in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(degree_pool[rng.randrange(len(degree_pool))])
        for t in sorted(targets):
            edges.append((t, new))
            degree_pool.append(t)
            degree_pool.append(new)
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Shortest paths and centrality
# ---------------------------------------------------------------------------

def bfs_distances(g: Graph, src: int) -> list[int]:
    """Exact hop distances from *src*; UNREACHED marks other components."""
    if not (0 <= src < g.n):
        raise ValueError(f"source {src} out of range")
    dist = [UNREACHED] * g.n
    dist[src] = 0
    queue = deque([src])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] == UNREACHED:
                dist[v] = du
                queue.append(v)
    return dist


def _reconstruct_path(g: Graph, dist_from_s: list[int], t: int) -> list[int]:
    """Backward reconstruction choosing the smallest-id predecessor each hop."""
    path = [t]
    cur = t
    while dist_from_s[cur] > 0:
        want = dist_from_s[cur] - 1
        # adjacency is sorted, so the first match is the smallest parent
        for x in g.adj[cur]:
            if dist_from_s[x] == want:
                cur = x
                break
        path.append(cur)
    path.reverse()
    return path


def shortest_path(g: Graph, s: int, t: int) -> list[int]:
    """A shortest s-t path; deterministic smallest-parent tie-breaking.

    Raises NoPathError when t is unreachable from s.
    """
    dist = bfs_distances(g, s)
    if dist[t] == UNREACHED:
        raise NoPathError(f"no path from {s} to {t}")
    return _reconstruct_path(g, dist, t)


@dataclass
class CentralityRanking:
    """Closeness values and 1-based ranks (rank 1 = most central).

    Ranks are a permutation of 1..n ordered by descending closeness,
    ties broken by ascending vertex id.
    """

    closeness: list[float]
    rank: list[int]


def closeness_ranking(g: Graph) -> CentralityRanking:
    """Exact closeness 1/sum(d(v,w)) for every vertex, plus ranks.

    Raises DisconnectedGraphError if any distance is infinite.
    """
    closeness = [0.0] * g.n
    if g.n == 1:
        # A lone vertex has an empty distance sum; treat as maximal closeness.
        return CentralityRanking(closeness=[math.inf], rank=[1])
    for v in range(g.n):
        dist = bfs_distances(g, v)
        total = 0
        for d in dist:
            if d == UNREACHED:
                raise DisconnectedGraphError(
                    "closeness ranking requires a connected graph"
                )
            total += d
        closeness[v] = 1.0 / total
    order = sorted(range(g.n), key=lambda v: (-closeness[v], v))
    rank = [0] * g.n
    for position, v in enumerate(order, start=1):
        rank[v] = position
    return CentralityRanking(closeness=closeness, rank=rank)


# ---------------------------------------------------------------------------
# Components
# ---------------------------------------------------------------------------

def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    out: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        comp = [start]
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comp.sort()
        out.append(comp)
    return out


def largest_component(g: Graph) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on a maximum component, relabeled 0..k-1.

    Ties between equal-sized components go to the one containing the
    smallest original id. Returns (subgraph, old->new id map).
    """
    comps = components(g)
    best = max(comps, key=len)  # max() keeps the earliest (smallest-id) tie
    mapping = {old: new for new, old in enumerate(best)}
    edges = [
        (mapping[u], mapping[v])
        for u, v in g.edges()
        if u in mapping and v in mapping
    ]
    return Graph(len(best), edges), mapping


# ---------------------------------------------------------------------------
# Edge-list file format
# ---------------------------------------------------------------------------

def write_edge_list(g: Graph, fh: TextIO) -> None:
    """Write the `# nav-graph v1` text format: one `u v` line per edge, u < v."""
    fh.write(f"{EDGE_LIST_MAGIC} n={g.n}\n")
    for u, v in g.edges():
        fh.write(f"{u} {v}\n")


def read_edge_list(fh: TextIO) -> Graph:
    """Parse the `# nav-graph v1` format; later `#` lines are comments."""
    header = fh.readline()
    if not header.startswith(EDGE_LIST_MAGIC):
        raise ValueError(f"missing '{EDGE_LIST_MAGIC}' header")
    try:
        n = int(header.split("n=", 1)[1])
    except (IndexError, ValueError) as exc:
        raise ValueError("header lacks a parseable n=<count>") from exc
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(fh, start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if not u < v:
            raise ValueError(f"line {lineno}: edges must satisfy u < v")
        edges.append((u, v))
    return Graph(n, edges)
