"""Independent oracles and tiny graph builders shared by the test suite.

Everything here is deliberately written from scratch (Floyd-Warshall,
union-find, brute-force geometry/unimodality, linear-system hitting times)
so the implementations under test are checked against a different route.
"""

from __future__ import annotations

import math
import random

from navlearn import Graph


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int, center: int = 0) -> Graph:
    n = leaves + 1
    others = [v for v in range(n) if v != center]
    return Graph(n, [(min(center, v), max(center, v)) for v in others])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def floyd_warshall(g: Graph) -> list[list[float]]:
    """All-pairs distances by the cubic recurrence; inf when unreachable."""
    inf = math.inf
    dist = [[inf] * g.n for _ in range(g.n)]
    for v in range(g.n):
        dist[v][v] = 0
    for u, v in g.edges():
        dist[u][v] = dist[v][u] = 1
    for k in range(g.n):
        dk = dist[k]
        for i in range(g.n):
            dik = dist[i][k]
            if dik == inf:
                continue
            di = dist[i]
            for j in range(g.n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def union_find_component_sizes(g: Graph) -> list[int]:
    """Component sizes via union-find, descending."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    sizes: dict[int, int] = {}
    for v in range(g.n):
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    return sorted(sizes.values(), reverse=True)


def edge_set(g: Graph) -> set[tuple[int, int]]:
    return set(g.edges())


def check_simple_path(g: Graph, path: list[int]) -> bool:
    """Validity check independent of the package's own helpers."""
    if not path:
        return False
    if len(set(path)) != len(path):
        return False
    edges = edge_set(g)
    for a, b in zip(path, path[1:]):
        if (min(a, b), max(a, b)) not in edges:
            return False
    return True


def knee_by_bruteforce(curve: list[int]) -> int:
    """Max point-to-chord distance on the min-max normalized curve, from the
    raw two-point line-distance formula (1-based, ties to smallest index)."""
    n = len(curve)
    if n == 1 or curve[0] == curve[-1]:
        return 1
    xs = [i / (n - 1) for i in range(n)]
    ys = [(f - curve[-1]) / (curve[0] - curve[-1]) for f in curve]
    x1, y1, x2, y2 = xs[0], ys[0], xs[-1], ys[-1]
    denom = math.hypot(x2 - x1, y2 - y1)
    best, best_d = 1, -1.0
    for i in range(n):
        d = abs((y2 - y1) * xs[i] - (x2 - x1) * ys[i] + x2 * y1 - y2 * x1) / denom
        if d > best_d:
            best, best_d = i + 1, d
    return best


def unimodal_by_bruteforce(values: list[float]) -> bool:
    """Exists a split j with a non-decreasing prefix and non-increasing suffix."""
    k = len(values)
    for j in range(k):
        if all(values[i] <= values[i + 1] for i in range(j)) and all(
            values[i] >= values[i + 1] for i in range(j, k - 1)
        ):
            return True
    return False


def random_walk(g: Graph, start: int, steps: int, rng: random.Random) -> list[int]:
    walk = [start]
    cur = start
    for _ in range(steps):
        nbrs = g.adj[cur]
        cur = nbrs[rng.randrange(len(nbrs))]
        walk.append(cur)
    return walk
