"""Navigation phase: greedy reward-following plus hotspot concatenation.

A query walks greedily from the source (and, if needed, from the target)
following maximum-reward edges until it lands on a hotspot or stumbles on
the other endpoint, then splices the two greedy legs together through the
precomputed hotspot-to-hotspot shortest path and loop-erases the result.
Everything here is deterministic: traversal has no randomness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NavigationError, TraversalCapError
from .graph import Graph
from .learning import HotspotTable, RewardModel, loop_erase

MODE_TRIVIAL = "trivial"
MODE_DIRECT_HIT = "direct-hit"
MODE_CONCATENATION = "hotspot-concatenation"


@dataclass
class NavOutcome:
    """Result of one navigation query.

    hops_explored counts vertices visited by the greedy traversals
    (repeats included) — the exploration cost, as opposed to the final
    path length. via holds the (h_s, h_t) hotspot pair when the path went
    through the lookup table.
    """

    path: list[int]
    hops_explored: int
    via: tuple[int, int] | None
    mode: str

    @property
    def length(self) -> int:
        return len(self.path) - 1


def _pick_next(g: Graph, model: RewardModel, cur: int, visited: set[int]) -> int:
    """Next hop from cur: unvisited neighbors preferred, maximum reward,
    ties by smallest id; an all-zero reward frontier falls back to the
    highest-degree candidate (then smallest id).
    """
    nbrs = g.adj[cur]
    out = model.outgoing(cur)
    cands = [x for x in nbrs if x not in visited]
    if not cands:
        cands = nbrs
    best = cands[0]
    best_r = out.get(best, 0.0)
    for x in cands[1:]:
        r = out.get(x, 0.0)
        if r > best_r:
            best, best_r = x, r
    if best_r > 0.0:
        return best
    adj = g.adj
    best = cands[0]
    best_deg = len(adj[best])
    for x in cands[1:]:
        d = len(adj[x])
        if d > best_deg:
            best, best_deg = x, d
    return best


def _greedy_walk(
    g: Graph,
    model: RewardModel,
    start: int,
    stop_set: set[int],
    target: int | None,
    max_hops: int,
) -> list[int]:
    """Raw greedy walk (repeats possible) ending at a stop vertex."""
    walk = [start]
    if start in stop_set or start == target:
        return walk
    visited = {start}
    cur = start
    for _ in range(max_hops):
        cur = _pick_next(g, model, cur, visited)
        walk.append(cur)
        visited.add(cur)
        if cur in stop_set or cur == target:
            return walk
    raise TraversalCapError(
        f"greedy traversal from {start} took {max_hops} hops without "
        f"reaching a stop vertex"
    )


def greedy_traverse(
    g: Graph,
    model: RewardModel,
    start: int,
    stop_set: set[int],
    target: int | None = None,
    max_hops: int | None = None,
) -> list[int]:
    """Loop-erased greedy traversal from start to the first stop vertex.

    Raises TraversalCapError after max_hops (default n) steps.
    """
    if not (0 <= start < g.n):
        raise ValueError(f"start vertex {start} out of range")
    if not stop_set:
        raise ValueError("stop_set must be non-empty")
    if max_hops is None:
        max_hops = g.n
    return loop_erase(_greedy_walk(g, model, start, stop_set, target, max_hops))


def pca_navigate(
    g: Graph,
    model: RewardModel,
    table: HotspotTable,
    s: int,
    t: int,
    max_hops: int | None = None,
) -> NavOutcome:
    """Find an s-t path: greedy legs to hotspots, lookup between them,
    loop-erased three-way concatenation.

    Either greedy leg stopping on the opposite endpoint short-circuits to a
    direct hit. Raises NavigationError when a greedy leg hits its hop cap.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError(f"endpoints ({s}, {t}) out of range")
    if s == t:
        return NavOutcome(path=[s], hops_explored=0, via=None, mode=MODE_TRIVIAL)
    if max_hops is None:
        max_hops = g.n
    hotspots = set(table.hotspots)
    try:
        walk_s = _greedy_walk(g, model, s, hotspots | {t}, t, max_hops)
    except TraversalCapError as exc:
        raise NavigationError(f"source leg capped: {exc}") from exc
    explored = len(walk_s)
    if walk_s[-1] == t:
        return NavOutcome(
            path=loop_erase(walk_s), hops_explored=explored, via=None,
            mode=MODE_DIRECT_HIT,
        )
    try:
        walk_t = _greedy_walk(g, model, t, hotspots | {s}, s, max_hops)
    except TraversalCapError as exc:
        raise NavigationError(f"target leg capped: {exc}") from exc
    explored += len(walk_t)
    if walk_t[-1] == s:
        return NavOutcome(
            path=loop_erase(walk_t)[::-1], hops_explored=explored, via=None,
            mode=MODE_DIRECT_HIT,
        )
    path_s = loop_erase(walk_s)
    path_t = loop_erase(walk_t)
    h_s, h_t = path_s[-1], path_t[-1]
    mid = table.lookup_path(h_s, h_t)
    combo = path_s + mid[1:] + path_t[::-1][1:]
    return NavOutcome(
        path=loop_erase(combo), hops_explored=explored, via=(h_s, h_t),
        mode=MODE_CONCATENATION,
    )
