"""Baseline path-finding strategies: 1-way walk, 2-way walk, degree greedy.

Path lengths are measured on the loop-erased walks; raw step counts are
kept alongside for transparency. Step caps turn pathological runs into
counted failures instead of hangs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import StepCapError
from .graph import Graph
from .learning import _paired_walk_raw, loop_erase

ONE_WAY_CAP_FACTOR = 10_000

STRATEGY_ONE_WAY = "one-way"
STRATEGY_TWO_WAY = "two-way"
STRATEGY_DEGREE = "degree"


@dataclass
class BaselineOutcome:
    """Loop-erased path length plus the raw steps spent finding it."""

    path_length: int
    raw_hops: int
    strategy: str


def one_way_walk(
    g: Graph, s: int, t: int, rng: random.Random, cap: int | None = None
) -> BaselineOutcome:
    """Uniform random walk from s until it lands on t.

    Loop-erases on the fly, so memory stays O(n) even for long walks.
    Raises StepCapError past *cap* steps (default 10^4 * n).
    """
    if s == t:
        raise ValueError("source and target must differ")
    if cap is None:
        cap = ONE_WAY_CAP_FACTOR * g.n
    adj = g.adj
    randrange = rng.randrange
    path = [s]
    position = {s: 0}
    cur = s
    steps = 0
    while cur != t:
        if steps >= cap:
            raise StepCapError(f"one-way walk exceeded {cap} steps")
        nbrs = adj[cur]
        cur = nbrs[randrange(len(nbrs))]
        steps += 1
        if cur in position:
            cut = position[cur] + 1
            for w in path[cut:]:
                del position[w]
            del path[cut:]
        else:
            position[cur] = len(path)
            path.append(cur)
    return BaselineOutcome(
        path_length=len(path) - 1, raw_hops=steps, strategy=STRATEGY_ONE_WAY
    )


def two_way_walk(g: Graph, s: int, t: int, rng: random.Random) -> BaselineOutcome:
    """Paired walks from s and t to their first intersection, spliced into
    one s-t path and loop-erased end to end.

    Propagates WalkCapError from the paired walk.
    """
    h, walk_s, walk_t = _paired_walk_raw(g, s, t, rng)
    path_s = loop_erase(walk_s[: walk_s.index(h) + 1])
    path_t = loop_erase(walk_t[: walk_t.index(h) + 1])
    spliced = loop_erase(path_s + path_t[::-1][1:])
    # walks advance in lockstep, so total raw cost is twice the meet step
    return BaselineOutcome(
        path_length=len(spliced) - 1,
        raw_hops=2 * (len(walk_s) - 1),
        strategy=STRATEGY_TWO_WAY,
    )


def degree_navigate(
    g: Graph, s: int, t: int, cap: int | None = None
) -> BaselineOutcome:
    """Deterministic greedy hop to the highest-degree unvisited neighbor
    (ties to smallest id), revisiting only when everything adjacent has
    been seen. Raises StepCapError past *cap* steps (default n^2).

    The hop rule is deterministic, so returning to a vertex without having
    discovered anything new in between proves the walk is in an endless
    revisit cycle; that is reported as the same cap failure immediately
    instead of spinning out the budget.
    """
    if s == t:
        raise ValueError("source and target must differ")
    if cap is None:
        cap = g.n * g.n
    visited = {s}
    walk = [s]
    cur = s
    steps = 0
    stale = {s}  # vertices held since the last fresh discovery
    while cur != t:
        if steps >= cap:
            raise StepCapError(f"degree navigation exceeded {cap} steps")
        ranked = g.neighbors_by_degree(cur)
        nxt = None
        for x in ranked:
            if x not in visited:
                nxt = x
                break
        if nxt is None:
            nxt = ranked[0]
            if nxt in stale:
                raise StepCapError(
                    f"degree navigation trapped in a revisit cycle at {nxt}"
                )
            stale.add(nxt)
        else:
            visited.add(nxt)
            stale = {nxt}
        walk.append(nxt)
        cur = nxt
        steps += 1
    path = loop_erase(walk)
    return BaselineOutcome(
        path_length=len(path) - 1, raw_hops=steps, strategy=STRATEGY_DEGREE
    )
