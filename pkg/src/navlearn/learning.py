"""Learning phase: paired random walks, flag/edge rewards, hotspot table.

Each learning iteration walks two tokens from a random vertex pair in
lockstep until their visited sets intersect, flags the intersection vertex,
and spreads 1/length reward over the directed edges of the two loop-erased
walk prefixes. Vertices sorted by flag count give the hotspot ordering; the
table keeps the top-alpha prefix plus exact shortest paths between all
hotspot pairs (one BFS per hotspot, not cubic all-pairs work).

Iterations draw from per-index RNG streams and accumulate in fixed-size
chunks merged in index order, so results are bit-identical for any worker
count and any prefix of a schedule equals a shorter run.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import AlphaOutOfRangeError, DisconnectedGraphError, WalkCapError
from .graph import UNREACHED, Graph, _reconstruct_path, bfs_distances
from .seeds import derive_rng

# Iterations per accumulation chunk; fixed so float merge order never
# depends on the worker count.
_CHUNK = 1024

MODEL_FORMAT_VERSION = 1

WALK_CAP_FACTOR = 64
WALK_RETRIES = 10

# Learning-schedule defaults: enumerate all pairs while tractable, else
# sample this many pairs per vertex.
EXHAUSTIVE_PAIR_LIMIT = 250_000
SAMPLED_PAIRS_PER_VERTEX = 100


def loop_erase(walk: Sequence[int]) -> list[int]:
    """Chronological loop erasure: on a revisit, drop the cycle just closed.

    Returns a simple path with the walk's endpoints preserved.
    """
    if len(walk) == 0:
        raise ValueError("cannot loop-erase an empty walk")
    path: list[int] = []
    position: dict[int, int] = {}
    for v in walk:
        if v in position:
            cut = position[v] + 1
            for w in path[cut:]:
                del position[w]
            del path[cut:]
        else:
            position[v] = len(path)
            path.append(v)
    return path


def _paired_walk_raw(
    g: Graph,
    u: int,
    v: int,
    rng: random.Random,
    cap: int | None = None,
) -> tuple[int, list[int], list[int]]:
    """Lockstep walk engine behind paired_walk; returns the raw walks.

    The two returned walks have equal length (the meet step index + 1).
    """
    if u == v:
        raise ValueError("paired walk endpoints must differ")
    if cap is None:
        cap = WALK_CAP_FACTOR * g.n
    adj = g.adj
    randrange = rng.randrange
    for _ in range(1 + WALK_RETRIES):
        walk_u = [u]
        walk_v = [v]
        seen_u = {u}
        seen_v = {v}
        cur_u = u
        cur_v = v
        for _ in range(cap):
            nbrs = adj[cur_u]
            cur_u = nbrs[randrange(len(nbrs))]
            walk_u.append(cur_u)
            seen_u.add(cur_u)
            nbrs = adj[cur_v]
            cur_v = nbrs[randrange(len(nbrs))]
            walk_v.append(cur_v)
            seen_v.add(cur_v)
            # the sets were disjoint before this step, so any common vertex
            # is one of the two just visited
            if cur_u in seen_v:
                h = min(cur_u, cur_v) if cur_v in seen_u else cur_u
            elif cur_v in seen_u:
                h = cur_v
            else:
                continue
            return h, walk_u, walk_v
    raise WalkCapError(
        f"walks from {u} and {v} failed to intersect within {cap} steps "
        f"({1 + WALK_RETRIES} attempts)"
    )


def paired_walk(
    g: Graph,
    u: int,
    v: int,
    rng: random.Random,
    cap: int | None = None,
) -> tuple[int, list[int], list[int]]:
    """Walk from u and v in lockstep until the visited sets intersect.

    Both walks take step i before the intersection test at i. The
    intersection vertex h is the smallest id among the (at most two) common
    vertices. Returns (h, path from u to h, path from v to h), each the
    loop-erased walk prefix cut at h's first occurrence.

    A walk that exceeds *cap* steps (default 64*n) is discarded and retried
    with fresh randomness; after 10 retries raises WalkCapError.
    """
    h, walk_u, walk_v = _paired_walk_raw(g, u, v, rng, cap)
    path_u = loop_erase(walk_u[: walk_u.index(h) + 1])
    path_v = loop_erase(walk_v[: walk_v.index(h) + 1])
    return h, path_u, path_v


# ---------------------------------------------------------------------------
# Reward accumulation
# ---------------------------------------------------------------------------

@dataclass
class RewardModel:
    """Learned per-vertex flag counts and directed per-edge rewards.

    Rewards live in a sparse map keyed by directed edge (a, b); absent
    entries mean reward 0. A vertex's flag counts how often paired walks
    first intersected there, so sum(flags) == iterations_done.
    """

    flags: list[int]
    edge_reward: dict[tuple[int, int], float]
    iterations_done: int
    _outgoing: dict[int, dict[int, float]] | None = field(
        default=None, init=False, repr=False, compare=False
    )

    def reward(self, a: int, b: int) -> float:
        return self.edge_reward.get((a, b), 0.0)

    def outgoing(self, v: int) -> dict[int, float]:
        """Rewards of edges leaving v, as a neighbor->reward map (cached)."""
        if self._outgoing is None:
            by_source: dict[int, dict[int, float]] = {}
            for (a, b), r in self.edge_reward.items():
                by_source.setdefault(a, {})[b] = r
            self._outgoing = by_source
        return self._outgoing.get(v, {})

    def flag_curve(self) -> list[int]:
        """Flag values in hotspot order (descending, id tie-break)."""
        return sorted(self.flags, reverse=True)


def iteration_rng(seed: int, index: int) -> random.Random:
    """The RNG stream used by learning iteration *index* under *seed*.

    Public so tests can replay single iterations independently.
    """
    return derive_rng(seed, "learn-iteration", index)


def pair_schedule(
    n: int,
    seed: int,
    iterations: int | None = None,
) -> list[tuple[int, int]]:
    """Build the sequence of (u, v) pairs a learning run will walk.

    With C(n,2) <= EXHAUSTIVE_PAIR_LIMIT the schedule is every unordered
    distinct pair, shuffled (so any prefix is an unbiased sample); an
    explicit *iterations* below the total keeps just the prefix. Larger
    graphs get uniform pairs with replacement, 100*n by default.
    """
    if n < 2:
        raise ValueError("need at least two vertices to schedule pairs")
    total = n * (n - 1) // 2
    rng = derive_rng(seed, "pair-schedule")
    if total <= EXHAUSTIVE_PAIR_LIMIT:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        if iterations is not None and iterations < len(pairs):
            pairs = pairs[:iterations]
        elif iterations is not None and iterations > len(pairs):
            pairs.extend(_sample_pairs(n, iterations - len(pairs), rng))
        return pairs
    count = iterations if iterations is not None else SAMPLED_PAIRS_PER_VERTEX * n
    return _sample_pairs(n, count, rng)


def _sample_pairs(n: int, count: int, rng: random.Random) -> list[tuple[int, int]]:
    pairs = []
    randrange = rng.randrange
    for _ in range(count):
        u = randrange(n)
        v = randrange(n - 1)
        if v >= u:
            v += 1
        pairs.append((u, v))
    return pairs


def learn(
    g: Graph,
    pairs: Iterable[tuple[int, int]],
    seed: int,
    workers: int = 1,
) -> RewardModel:
    """Run one learning iteration per scheduled pair and accumulate rewards.

    Each iteration: paired_walk, flag(h) += 1, and for both loop-erased
    walk prefixes add 1/length to every directed edge along the path
    (zero-length prefixes add nothing). Deterministic given (pairs, seed),
    independent of *workers*.
    """
    schedule = list(pairs)
    for u, v in schedule:
        if u == v:
            raise ValueError(f"schedule contains a degenerate pair ({u}, {u})")

    def run_chunk(span: tuple[int, int]) -> tuple[dict[int, int], dict[tuple[int, int], float]]:
        lo, hi = span
        flags: dict[int, int] = {}
        rewards: dict[tuple[int, int], float] = {}
        for i in range(lo, hi):
            u, v = schedule[i]
            h, path_u, path_v = paired_walk(g, u, v, iteration_rng(seed, i))
            flags[h] = flags.get(h, 0) + 1
            for path in (path_u, path_v):
                length = len(path) - 1
                if length > 0:
                    share = 1.0 / length
                    prev = path[0]
                    for b in path[1:]:
                        key = (prev, b)
                        rewards[key] = rewards.get(key, 0.0) + share
                        prev = b
        return flags, rewards

    spans = [(lo, min(lo + _CHUNK, len(schedule))) for lo in range(0, len(schedule), _CHUNK)]
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run_chunk, spans))
    else:
        partials = [run_chunk(span) for span in spans]

    flags = [0] * g.n
    totals: dict[tuple[int, int], float] = {}
    for chunk_flags, chunk_rewards in partials:  # merged in iteration order
        for vertex, count in chunk_flags.items():
            flags[vertex] += count
        for edge, r in chunk_rewards.items():
            totals[edge] = totals.get(edge, 0.0) + r
    return RewardModel(flags=flags, edge_reward=totals, iterations_done=len(schedule))


# ---------------------------------------------------------------------------
# Hotspot selection
# ---------------------------------------------------------------------------

def select_alpha(flag_curve: Sequence[int]) -> int:
    """Knee of a descending flag curve: the 1-based index farthest from the
    chord joining the curve's endpoints, both axes normalized to [0, 1].

    Ties go to the smallest index; a flat curve degenerates to 1.
    """
    curve = list(flag_curve)
    if not curve:
        raise ValueError("flag curve is empty")
    if any(a < b for a, b in zip(curve, curve[1:])):
        raise ValueError("flag curve must be sorted descending")
    n = len(curve)
    first, last = curve[0], curve[-1]
    if n == 1 or first == last:
        return 1
    span_x = n - 1
    span_y = first - last
    best_index = 1
    best_dist = -1.0
    for i, f in enumerate(curve):
        x = i / span_x
        y = (f - last) / span_y
        # perpendicular distance to the (0,1)-(1,0) chord is |x+y-1|/sqrt(2)
        d = abs(x + y - 1.0)
        if d > best_dist:
            best_dist = d
            best_index = i + 1
    return best_index


@dataclass
class HotspotTable:
    """Hotspot ordering, retained prefix, and hotspot-pair shortest paths.

    lookup[i][j] is a shortest path (vertex list) from hotspots[i] to
    hotspots[j]; lookup[i][i] is the single-vertex path.
    """

    ordering: list[int]
    alpha: int
    hotspots: list[int]
    lookup: list[list[list[int]]]
    index: dict[int, int]

    def is_hotspot(self, v: int) -> bool:
        return v in self.index

    def lookup_path(self, hs: int, ht: int) -> list[int]:
        """Stored shortest path between two hotspot vertex ids."""
        return self.lookup[self.index[hs]][self.index[ht]]


def build_hotspot_table(g: Graph, model: RewardModel, alpha: int | None = None) -> HotspotTable:
    """Order vertices by descending flag (id tie-break), keep the first
    *alpha* (knee-selected when omitted), and store shortest paths between
    every hotspot pair via one BFS per hotspot.
    """
    if model.iterations_done <= 0:
        raise ValueError("model has no completed iterations")
    if len(model.flags) != g.n:
        raise ValueError("model flag vector does not match graph size")
    flags = model.flags
    ordering = sorted(range(g.n), key=lambda v: (-flags[v], v))
    if alpha is None:
        alpha = select_alpha([flags[v] for v in ordering])
    if not (1 <= alpha <= g.n):
        raise AlphaOutOfRangeError(f"alpha={alpha} outside 1..{g.n}")
    hotspots = ordering[:alpha]
    lookup: list[list[list[int]]] = []
    for hs in hotspots:
        dist = bfs_distances(g, hs)
        row = []
        for ht in hotspots:
            if dist[ht] == UNREACHED:
                raise DisconnectedGraphError(
                    f"hotspots {hs} and {ht} are in different components"
                )
            row.append(_reconstruct_path(g, dist, ht))
        lookup.append(row)
    return HotspotTable(
        ordering=ordering,
        alpha=alpha,
        hotspots=hotspots,
        lookup=lookup,
        index={h: i for i, h in enumerate(hotspots)},
    )


# ---------------------------------------------------------------------------
# Model persistence
# ---------------------------------------------------------------------------

def model_to_json(model: RewardModel, table: HotspotTable) -> str:
    """Serialize model + table to the version-1 JSON document.

    Hotspot lookup paths are omitted: they are derivable and regenerated
    on load, which keeps files small.
    """
    doc = {
        "version": MODEL_FORMAT_VERSION,
        "n": len(model.flags),
        "iterations": model.iterations_done,
        "flags": model.flags,
        "edge_rewards": [
            [a, b, r] for (a, b), r in sorted(model.edge_reward.items())
        ],
        "alpha": table.alpha,
        "hotspots": table.hotspots,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def save_model(path: str | Path, model: RewardModel, table: HotspotTable) -> None:
    Path(path).write_text(model_to_json(model, table), encoding="utf-8")


def load_model(path: str | Path, g: Graph) -> tuple[RewardModel, HotspotTable]:
    """Load a model document and rebuild its hotspot table against *g*.

    Raises ValueError when the document does not match the graph.
    """
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if doc.get("version") != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model version {doc.get('version')!r}")
    if doc["n"] != g.n:
        raise ValueError(f"model built for n={doc['n']} but graph has n={g.n}")
    flags = [int(f) for f in doc["flags"]]
    if len(flags) != g.n:
        raise ValueError("flag vector length does not match n")
    rewards = {(int(a), int(b)): float(r) for a, b, r in doc["edge_rewards"]}
    model = RewardModel(
        flags=flags,
        edge_reward=rewards,
        iterations_done=int(doc["iterations"]),
    )
    table = build_hotspot_table(g, model, alpha=int(doc["alpha"]))
    if table.hotspots != [int(h) for h in doc["hotspots"]]:
        raise ValueError("stored hotspots disagree with the graph; wrong graph file?")
    return model, table


def hotspot_jaccard(a: Iterable[int], b: Iterable[int]) -> float:
    """Jaccard similarity of two hotspot id sets."""
    sa, sb = set(a), set(b)
    if not sa and not sb:
        return 1.0
    return len(sa & sb) / len(sa | sb)
