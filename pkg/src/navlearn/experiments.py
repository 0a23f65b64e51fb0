"""Experiment drivers: stretch curves, flag curves, stability, psi.

Each driver derives every RNG stream it needs from one seed via role tags
and indices, precomputes shared read-only state (distances, rankings), and
aggregates per-pair results in index order — so reports are reproducible
for any worker count.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence, TypeVar

from .baselines import degree_navigate, one_way_walk, two_way_walk
from .errors import CapExceededError, NavigationError
from .graph import (
    CentralityRanking,
    Graph,
    bfs_distances,
    closeness_ranking,
    gen_barabasi_albert,
    gen_erdos_renyi,
    largest_component,
)
from .learning import (
    HotspotTable,
    RewardModel,
    build_hotspot_table,
    hotspot_jaccard,
    learn,
    pair_schedule,
)
from .navigation import pca_navigate
from .seeds import derive_rng, derive_seed

DEFAULT_PAIR_BUDGET = 20_000

_EVAL_CHUNK = 512

T = TypeVar("T")


@dataclass
class LearnConfig:
    """Knobs for one learning run inside an experiment."""

    seed: int
    iterations: int | None = None  # None: module default schedule
    workers: int = 1
    alpha: int | None = None  # None: knee-selected


def build_graph(family: str, n: int, param: float, seed: int) -> Graph:
    """Generate a graph and reduce it to its largest component.

    family "er" treats param as the edge probability, "ba" as the
    attachment count. Experiments need finite distances, so graphs whose
    largest component is a single vertex are rejected.
    """
    if family == "er":
        g = gen_erdos_renyi(n, float(param), seed)
    elif family == "ba":
        g = gen_barabasi_albert(n, int(param), seed)
    else:
        raise ValueError(f"unknown graph family {family!r}")
    reduced, _ = largest_component(g)
    if reduced.n < 2:
        raise ValueError(
            f"{family} graph (n={n}, param={param}) reduced to a single vertex"
        )
    return reduced


def run_learning(g: Graph, config: LearnConfig) -> tuple[RewardModel, HotspotTable]:
    """Schedule pairs, learn, and build the hotspot table."""
    pairs = pair_schedule(g.n, config.seed, config.iterations)
    model = learn(g, pairs, config.seed, workers=config.workers)
    table = build_hotspot_table(g, model, config.alpha)
    return model, table


def eval_pairs(n: int, budget: int, seed: int, role: str) -> list[tuple[int, int]]:
    """Evaluation pair set: every unordered pair when C(n,2) fits the
    budget, otherwise a uniform sample of *budget* pairs.
    """
    total = n * (n - 1) // 2
    if total <= budget:
        return [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng = derive_rng(seed, role)
    pairs = []
    randrange = rng.randrange
    for _ in range(budget):
        u = randrange(n)
        v = randrange(n - 1)
        if v >= u:
            v += 1
        pairs.append((u, v))
    return pairs


def _source_distances(g: Graph, pairs: Sequence[tuple[int, int]]) -> dict[int, list[int]]:
    return {s: bfs_distances(g, s) for s in sorted({a for a, _ in pairs})}


def _map_ordered(fn: Callable[[int], T], count: int, workers: int) -> list[T]:
    """Apply fn to 0..count-1, results in index order regardless of workers."""
    if workers <= 1 or count <= _EVAL_CHUNK:
        return [fn(i) for i in range(count)]
    spans = [(lo, min(lo + _EVAL_CHUNK, count)) for lo in range(0, count, _EVAL_CHUNK)]

    def run(span: tuple[int, int]) -> list[T]:
        return [fn(i) for i in range(span[0], span[1])]

    out: list[T] = []
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(run, spans):
            out.extend(part)
    return out


# ---------------------------------------------------------------------------
# Stretch comparison (1-way vs 2-way vs hotspot navigation)
# ---------------------------------------------------------------------------

@dataclass
class StretchReport:
    """Mean length/distance ratios for the three strategies on one graph.

    Ratios average over evaluated pairs with failures excluded; the
    failure counts say how many pairs each strategy lost to its step cap.
    """

    family: str
    n: int
    param: float
    seed: int
    beta: float
    gamma: float
    delta: float
    pairs_evaluated: int
    failures_one_way: int
    failures_two_way: int
    failures_pca: int


def stretch_on_graph(
    g: Graph,
    seed: int,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    iterations: int | None = None,
    workers: int = 1,
    alpha: int | None = None,
) -> tuple[float, float, float, int, dict[str, int]]:
    """Learn on *g*, then compare the three strategies over sampled pairs.

    Returns (beta, gamma, delta, pairs_evaluated, failure counts).
    """
    model, table = run_learning(
        g, LearnConfig(seed=derive_seed(seed, "stretch-learn"), iterations=iterations,
                       workers=workers, alpha=alpha)
    )
    pairs = eval_pairs(g.n, pair_budget, seed, "stretch-eval-pairs")
    dists = _source_distances(g, pairs)

    def evaluate(j: int) -> tuple[float | None, float | None, float | None]:
        a, b = pairs[j]
        d = dists[a][b]
        one = two = nav = None
        try:
            one = one_way_walk(g, a, b, derive_rng(seed, "stretch-one-way", j)).path_length / d
        except CapExceededError:
            pass
        try:
            two = two_way_walk(g, a, b, derive_rng(seed, "stretch-two-way", j)).path_length / d
        except CapExceededError:
            pass
        try:
            nav = pca_navigate(g, model, table, a, b).length / d
        except NavigationError:
            pass
        return one, two, nav

    results = _map_ordered(evaluate, len(pairs), workers)
    sums = [0.0, 0.0, 0.0]
    counts = [0, 0, 0]
    for row in results:
        for k, ratio in enumerate(row):
            if ratio is not None:
                sums[k] += ratio
                counts[k] += 1
    means = [s / c if c else math.nan for s, c in zip(sums, counts)]
    failures = {
        "one-way": len(pairs) - counts[0],
        "two-way": len(pairs) - counts[1],
        "pca": len(pairs) - counts[2],
    }
    return means[0], means[1], means[2], len(pairs), failures


def stretch_experiment(
    family: str,
    sizes: Sequence[int],
    param: float,
    seeds: Sequence[int],
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    iterations: int | None = None,
    workers: int = 1,
) -> list[StretchReport]:
    """Stretch ratios over a (size, seed) grid for one graph family."""
    reports = []
    for n in sizes:
        for seed in seeds:
            g = build_graph(family, n, param, derive_seed(seed, "stretch-graph"))
            beta, gamma, delta, evaluated, failures = stretch_on_graph(
                g, seed, pair_budget, iterations, workers
            )
            reports.append(
                StretchReport(
                    family=family,
                    n=n,
                    param=param,
                    seed=seed,
                    beta=beta,
                    gamma=gamma,
                    delta=delta,
                    pairs_evaluated=evaluated,
                    failures_one_way=failures["one-way"],
                    failures_two_way=failures["two-way"],
                    failures_pca=failures["pca"],
                )
            )
    return reports


# ---------------------------------------------------------------------------
# Flag curve and knee
# ---------------------------------------------------------------------------

def flag_curve_experiment(g: Graph, config: LearnConfig) -> tuple[list[int], int]:
    """Learn on *g* and return (descending flag curve, selected alpha)."""
    model, table = run_learning(g, config)
    return model.flag_curve(), table.alpha


# ---------------------------------------------------------------------------
# Hotspot stability across repeated learning runs
# ---------------------------------------------------------------------------

@dataclass
class StabilityReport:
    """Hotspot sets from repeated learning runs plus pairwise Jaccard."""

    hotspot_sets: list[list[int]]
    alphas: list[int]
    pairwise_jaccard: list[list[float]]

    def mean_off_diagonal(self) -> float:
        k = len(self.pairwise_jaccard)
        vals = [
            self.pairwise_jaccard[i][j]
            for i in range(k)
            for j in range(k)
            if i != j
        ]
        return sum(vals) / len(vals)


def stability_experiment(g: Graph, runs: int, config: LearnConfig) -> StabilityReport:
    """Rerun learning *runs* times with distinct derived seeds and compare
    the hotspot sets."""
    if runs < 2:
        raise ValueError("stability needs at least two runs")
    sets: list[list[int]] = []
    alphas: list[int] = []
    for r in range(runs):
        run_seed = derive_seed(config.seed, "stability-run", r)
        run_cfg = LearnConfig(
            seed=run_seed, iterations=config.iterations,
            workers=config.workers, alpha=config.alpha,
        )
        _, table = run_learning(g, run_cfg)
        sets.append(sorted(table.hotspots))
        alphas.append(table.alpha)
    jac = [[hotspot_jaccard(a, b) for b in sets] for a in sets]
    return StabilityReport(hotspot_sets=sets, alphas=alphas, pairwise_jaccard=jac)


# ---------------------------------------------------------------------------
# Center-strategic ratio vs learning budget
# ---------------------------------------------------------------------------

def center_strategic_check(path: Sequence[int], ranking: CentralityRanking) -> bool:
    """True iff closeness along the path rises to a single (weak) peak and
    falls after it — no second summit."""
    values = [ranking.closeness[v] for v in path]
    i = 0
    last = len(values) - 1
    while i < last and values[i + 1] >= values[i]:
        i += 1
    while i < last and values[i + 1] <= values[i]:
        i += 1
    return i == last


@dataclass
class PsiCheckpoint:
    k: int
    psi: float
    pairs: int  # traversals evaluated (failures excluded)
    failures: int


@dataclass
class PsiCurve:
    checkpoints: list[PsiCheckpoint]


def psi_experiment(
    g: Graph,
    checkpoints: Sequence[int],
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    seed: int = 0,
    workers: int = 1,
    alpha: int | None = None,
) -> PsiCurve:
    """Freeze learning at each checkpoint and measure the fraction of
    navigation paths whose closeness profile is single-peaked.

    Checkpoints must be ascending with the first at >= 100 iterations.
    Prefix models are exact: iteration RNG streams depend only on
    (seed, index), so learning the first k pairs reproduces the state a
    longer run had at k.
    """
    points = list(checkpoints)
    if not points:
        raise ValueError("need at least one checkpoint")
    if points[0] < 100:
        raise ValueError("first checkpoint must be >= 100 iterations")
    if any(a >= b for a, b in zip(points, points[1:])):
        raise ValueError("checkpoints must be strictly ascending")
    ranking = closeness_ranking(g)
    schedule = pair_schedule(g.n, seed, iterations=points[-1])
    pairs = eval_pairs(g.n, pair_budget, seed, "psi-eval-pairs")
    out = []
    for k in points:
        model = learn(g, schedule[:k], seed, workers=workers)
        table = build_hotspot_table(g, model, alpha)

        def navigate(j: int) -> bool | None:
            a, b = pairs[j]
            try:
                outcome = pca_navigate(g, model, table, a, b)
            except NavigationError:
                return None
            return center_strategic_check(outcome.path, ranking)

        results = _map_ordered(navigate, len(pairs), workers)
        strategic = sum(1 for r in results if r is True)
        failures = sum(1 for r in results if r is None)
        evaluated = len(results) - failures
        psi = strategic / evaluated if evaluated else math.nan
        out.append(PsiCheckpoint(k=k, psi=psi, pairs=evaluated, failures=failures))
    return PsiCurve(checkpoints=out)


# ---------------------------------------------------------------------------
# CSV / JSON emission
# ---------------------------------------------------------------------------

STRETCH_HEADER = [
    "family", "n", "param", "seed", "beta", "gamma", "delta",
    "pairs", "fail_1w", "fail_2w", "fail_pca",
]
FLAG_CURVE_HEADER = ["index", "flag"]
STABILITY_HEADER = ["run_i", "run_j", "jaccard"]
PSI_HEADER = ["k", "psi", "pairs", "failures"]


def stretch_rows(reports: Iterable[StretchReport]) -> list[list]:
    return [
        [r.family, r.n, r.param, r.seed, r.beta, r.gamma, r.delta,
         r.pairs_evaluated, r.failures_one_way, r.failures_two_way,
         r.failures_pca]
        for r in reports
    ]


def flag_curve_rows(curve: Sequence[int]) -> list[list]:
    return [[i, f] for i, f in enumerate(curve, start=1)]


def stability_rows(report: StabilityReport) -> list[list]:
    k = len(report.pairwise_jaccard)
    return [
        [i, j, report.pairwise_jaccard[i][j]]
        for i in range(k)
        for j in range(i, k)
    ]


def psi_rows(curve: PsiCurve) -> list[list]:
    return [[c.k, c.psi, c.pairs, c.failures] for c in curve.checkpoints]


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_json_mirror(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence],
    config: dict,
) -> None:
    doc = {
        "config": config,
        "rows": [dict(zip(header, row)) for row in rows],
    }
    Path(path).write_text(
        json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
