"""navlearn: learn network hotspots from paired random walks, then navigate
greedily through them.

The package splits into graph core (generators, BFS, closeness), the
learning phase (paired walks, rewards, hotspot table), the navigation
phase (greedy traversal + concatenation), baseline strategies, and
experiment drivers with CSV/JSON reporting.
"""

from .baselines import BaselineOutcome, degree_navigate, one_way_walk, two_way_walk
from .errors import (
    AlphaOutOfRangeError,
    CapExceededError,
    DisconnectedGraphError,
    NavigationError,
    NavlearnError,
    NoPathError,
    StepCapError,
    TraversalCapError,
    WalkCapError,
)
from .experiments import (
    LearnConfig,
    PsiCheckpoint,
    PsiCurve,
    StabilityReport,
    StretchReport,
    build_graph,
    center_strategic_check,
    flag_curve_experiment,
    psi_experiment,
    run_learning,
    stability_experiment,
    stretch_experiment,
    stretch_on_graph,
)
from .graph import (
    UNREACHED,
    CentralityRanking,
    Graph,
    bfs_distances,
    closeness_ranking,
    components,
    gen_barabasi_albert,
    gen_erdos_renyi,
    is_valid_path,
    is_valid_walk,
    largest_component,
    read_edge_list,
    shortest_path,
    write_edge_list,
)
from .learning import (
    HotspotTable,
    RewardModel,
    build_hotspot_table,
    hotspot_jaccard,
    iteration_rng,
    learn,
    load_model,
    loop_erase,
    pair_schedule,
    paired_walk,
    save_model,
    select_alpha,
)
from .navigation import NavOutcome, greedy_traverse, pca_navigate
from .seeds import derive_rng, derive_seed

__version__ = "0.1.0"
