"""Clustering for edge-labeled graphs and hypergraphs: one cluster per
category, minimizing the weight of edges not contained in their own
category's cluster.  Exact for two categories via minimum s-t cuts;
approximate for more via LP rounding and multiway-cut heuristics."""

from .baselines import (
    ClusterFamily,
    chromatic_balls,
    family_objective,
    lazy_chromatic_balls,
    majority_labels,
    majority_vote,
    merge_same_color,
)
from .flow import FlowNetwork, MinCutResult, cut_value, min_cut, write_dimacs
from .hypergraph import (
    Clustering,
    HyperEdge,
    LabeledHypergraph,
    brute_force_optimum,
    clustering,
    edge,
    linear_objective,
    mistake,
    objective,
    reduce_to_labeled_graph,
    validate,
)
from .lp import (
    LpInstance,
    LpSolution,
    approx_bound,
    build_lp,
    lower_bound,
    round_deterministic,
    round_randomized,
    solve_lp,
    theorem_threshold,
)
from .metrics import (
    EvalReport,
    ari,
    avg_time_diff,
    degree_filter,
    edge_satisfaction,
    mistake_floor,
    node_accuracy,
    normalized_cut,
    pairwise_f_score,
    unused_nodes,
)
from .multiway import (
    IsolatingCutsResult,
    NodeWeightedTerminalGraph,
    TerminalGraph,
    build_multiway_graph,
    build_nwmc_graph,
    cat_isocut,
    isolating_cuts,
    multiway_cut_value,
    nwmc_mistaken_edges,
)
from .reports import SolveReport, approx_ratio
from .synthetic import (
    ChromaticModelParams,
    GroundTruth,
    TemporalEdge,
    bin_timestamps,
    gen_chromatic_graph,
    gen_chromatic_hypergraph,
    inject_label_noise,
)
from .two_color import (
    build_graph_reduction,
    build_hypergraph_reduction,
    solve_two_color,
    wildcard_offset,
)

__version__ = "0.1.0"
