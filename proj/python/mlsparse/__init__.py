"""Multi-level graph sparsifiers: spanners, Steiner trees and level rounding."""

from ._mlsparse import (
    GuardError,
    Graph,
    InputError,
    base_b_ratio,
    best_q,
    composite_guarantee,
    diameter,
    distance,
    export_lp,
    gen_er,
    greedy_spanner,
    metric_closure,
    mst,
    multilevel,
    plot_svg,
    run_experiment,
    sample_terminals,
    single_q_guarantee,
    solve_exact,
    steiner_tree,
    subsetwise_spanner,
)

__all__ = [
    "GuardError",
    "Graph",
    "InputError",
    "base_b_ratio",
    "best_q",
    "composite_guarantee",
    "diameter",
    "distance",
    "export_lp",
    "gen_er",
    "greedy_spanner",
    "metric_closure",
    "mst",
    "multilevel",
    "plot_svg",
    "run_experiment",
    "sample_terminals",
    "single_q_guarantee",
    "solve_exact",
    "steiner_tree",
    "subsetwise_spanner",
]
