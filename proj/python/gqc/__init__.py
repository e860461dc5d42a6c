"""Spanning forests from global graph queries, with exact certificate tools."""

try:
    from ._gqc import *  # noqa: F401,F403  (installed layout)
    from ._gqc import __doc__ as _doc
except ImportError:  # build-tree layout: extension next to the package dir
    from _gqc import *  # noqa: F401,F403
    from _gqc import __doc__ as _doc

__doc__ = _doc

__all__ = [
    "Graph",
    "Session",
    "component_count",
    "cycle_rank_check_mn",
    "exact_rank",
    "generate",
    "is_spanning_forest",
    "learn_simple_graph_one_query",
    "load_graph",
    "make_graph",
    "min_cut_brute",
    "universal_cut_incidence",
    "verify_at_least_tau",
    "verify_con_cert",
]
