"""Szegedy and coined discrete-time quantum walks on a shared arc basis."""

from qwequiv.arcspace import (
    Arc,
    ArcBasis,
    build_basis,
    marked_probability,
    uniform_state,
    vertex_superposition,
)
from qwequiv.equivalence import (
    ComparisonReport,
    SuiteReport,
    operator_equal,
    run_equivalence_suite,
    symmetric_search_check,
    trajectory_equal,
)
from qwequiv.graph import (
    EdgeListParseError,
    Graph,
    GraphError,
    MarkedSet,
    bipartite_double_cover,
    export,
    from_edge_list,
    generate,
)
from qwequiv.operators import (
    WalkOperator,
    coin_grover,
    compose,
    oracle,
    shift_flipflop,
    szegedy_query,
    szegedy_reflection,
    walk_operator,
)
from qwequiv.search import (
    Peak,
    Trajectory,
    default_horizon,
    evolve,
    find_peak,
    negligible_evolution_check,
    predicted_peak,
)

__version__ = "0.1.0"
