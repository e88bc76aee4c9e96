"""Persistence diagrams and volume optimal cycles for alpha filtrations."""

from .simplicial import (
    Chain,
    Filtration,
    FiltrationError,
    Simplex,
    ValidationReport,
    boundary,
    canonical_sort,
    cofaces,
    read_filt,
    validate_filtration,
    write_filt,
)
from .alpha import DegeneracyError, PointCloud, build_alpha_filtration, delaunay, load_points
from .reduction import (
    PersistencePair,
    ReducedMatrices,
    check_cycle_conditions,
    diagram,
    persistence_cycle,
    reduce,
)
from .volumes import (
    OptimalVolume,
    UnsupportedPairError,
    check_persistent_volume,
    children_pairs,
    optimal_cycle,
    optimal_volume,
)
from .mergetree import (
    SIGMA_INF,
    SweepConditionError,
    PersistenceForest,
    compute_forest,
    diagram_from_forest,
    dual_adjacency,
    persistence_tree,
    volume_from_forest,
)

__version__ = "0.1.0"
