"""Extremal subspaces of R^n built from weighted series-parallel graphs.

The star space of a 2-connected series-parallel graph on k+1 vertices and
n edges, equipped with the induced edge weights computed here, deviates
from every coordinate k-subspace by exactly arccos(1/sqrt(n)) in the
largest principal angle.  This package constructs those subspaces,
verifies the exact spectral identities behind that value, counts the
symmetry classes, and searches for extremal subspaces from scratch by
randomized hill climbing.
"""

__version__ = "0.1.0"

from .sptree import (
    Decomposition,
    Leaf,
    MultiGraph,
    Parallel,
    Series,
    SpTreeError,
    TreeParseError,
    canonicalize,
    check_invariants,
    decompose,
    dualize,
    enumerate_rooted,
    format_tree,
    is_two_connected,
    leaf_count,
    leaf_ids,
    make_leaf,
    make_parallel,
    make_series,
    parallel_rooted,
    parse_tree,
    rank,
    realize,
    reverse_tree,
    skeleton_key,
)
from .weights import (
    BruteForceCapError,
    TreeSums,
    brute_tree_sums,
    induced_coefficients,
    induced_weights,
    spanning_trees,
    tree_sums,
    two_component_forests,
    weights_from_json,
    weights_to_json,
)
from .numeric import (
    RankDeficientError,
    SingularMatrixError,
    Subspace,
    incidence_matrix,
    laplacian,
    match_sign_diagonal,
    matrix_from_json,
    matrix_to_json,
    orthonormalize,
    pinv_laplacian,
    principal_angles,
    projection,
    rational_det,
    rational_identity,
    rational_inverse,
    rational_matrix,
    rational_rank,
    target,
    to_float,
    transfer_current,
    transfer_current_combinatorial,
)
from .extremal import (
    ExtremalInstance,
    build,
    canonical_matrix_form,
    check_degenerate,
    check_dual,
    check_eigen,
    check_target,
    class_key,
    class_table,
    count_classes,
    least_eigenvalue_report,
    verify_instance,
)
from .search import (
    SearchConfig,
    SearchResult,
    ViolationReport,
    accumulate,
    optimize,
    perturb,
    projection_profile,
    sample_uniform,
    symmetry_equivalent,
)
