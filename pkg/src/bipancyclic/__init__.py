"""Long cycles in hamiltonian n/2-regular balanced bipartite graphs.

Extracts certified cycles of length 2n-2, checks bipancyclicity against a
brute-force oracle, and verifies both exhaustively for small n.
"""

from .errors import (
    BipancyclicError,
    DuplicateEdge,
    IndexOutOfRange,
    InvalidInput,
    InvalidLabeling,
    NotBalancedRegular,
    NotCanonical,
    NotHamiltonian,
    NotRegular,
    ParseError,
    PreconditionFailed,
    TheoremViolation,
    TooSmall,
    UnsupportedN,
)
from .graph import (
    BalancedBipartiteGraph,
    CycleWitness,
    HamiltonLabeling,
    SignedAdjacencyMatrix,
    find_hamilton_cycle,
    format_edge_list,
    from_edge_list,
    parse_edge_list,
    read_edge_list,
    relabel_along_hamilton,
    signed_matrix,
    validate_cycle,
)
from .extract import (
    ExtractionReport,
    Method,
    StructuralCheck,
    check_structural_constraints,
    extract,
    extract_by_condition1,
    extract_by_condition2,
    extract_structural,
)
from .oracle import (
    ESPrediction,
    PancyclicityReport,
    SecondAssertion,
    SecondAssertionReport,
    check_second_assertion,
    es_predict,
    find_near_hamilton_omitting_adjacent_pair,
    has_cycle_of_length,
    is_bipancyclic,
)
from .census import (
    MatrixCensusResult,
    VerificationSummary,
    constrained_matrix_census,
    enumerate_class,
    random_member,
    verify_theorem,
)

__version__ = "0.1.0"
