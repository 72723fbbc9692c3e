"""Finite closure systems, convex geometries and their order decompositions."""

from .chains import (
    Chain,
    ChainElementMap,
    compatible_orders,
    h_map,
    ideal_geometry,
    is_compatible,
    maximal_chains,
    order_from_chain,
)
from .core import (
    ClosureSystem,
    GroundSet,
    SetFamily,
    Subset,
    TotalOrder,
    Verdict,
    closure,
    covering_pairs,
    irreducibles,
    join_systems,
    meet_systems,
    operator_axiom_report,
    operator_leq,
    validate_closure_system,
)
from .decomp import Decomposition, ej_decompose, min_order_cover, random_geometry, reconstruct
from .errors import (
    ConsistencyError,
    ConvGeomError,
    GroundSetMismatch,
    InvalidClosureSystem,
    LimitExceeded,
    NotAGeometry,
    NotZeroClosed,
    TooLarge,
)
from .geometry import (
    AepWitness,
    ConvexGeometry,
    check_accessibility,
    check_aep,
    check_cover_cardinality,
    check_jirr_singletons,
    check_spatial,
    check_standard,
    join_geometries,
    recognize,
)

__version__ = "0.1.0"
