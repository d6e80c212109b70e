"""stabletrop: exact stable intersection of tropical cycles.

Balanced weighted polyhedral complexes over Q, their stable intersections,
tropical hypersurfaces of rational polytopes, mixed volumes, the polytope
algebra correspondence, and connectivity through codimension one. All
arithmetic is exact (integers and fractions).
"""

from stabletrop.algebra import (
    build_hypersurface_basis,
    decompose_into_powers,
    polytope_class,
    polytope_from_weights,
)
from stabletrop.connectivity import (
    connected_components,
    is_connected_through_codim1,
)
from stabletrop.cycles import (
    TropicalCycle,
    balanced_cycle,
    cycle,
    cycle_sum,
    cycles_equal,
    is_balanced,
    pushforward,
    zero_cycle,
)
from stabletrop.errors import (
    DimensionError,
    GenericityError,
    ParseError,
    StableTropError,
    ValidationError,
)
from stabletrop.polyhedra import Polyhedron
from stabletrop.polytopes import (
    RationalPolytope,
    mixed_volume,
    normalized_volume,
    polytope,
    tropical_hypersurface,
)
from stabletrop.stable import (
    stable_intersection,
    stable_intersection_report,
    stable_power,
)

__all__ = [
    "DimensionError",
    "GenericityError",
    "ParseError",
    "Polyhedron",
    "RationalPolytope",
    "StableTropError",
    "TropicalCycle",
    "ValidationError",
    "balanced_cycle",
    "build_hypersurface_basis",
    "connected_components",
    "cycle",
    "cycle_sum",
    "cycles_equal",
    "decompose_into_powers",
    "is_balanced",
    "is_connected_through_codim1",
    "mixed_volume",
    "normalized_volume",
    "polytope",
    "polytope_class",
    "polytope_from_weights",
    "pushforward",
    "stable_intersection",
    "stable_intersection_report",
    "stable_power",
    "tropical_hypersurface",
    "zero_cycle",
]

__version__ = "0.1.0"
