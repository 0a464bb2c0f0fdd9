"""Chambers, Betti numbers and cohomology ring presentations for planar
polygon spaces, computed with exact arithmetic."""

from .chambers import (
    CatalogEntry,
    ChamberCatalog,
    entry_for_lengths,
    enumerate_chambers,
    realizable,
    representative,
)
from .core import (
    ChamberSignature,
    Shortness,
    chamber_signature,
    classify_subset,
    down_closure,
    genetic_code,
    is_generic,
    mask_of,
    members,
    order_and_track,
    parse_lengths,
    poset_leq,
    same_chamber,
    short_sets,
)
from .errors import (
    DimensionMismatch,
    InvalidAntichain,
    InvalidLengthVector,
    NonGeneric,
    NotOrdered,
    NotSpecial,
    OutOfRange,
    PolyspaceError,
    Unrealizable,
    Unsupported,
    WrongType,
)
from .exterior import (
    RingPresentation,
    SimplicialComplex,
    annihilator_rank_ring,
    complex_isomorphic,
    face_ring,
    graded_rank,
    graded_ranks,
)
from .homology import a_vector, betti, euler_characteristic
from .morse import check_subset_bijection, critical_points, index_census, reduction
from .presentations import (
    balanced_subalgebra,
    h1_deficit,
    present_h1,
    raag_consistency,
    raag_graph,
    torus_image_ranks,
)
from .taxonomy import (
    ChamberClass,
    annihilator_rank_combinatorial,
    bettispecial_crosscheck,
    classify,
    d_invariants,
    sametype_separation,
)
from .walker import fingerprint, presentation_equivalent_monomial, verify_walker

__version__ = "0.1.0"
