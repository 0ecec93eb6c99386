from .constructions import (
    Pullback,
    UnderCategory,
    fiber,
    nerve,
    nerve_map,
    pullback,
    restrict,
    restriction,
    under_category,
    under_face_map,
    under_map,
)
from .dump import format_sset, parse_sset
from .keylemma import UnderIso, is_levelwise_iso, key_lemma_object, under_iso, under_iso_check
from .lifting import (
    LiftingFailure,
    boundary_failure,
    cocartesian_comparison,
    cocartesian_edge_failure,
    cocartesian_fibration_failure,
    find_lifting_failure,
    horn_failure,
    inner_fibration_failure,
    is_cartesian_edge,
    is_cartesian_fibration,
    is_cocartesian_edge,
    is_cocartesian_fibration,
    is_inner_fibration,
    is_locally_cartesian_edge,
    is_locally_cocartesian_edge,
    is_trivial_kan,
    lifting_problems,
    trivial_kan_failure,
)
from .segal import (
    equivalence_edges,
    is_equivalence_edge,
    is_semi_segal,
    is_sS_cartesian_edge,
    is_sS_cartesian_fibration,
    is_sS_locally_cartesian_edge,
)
from .sset import (
    SimplicialMap,
    SimplicialSet,
    apply_operator,
    boundary,
    build_sset,
    compose_maps,
    horn,
    identity_map,
    injective_simplex,
    opposite,
    opposite_map,
    simplex_cell,
    simplex_map,
    standard_simplex,
    to_point,
    truncate,
)
