"""Geometry of bounded symmetric domains realised as products of matrix balls.

The triple product on p x q complex matrices is {a,b,c} = (ab*c + cb*a)/2;
a space is a finite product of such factors and its open unit ball, in the
spectral norm, is the domain D.  The subpackages cover the triple algebra,
tripotents and Peirce calculus, Möbius maps and invariant distances, the
horofunction boundary, and sampled analysis of distance-preserving maps.
"""

from .boundary import (
    ConePoint,
    HorofunctionSpec,
    LimitReport,
    classify_pair,
    cone_M,
    detour_cost,
    detour_cost_numeric,
    detour_metric,
    flat_membership_test,
    gromov_numeric,
    gromov_singletons,
    hilbert,
    horofunction_eval,
    part_cross_section,
    part_of,
    singleton_eval,
    thompson,
    translation_action_check,
)
from .geometry import (
    FlatChart,
    GeodesicRay,
    bergman_distance,
    bergman_on_flat,
    caratheodory_distance,
    flat_compose_mobius,
    geodesic_symmetry,
    is_almost_geodesic,
    mobius,
)
from .maps import (
    LinearTripleMap,
    MapReport,
    holomorphy_classifier,
    induced_tripotent_map,
    irreducible_components,
    is_isometry_sampled,
    is_triple_homomorphism,
    mobius_invariance_check,
    normalize_origin,
    rank_genus_report,
)
from .triple import (
    ComplexLinearOperator,
    Element,
    NumericalInconsistency,
    OutsideDomainError,
    ShapeError,
    TripleSpace,
    bergman_inv_sqrt,
    bergman_operator,
    box_operator,
    element,
    quadratic_op,
    space_invariants,
    spectral_norm,
    triple_product,
)
from .tripotents import (
    Frame,
    frame_completion,
    is_minimal,
    is_orthogonal,
    is_tripotent,
    joint_peirce_projection,
    maximal_chain_through,
    order_leq,
    peirce_projection,
    spectral_decompose,
)

__version__ = "0.1.0"
