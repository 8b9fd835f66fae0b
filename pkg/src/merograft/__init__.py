"""Grafting calculus, Schwarzian oracles, and framed representation tools
for meromorphic projective structures with regular singularities."""

from .moebius import (
    DEFAULT_TOL,
    INFINITY,
    MoebiusClass,
    MoebiusMap,
    SpherePoint,
    Tolerances,
    chordal_distance,
    classify,
    compose,
    cross_ratio,
    fixed_points,
    multiplier_pair,
)
from .grafting import (
    CuspGraftSpec,
    EndMonodromyResult,
    EndType,
    GeodesicGraftSpec,
    InferredEnd,
    PoleOrder,
    SignedEndData,
    Spiral,
    Weight,
    cusp_c_closed_form,
    cusp_monodromy,
    elliptic_about,
    geodesic_monodromy,
    grafting_exponent,
    infer_end_from_monodromy,
    pole_order,
    signed_c_parameter,
    signed_cusp_end,
    signed_geodesic_end,
    spiral_direction,
)
from .schwarzian import (
    Exponent,
    GeodesicPower,
    LogEnd,
    ModelMap,
    PowerN,
    PowerPlusLog,
    PowerTheta,
    SchwarzianReport,
    closed_form_schwarzian,
    closed_form_schwarzian_at,
    continue_along_loop,
    exponent_from_leading,
    leading_coefficient_limit,
    model_for_end,
    numeric_schwarzian,
)
from .surfaces import (
    DTParameterCount,
    InvalidSignature,
    SurfaceSignature,
    chi,
    dt_parameter_count,
    fiber_square_check,
)
from .framed import (
    DegeneracyVerdict,
    FramedRep,
    PhiImageVerdict,
    RepPresentation,
    Triangulation,
    build_surface_representation,
    classify_phi_image,
    evaluate_word,
    fg_edge_coordinate,
    flip,
    framing_from_signed_peripheral,
    is_degenerate,
    nondegenerate_framing_search,
    orbit_points,
    rep_is_degenerate_unframed,
    triangulation_well_defined,
)

__version__ = "0.1.0"
