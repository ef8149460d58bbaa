"""Hyperball and hypercycle covering densities over doubly truncated
Coxeter orthoschemes in the projective model of hyperbolic space."""

from .covering import (
    CoveringConfig,
    DensityResult,
    EdgeId,
    FamilyResult,
    NoFeasiblePoint,
    NoRoot,
    coverage_check,
    config_at,
    density,
    edge_covered,
    edge_plane_distance,
    heights_at,
    minimize_noncongruent,
    optimize_family_u37,
    solve_congruent,
)
from .lorentz import (
    DegeneratePlane,
    DomainError,
    GeometryError,
    NonProperPoint,
    PointClass,
    ProjForm,
    ProjPoint,
    bilinear,
    classify,
    distance,
    point_plane_distance,
    polar,
    segment_point,
)
from .orthoscheme import (
    EmbeddingFailure,
    GramPair,
    InadmissibleParameters,
    SchlafliParams,
    TruncatedOrthoscheme,
    build,
    classify_params,
    closed_form_distances,
    embed,
    gram,
)
from .planar import (
    COVERING_LIMIT_2D,
    NoIntersection,
    NotACovering,
    PlanarConfig,
    build_pentagon,
    density_2d,
    hypercycle_piece_area,
    limit_scan,
    pentagon_area,
    standard_scan_path,
)
from .volume import (
    DegenerateTriangle,
    NegativeHeight,
    VolumeReport,
    hyperball_piece_volume,
    lobachevsky,
    orthoscheme_volume,
    theta,
    triangle_area,
    volume_report,
)

__version__ = "0.1.0"
