"""symkit: symmetrization operators on convex bodies in dimensions 2 and 3."""

from ._kernels import BACKEND
from .core_geometry import (
    DEFAULT_TOL,
    ConvexBody,
    HPolytope,
    RevolutionProfile,
    Subspace,
    SupportSample,
    ToleranceConfig,
    VPolytope,
    ball_v1,
    circumradius,
    contains,
    convex_hull,
    direction_grid,
    hausdorff_distance,
    inclusion_margin,
    intersect_halfspaces,
    intrinsic_volume_1,
    latlong_grid,
    minkowski_sum,
    project,
    reflect,
    sample_body,
    sample_to_polytope,
    steiner_point,
    support,
    support_batch,
    translate,
    unit_ball_volume,
    volume,
)
from .errors import (
    CapExceeded,
    Degenerate,
    Empty,
    EmptyInput,
    InvalidInput,
    InvalidM,
    InvalidSubspace,
    OriginNotInside,
    SymkitError,
    Unbounded,
    Unsupported,
)
from .symmetrizations import (
    SymSpec,
    apply_sym,
    blaschke2d,
    central,
    central_p,
    fiber,
    inner_rotational,
    m_symmetrization,
    minkowski,
    minkowski_blaschke,
    outer_rotational,
    schwarz,
    steiner,
    vexlast,
)
from .analytic_cases import (
    blaschke_cone,
    blaschke_prism,
    make_box,
    make_cone,
    make_random_polytope,
    make_spherical_cylinder,
    schwarz_box_radius,
)
from .property_harness import (
    HarnessConfig,
    PropertyReport,
    canonical_dims,
    default_symspec,
    expected_row,
    table_report,
)
from .convergence_lab import (
    SubspaceSequence,
    Trajectory,
    ball_distance,
    example_weakdi,
    iterate,
    make_sequence,
)
from .serialize import body_from_dict, body_to_dict, load_body, save_body

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_TOL",
    "ConvexBody",
    "HPolytope",
    "RevolutionProfile",
    "Subspace",
    "SupportSample",
    "SymSpec",
    "ToleranceConfig",
    "VPolytope",
    "apply_sym",
    "ball_v1",
    "blaschke2d",
    "central",
    "central_p",
    "circumradius",
    "contains",
    "convex_hull",
    "direction_grid",
    "fiber",
    "hausdorff_distance",
    "inclusion_margin",
    "inner_rotational",
    "intersect_halfspaces",
    "intrinsic_volume_1",
    "latlong_grid",
    "m_symmetrization",
    "minkowski",
    "minkowski_blaschke",
    "minkowski_sum",
    "outer_rotational",
    "project",
    "reflect",
    "sample_body",
    "sample_to_polytope",
    "schwarz",
    "steiner",
    "steiner_point",
    "support",
    "support_batch",
    "translate",
    "unit_ball_volume",
    "vexlast",
    "volume",
    "CapExceeded",
    "Degenerate",
    "Empty",
    "EmptyInput",
    "InvalidInput",
    "InvalidM",
    "InvalidSubspace",
    "OriginNotInside",
    "SymkitError",
    "Unbounded",
    "Unsupported",
    "HarnessConfig",
    "PropertyReport",
    "SubspaceSequence",
    "Trajectory",
    "ball_distance",
    "blaschke_cone",
    "blaschke_prism",
    "body_from_dict",
    "body_to_dict",
    "canonical_dims",
    "default_symspec",
    "example_weakdi",
    "expected_row",
    "iterate",
    "load_body",
    "make_box",
    "make_cone",
    "make_random_polytope",
    "make_sequence",
    "make_spherical_cylinder",
    "save_body",
    "schwarz_box_radius",
    "table_report",
    "__version__",
]
