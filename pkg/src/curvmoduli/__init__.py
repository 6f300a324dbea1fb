"""Convex-body calculus, intrinsic surface metrics, certified metric
approximations, and parametrized moduli of nonnegatively curved structures."""

__version__ = "0.1.0"

from .errors import GeometryError, HypothesisError
from .bodies import (
    ConvexBody,
    Subspace,
    hull_reduce,
    dimension,
    steiner_point,
    hausdorff_distance,
    minkowski_combine,
    reflect,
    symmetrize,
    central_project,
    ortho_project,
    gauge_point,
    gauge_inclusion_eps,
    is_point_symmetric,
    is_reflection_symmetric,
    contract_to_ball,
    body_to_json,
    body_from_json,
)
from .surfaces import (
    MetricSample,
    check_metric_sample,
    boundary_metric,
    double_metric,
    segment_sample,
    flat_sample,
    realize_sphere,
    realize_disc,
    sheet_swap,
    sheet_swap_permutation,
)
from .gh import (
    Correspondence,
    distortion,
    roundtrip_defects,
    compose,
    GroupAction,
    trivial_action,
    antipodal_action,
    sheet_swap_action,
    equivariance_defect,
    DiscreteMeasure,
    prokhorov_distance,
    eq_mgh_check,
)
from .approx import (
    Certificate,
    nearest_node_correspondence,
    approx_boundaries,
    approx_flatten,
    approx_to_segment,
    approx_doubles,
    approx_segments,
    collapse_bound,
)
from .sampling import (
    icosahedron,
    icosphere,
    centered,
    random_polytope,
    random_polygon,
    regular_polygon,
    random_segment,
    slab,
    cube,
    trimmed_cube,
)
from .moduli import (
    ConcaveDensity,
    cd_density_check,
    cstar_distance,
    cstar_quotient_distance,
    interval_contract,
    LatticeBasis,
    lattice_reduce,
    FlatStructure,
    flat_quotient_distance,
    structure_invariants,
)
from .classify import canonical_name, admissible, classify, table_json
