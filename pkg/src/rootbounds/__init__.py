"""Root bounds for sparse polynomial systems over p-adic and number fields.

Exact rational geometry (hulls, mixed volumes, lifted Newton polytopes)
feeds explicit closed-form bounds on isolated torus roots, and independent
brute-force oracles verify the bounds at desk scale.
"""

from .arith import (
    ExtendedValuation,
    Interval,
    Rational,
    UpperReal,
    euler_ratio,
    eval_up,
    log_base,
    natural_log,
    ord_p,
    set_precision,
)
from .binomials import (
    BinomialExpansion,
    LcmProfile,
    expansion_coeffs,
    gen_binomial,
    lcm_profile,
)
from .bounds import (
    BoundReport,
    FieldSpec,
    affine_bound,
    cp_bound,
    cp_bound_per_equation,
    global_bound,
    global_facet_sum_bound,
    local_bound,
    local_facet_bound,
    log_inequality_check,
    valuation_vector_cap,
)
from .newton import (
    ScaledSimplex,
    SparsePolynomial,
    SparseSystem,
    candidate_valuations,
    containment_check,
    containment_report,
    facet_count,
    newton_polytope,
    shift_polynomial,
    shift_system,
    system_polytope,
    valuation_face_bound,
)
from .oracle import (
    IntegerMatrix,
    OracleConfig,
    RootCount,
    count_binomial_system,
    count_univariate_padic,
    product_system,
    product_system_root_count,
    rational_root_search,
    reduce_to_square,
    smith_normal_form,
)
from .polyhedra import (
    FacetNormal,
    Polytope,
    convex_hull,
    edge_count,
    edges,
    face,
    lower_facets,
    minkowski_sum,
    mixed_volume,
    project_pi,
    volume,
)

__version__ = "0.1.0"
