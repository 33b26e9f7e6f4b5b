"""Goldman brackets and stacked-diagram star products of Wilson loops on
curve diagrams, with an exact truncated series ring and a matrix-holonomy
numeric oracle."""

from .coeff import (
    DEFAULT_ORDER,
    CrossingCoeffs,
    GroupSpec,
    SeriesCoeff,
    closed_crossing_values,
    crossing_coeffs,
    derived_generator,
    eval_at,
    exp_generator,
    kauffman_coeffs,
    series_hyperbolic,
)
from .diagram import (
    Arc,
    CrossingPoint,
    Curve,
    Diagram,
    DiagramError,
    FormalSum,
    Loop,
    Monomial,
    TransversalityError,
    canonical,
    canonicalize,
    formal_sum_from_json,
    formal_sum_to_json,
    monomial,
    parse_diagram,
    render_diagram,
    reverse,
)
from .goldman import bracket_gln, bracket_loops, bracket_poly, bracket_sl2
from .holonomy import (
    HolonomyAssignment,
    eval_formal,
    eval_monomial,
    eval_wilson,
    lattice_derivative_check,
    lie_basis,
    projection_pi,
    random_assignment,
    sample,
    verify_gram_identity,
)
from .star import (
    assoc_check,
    expect_diagram,
    expect_loops,
    expect_values,
    poisson_limit_check,
    star,
    star_complex,
    star_loops,
    unoriented_kauffman_resolution,
)

__version__ = "0.1.0"
