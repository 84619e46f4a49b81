"""Schatten p-norm geometry of the Birkhoff polytope.

Minimal trace (assignment), bounding-ball radii, Chebyshev center and radius,
Birkhoff decomposition, with brute-force oracles for small dimensions.
"""

__version__ = "0.1.0"

from .assignment import MinTraceResult, min_trace_bruteforce, min_trace_from_radius, min_trace_hungarian
from .birkhoff import (
    BirkhoffDecomposition,
    average_all_permutations,
    birkhoff_decompose,
    khoury_projection,
    sample_convex,
    sample_sinkhorn,
)
from .geometry import (
    alpha_line_norm,
    bounding_ball_radius_enum,
    bounding_ball_radius_s2,
    center_uniqueness_probe,
    chebyshev_radius,
    equidistance_check,
    radius_bounds_s2,
)
from .matrices import (
    CentralForm,
    DoublyStochasticMatrix,
    PermutationMatrix,
    central_form_decompose,
    frobenius_inner,
    jn,
    make_doubly_stochastic,
    matrix_product,
    permutation_product,
    transpose,
)
from .spectral import frobenius_norm, schatten_norm, singular_values, von_neumann_gap
