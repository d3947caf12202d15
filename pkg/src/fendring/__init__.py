"""Finitary endomorphism rings over division rings, with exact arithmetic.

Builds the rings V (x)_D Pi of maps spanned by rank-one transvections, checks
algebra maps between them, and recovers the conjugating isomorphism of an
algebra isomorphism.
"""

from .errors import FendError
from .exactalg import (
    Matrix, RingDescriptor, Scalar, central_generating_set, left_dependency, mat_inverse,
    mat_mul, mat_rank, right_dependency, scalar_inverse,
)
from .transring import (
    DualSystem, RingElement, Transvection, check_ring_axioms, is_total, nonzero_trace_element,
    re_as_endomorphism, re_multiply, re_trace, transvection_to_element,
)
from .baermap import (
    Conjugator, SandwichMap, construct_conjugation, direct_sum_conjugations, orthogonality_check,
    recover_conjugator, sm_apply, sm_is_bijective, sm_is_homomorphism, sm_minimize,
    trace_scaling_factor,
)
from .oracle import ScanConfig, exhaustive_isomorphism_scan, random_instance

__version__ = "0.1.0"
