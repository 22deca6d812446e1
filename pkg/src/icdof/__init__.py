"""Exact-arithmetic degrees-of-freedom bounds for constant K-user
interference channels, with the supporting pieces usable on their own:
a rational multivariate scalar ring, exact discrete distributions with
entropies, the monomial-family independence checker, information-dimension
formulas for self-similar distributions, and a sumset/entropy-inequality
toolbox.
"""

from .bounds import (
    NON_EXCEPTIONAL_CAVEAT,
    BoundReport,
    hlambda_bound,
    integer_example_bound,
    nonasymptotic_floor,
    prop1_bound,
    theorem1_certified_bound,
    theorem3_ratio,
)
from .channel import (
    ChannelMatrix,
    ConditionStarReport,
    MonomialBasis,
    Witness,
    WitnessTerm,
    basis_values,
    build_wn,
    channel_from_json,
    channel_to_json,
    check_condition_star,
    enumerate_monomials,
    evaluate_monomial,
    is_fully_connected,
    off_diagonal_name,
    phi,
    verify_witness,
)
from .dist import (
    DEFAULT_ATOM_BUDGET,
    DiscreteDist,
    convolve,
    dist_from_json,
    dist_to_json,
    entropy_bits,
    linear_combination,
    parse_probability,
    point_mass,
    scale,
    sorted_items,
    support_set,
    uniform_on,
)
from .errors import (
    BudgetExceededError,
    ConditionStarViolationError,
    IcdofError,
    NotRationalError,
    ParseError,
    ValidationError,
)
from .infodim import (
    IFSSpec,
    empirical_infodim,
    ifs_from_json,
    ifs_to_json,
    infodim_formula,
    log2_inverse_contraction,
    recommended_quantization,
    truncated_dist,
)
from .linalg import kernel_basis, primitive_integer_vector
from .optimize import (
    OptConfig,
    OptResult,
    integer_grid,
    optimize_hlambda,
    optimize_theorem3,
    prop4_dist,
)
from .scalar import ExactScalar, as_scalar, parse_rational, parse_scalar
from .sumsets import (
    InequalityReport,
    check_trivial_bounds,
    entropy_inequality_suite,
    finite_set,
    is_arithmetic_progression,
    set_from_json,
    set_to_json,
    sumset,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BudgetExceededError",
    "ChannelMatrix",
    "ConditionStarReport",
    "ConditionStarViolationError",
    "DEFAULT_ATOM_BUDGET",
    "DiscreteDist",
    "ExactScalar",
    "IFSSpec",
    "IcdofError",
    "InequalityReport",
    "MonomialBasis",
    "NON_EXCEPTIONAL_CAVEAT",
    "NotRationalError",
    "OptConfig",
    "OptResult",
    "ParseError",
    "ValidationError",
    "Witness",
    "WitnessTerm",
    "as_scalar",
    "basis_values",
    "build_wn",
    "channel_from_json",
    "channel_to_json",
    "check_condition_star",
    "check_trivial_bounds",
    "convolve",
    "dist_from_json",
    "dist_to_json",
    "empirical_infodim",
    "entropy_bits",
    "entropy_inequality_suite",
    "enumerate_monomials",
    "evaluate_monomial",
    "finite_set",
    "hlambda_bound",
    "ifs_from_json",
    "ifs_to_json",
    "infodim_formula",
    "integer_example_bound",
    "integer_grid",
    "is_arithmetic_progression",
    "is_fully_connected",
    "kernel_basis",
    "linear_combination",
    "log2_inverse_contraction",
    "nonasymptotic_floor",
    "off_diagonal_name",
    "optimize_hlambda",
    "optimize_theorem3",
    "parse_probability",
    "parse_rational",
    "parse_scalar",
    "phi",
    "point_mass",
    "primitive_integer_vector",
    "prop1_bound",
    "prop4_dist",
    "recommended_quantization",
    "scale",
    "set_from_json",
    "set_to_json",
    "sorted_items",
    "sumset",
    "support_set",
    "theorem1_certified_bound",
    "theorem3_ratio",
    "truncated_dist",
    "uniform_on",
    "verify_witness",
]
