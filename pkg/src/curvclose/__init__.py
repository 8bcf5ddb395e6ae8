"""Closure constants of stability-based curvature estimates.

The library evaluates the explicit constants of the integral curvature
estimate for stable minimal hypersurfaces (classical and product-splitting
terminal absorption routes), extends them to strongly stable
constant-mean-curvature hypersurfaces with the mean-curvature-scale
threshold, generalizes every fixed absorption parameter into a free one and
optimizes it, and certifies the sign and comparison claims with sound
interval arithmetic.
"""

from .certify import (
    Certificate,
    ClaimStatus,
    ParameterBox,
    certify_less,
    certify_named_claim,
    certify_positive,
    interval_eval,
    isolate_root,
    registered_functions,
)
from .cmc import (
    CmcConstantBundle,
    CmcScale,
    LocalEstimate,
    Regime,
    b0_cmc,
    b0_raw,
    c0_cmc,
    cal_constants,
    closure_coefficients,
    cmc_bundle,
    delta_param,
    local_estimate,
    threshold_radius,
)
from .epsilons import (
    CmcEpsilons,
    OptimizationResult,
    Target,
    YoungEpsilons,
    c1_general,
    c3_general,
    c_holder_general,
    cmc_general,
    optimize,
    canonical_cmc_epsilons,
    canonical_young_epsilons,
    young_terminal_general,
)
from .errors import DomainError, FeasibilityError, PreconditionError
from .interval import Interval
from .minimal import (
    ConstantBundle,
    c1_shared,
    c3_holder,
    c3_young,
    c_holder,
    c_young,
    constant_bundle,
    crossover_q,
    f_bound,
    g_log,
    g_prime,
    ratio_root,
)
from .params import (
    ParamPoint,
    QInterval,
    StructuralCoefficients,
    admissible_q_domain,
    bernstein_range,
    d_factor,
    decay_exponent,
    quadratic_aux,
    stability_gap,
    structural_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ClaimStatus",
    "CmcConstantBundle",
    "CmcEpsilons",
    "CmcScale",
    "ConstantBundle",
    "DomainError",
    "FeasibilityError",
    "Interval",
    "LocalEstimate",
    "OptimizationResult",
    "ParamPoint",
    "ParameterBox",
    "PreconditionError",
    "QInterval",
    "Regime",
    "StructuralCoefficients",
    "Target",
    "YoungEpsilons",
    "admissible_q_domain",
    "b0_cmc",
    "b0_raw",
    "bernstein_range",
    "c0_cmc",
    "c1_general",
    "c1_shared",
    "c3_general",
    "c3_holder",
    "c3_young",
    "c_holder",
    "c_holder_general",
    "c_young",
    "cal_constants",
    "certify_less",
    "certify_named_claim",
    "certify_positive",
    "closure_coefficients",
    "cmc_bundle",
    "cmc_general",
    "constant_bundle",
    "crossover_q",
    "d_factor",
    "decay_exponent",
    "delta_param",
    "f_bound",
    "g_log",
    "g_prime",
    "interval_eval",
    "isolate_root",
    "local_estimate",
    "optimize",
    "canonical_cmc_epsilons",
    "canonical_young_epsilons",
    "quadratic_aux",
    "ratio_root",
    "registered_functions",
    "stability_gap",
    "structural_coefficients",
    "threshold_radius",
    "young_terminal_general",
]
