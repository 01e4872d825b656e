"""Rigorous enclosures for Gamma, chi, theta, zeta, R and Hardy's Z.

Everything is computed in outward-rounded ball arithmetic over MPFR, so a
returned enclosure always contains the true value; the registry module turns
each explicit inequality these functions satisfy into a machine-checkable
bound case verified by deterministic region sweeps.
"""

from .balls import (
    BoundaryStraddle,
    ComplexBall,
    Containment,
    DomainError,
    PoleError,
    Precision,
    RealBall,
    Region,
    ball_contains,
    get_precision,
    precision,
    region_contains,
)
from .chitheta import (
    ChiValue,
    TaggedBound,
    ThetaValue,
    chi,
    chi_abs,
    chi_upper_bound,
    log_chi,
    theta,
    theta_asymptotic,
    theta_growth_bound,
)
from .gammafn import (
    MuResult,
    StirlingParams,
    bernoulli,
    gamma_abs,
    gamma_magnitude_bounds,
    log_gamma,
    stirling_mu,
)
from .registry import (
    BoundCase,
    UnknownBoundError,
    VerificationReport,
    get_case,
    registry,
    report_csv,
    report_json,
    sample_region,
    verify_bound,
)
from .rs import (
    F,
    F_derivatives,
    R_eval,
    R_left_eval,
    R_region_bound,
    RSTerms,
    R_minus_one_bound,
    Z_eval,
    ZValue,
    rs_correction,
    rs_terms,
    zeta_via_R,
)
from .zetafn import (
    ZetaTail,
    partial_sum,
    zeta_eval,
    zeta_minus_partial_sum,
    zeta_region_bound,
    zeta_tail_bound,
)

__version__ = "0.1.0"
