"""Exact arithmetic for continued-fraction diagonal functions and
approximation spectra over real quadratic fields."""

__version__ = "0.1.0"

from .cf import (
    CFExpansion,
    ConvergentRecord,
    IdentityReport,
    cf_value,
    check_identities,
    convergents,
    expand,
    format_cf,
    parse_cf,
    purely_periodic_value,
    tail,
)
from .errors import McfError
from .legendre import (
    ADJACENT,
    SKIP,
    GapClass,
    LegendreChain,
    LegendreNode,
    build_chain,
    is_legendre,
)
from .mu import (
    F,
    G,
    MuSegment,
    PeakWitness,
    chain_covering,
    chain_for,
    chain_segments,
    mu_eval,
    omega_contains,
    psi_eval,
    segment_peak,
)
from .oscillation import (
    CrossingReport,
    find_crossings,
    proposition1_check,
    theorem3_precondition,
)
from .spectra import (
    FiniteSpectraProfile,
    SpectraReport,
    class_limits,
    dirichlet_of,
    finite_profile,
    gap_limit_value,
    lambda_of,
    m_of,
    make_alpha_minus,
    make_alpha_plus,
    sample_M,
    spectra_report,
)
from .surd import (
    QuadraticSurd,
    RationalInterval,
    Value,
    approximate,
    compare,
    cross_compare,
    decimal_str,
    parse_value,
    surd_make,
    value_str,
)

__all__ = [name for name in dir() if not name.startswith("_")]
