"""Exact bounds on the Bayes misclassification probability.

For a finite-class, finite-observation joint model this package computes
the Bayes error exactly, together with sharp lower/upper bounds driven by
the pairwise total-variation separation of the classes and by conditional
entropy (Feder-Merhav), the extremal posterior profiles attaining the
separation bounds, and brute-force oracles certifying all of it.
"""

from .bayes import (
    Classifier,
    bayes_classifier,
    bayes_error,
    brute_force_bayes_error,
    classifier_error,
)
from .entropy import (
    CounterexampleReport,
    EntropyValue,
    RenyiValue,
    conditional_entropy,
    entropy_of_profile,
    ep_counterexample_check,
    lower_fm,
    phi,
    renyi_conditional_entropy,
    upper_fm,
)
from .errors import (
    BadBetaError,
    BadParamError,
    BadPermutationError,
    BadWeightsError,
    EntropyOutOfRangeError,
    InvariantViolationError,
    LengthMismatchError,
    MassNotOneError,
    MisboundsError,
    NegativeEntropyError,
    NegativeEntryError,
    OutOfDomainError,
    OutOfRangeError,
    ParseError,
    TooFewClassesError,
    TooLargeError,
    ZeroMarginalError,
)
from .families import (
    DomainWarning,
    binomial_profile,
    comp_hi_profile,
    comp_hi_stats,
    comp_lo_profile,
    exponential_profile,
    from_spec,
    pure_model,
    qpsk_q,
    three_class_profile,
)
from .model import (
    JointModel,
    PosteriorProfile,
    load_model,
    marginal,
    posterior,
    save_model,
    validate_joint,
    validate_profile,
)
from .report import (
    BoundsReport,
    CompareHiScan,
    compare_hi_scan,
    compare_lo_rows,
    d_lower_margin,
    fig1_rows,
    fig2_rows,
    fig3_rows,
    run_verify,
)
from .tv_bounds import (
    DeltaValue,
    OracleReport,
    delta,
    delta_of_profile,
    extremal_high_profile,
    extremal_low_profile,
    lower_bound,
    simplex_grid_oracle,
    upper_bound,
    upper_bound_simpl,
)

__version__ = "0.1.0"

__all__ = [
    "BadBetaError",
    "BadParamError",
    "BadPermutationError",
    "BadWeightsError",
    "BoundsReport",
    "Classifier",
    "CompareHiScan",
    "CounterexampleReport",
    "DeltaValue",
    "DomainWarning",
    "EntropyOutOfRangeError",
    "EntropyValue",
    "InvariantViolationError",
    "JointModel",
    "LengthMismatchError",
    "MassNotOneError",
    "MisboundsError",
    "NegativeEntropyError",
    "NegativeEntryError",
    "OracleReport",
    "OutOfDomainError",
    "OutOfRangeError",
    "ParseError",
    "PosteriorProfile",
    "RenyiValue",
    "TooFewClassesError",
    "TooLargeError",
    "ZeroMarginalError",
    "bayes_classifier",
    "bayes_error",
    "binomial_profile",
    "brute_force_bayes_error",
    "classifier_error",
    "comp_hi_profile",
    "comp_hi_stats",
    "comp_lo_profile",
    "compare_hi_scan",
    "compare_lo_rows",
    "conditional_entropy",
    "d_lower_margin",
    "delta",
    "delta_of_profile",
    "entropy_of_profile",
    "ep_counterexample_check",
    "exponential_profile",
    "extremal_high_profile",
    "extremal_low_profile",
    "fig1_rows",
    "fig2_rows",
    "fig3_rows",
    "from_spec",
    "load_model",
    "lower_bound",
    "lower_fm",
    "marginal",
    "phi",
    "posterior",
    "pure_model",
    "qpsk_q",
    "renyi_conditional_entropy",
    "run_verify",
    "save_model",
    "simplex_grid_oracle",
    "three_class_profile",
    "upper_bound",
    "upper_bound_simpl",
    "upper_fm",
    "validate_joint",
    "validate_profile",
]
