"""Certified additive combinatorics of c-th powers.

Counting engine for the additive energy and sumset of {1^c, ..., N^c} with
sound ball arithmetic, exact rational-exponent reductions, log-space bound
calculus with lazy towers, digit-by-digit constructions of well-approximable
exponents, dissociativity and nonvanishing certificates, and the exponential
sums built on the certified representation profile.
"""

from .realcore import (
    INITIAL_PRECISION,
    MAX_PRECISION,
    AlgebraicLogExponent,
    BallDomainError,
    CompareVerdict,
    DigitSequenceExponent,
    Exponent,
    NumericBallExponent,
    RationalExponent,
    RealBall,
    TailUnbounded,
    UnresolvedComparison,
    compare_sums,
    fraction_ball_exponent,
    pi_fraction_exponent,
    power_ball,
    rational_exponent,
    sqrt_ball_exponent,
)
from .energy import (
    DegenerateConstruction,
    EnergyReport,
    NoAdmissibleRoot,
    SporadicSolution,
    additive_energy,
    brute_force_energy,
    construct_sporadic,
    construct_three_ap,
    solution_exponent_bound,
    sumset_size,
)
from .rational import (
    ClassificationViolation,
    NegativeClassification,
    PartialSumResult,
    ReductionWitness,
    classify_negative,
    divisor_second_moment,
    integer_energy_nontrivial,
    partial_sum,
    rational_asymptotic_report,
    reduce_rational_count,
    reduction_witness,
    surd_brute_force_count,
    zeta_ball,
)
from .magnitude import LogMagnitude, Tower, TowerOverflow
from .dissociation import (
    Certificate,
    DepthExceeded,
    LinearForm,
    MultiplicativeIndependence,
    alpha_lower_log,
    baker_wustholz_log,
    c0_log,
    check_dissociated,
    digit_positions,
    digit_query,
    feldman_log_bound,
    multiplicative_independence,
    prime_corollary_log,
    psi_log,
    rational_threshold_log,
    recheck_certificate,
    verify_nonvanishing,
)
from .expsum import (
    ComplexBall,
    FourthMomentReport,
    LargeValuesResult,
    ParsevalResult,
    RepCountProfile,
    exp_sum_D,
    fourth_moment_report,
    large_values_count,
    large_values_sweep,
    parseval_check,
    rep_count_profile,
    window_pair_count,
)

__version__ = "0.1.0"
