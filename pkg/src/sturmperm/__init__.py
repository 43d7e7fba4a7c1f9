"""Sturmian words and infinite permutations of low maximal pattern complexity."""

from .errors import (
    DegenerateParameters,
    EmptyInterval,
    Inconclusive,
    InsufficientEvidence,
    InvalidGaps,
    LatticeHit,
    PreconditionError,
    RationalSlope,
    ThresholdViolation,
    WindowTooWide,
)
from .exact import ExactParseError, ExactReal, MixedRadicand, compare, exact, floor, frac, sign
from .perms import (
    PermutationPrefix,
    build_from_word,
    detect_permutation_period,
    factor_complexity,
    fractional_orbit,
    gamma,
    gamma_ap,
    gamma_row,
    low_complexity_example,
    max_pattern_complexity_bounded,
    pattern_complexity,
    periodic_example,
    restrict_arithmetic,
    shift,
    t_factor,
)
from .structure import (
    SuiteConfig,
    are_adjusted,
    classify_gamma,
    find_lemma4_window,
    lemma2_check,
    reconstruct,
    sm_partition,
    theorem_suite,
    verify_claim6,
    verify_closure,
    verify_q_identity,
    verify_reconstruction,
)
from .window import Window, iter_windows
from .words import (
    CirclePartition,
    classify_word,
    detect_word_period,
    is_balanced,
    mechanical_word,
    rotation_word,
    subword_complexity,
    weight,
    word_max_pattern_complexity_bounded,
    word_pattern_complexity,
)

__version__ = "0.1.0"
