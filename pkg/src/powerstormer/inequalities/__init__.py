"""Inequality checkers, the projection-shift construction and the Chernoff minimization."""

from powerstormer.inequalities.checks import (PairAnalysis, check_eig_dominance,
                                              check_loewner_upper, check_minus_part,
                                              check_operator_norm, check_part_norms,
                                              check_trace, trace_distance)
from powerstormer.inequalities.chernoff import (ChernoffResult, GoldenSectionResult,
                                                chernoff_exponent, golden_section)
from powerstormer.inequalities.projection import (ProjectionShiftResult,
                                                  general_singular_values,
                                                  lift_to_positive_definite,
                                                  projection_shift)
from powerstormer.inequalities.report import (ALL_CHECKS, NORM_CHECKS, InequalityId,
                                              SlackReport, make_report)

__all__ = [
    "ALL_CHECKS",
    "NORM_CHECKS",
    "InequalityId",
    "SlackReport",
    "make_report",
    "PairAnalysis",
    "check_eig_dominance",
    "check_trace",
    "check_part_norms",
    "check_operator_norm",
    "check_loewner_upper",
    "check_minus_part",
    "trace_distance",
    "ProjectionShiftResult",
    "projection_shift",
    "general_singular_values",
    "lift_to_positive_definite",
    "ChernoffResult",
    "GoldenSectionResult",
    "chernoff_exponent",
    "golden_section",
]
