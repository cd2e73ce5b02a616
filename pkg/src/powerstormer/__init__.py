"""PowerStormer - Hermitian matrix analysis and verification of Powers-Stormer type inequalities.

This package provides:

- Dense Hermitian matrices with a Jacobi eigensolver and functional calculus
- Jordan decomposition, ``A + B - |A - B|`` and the common lower bound ``min{A, B}``
- Unitarily invariant norms and weak majorization
- Checkers for the trace, norm, eigenvalue and Loewner-order forms of the inequality
- Seeded random ensembles and a reproducible verification harness

Basic usage:
```python
from powerstormer import HermitianMatrix, InequalityId, PairAnalysis, ToleranceModel

a = HermitianMatrix([[2, 1j], [-1j, 1]])
b = HermitianMatrix([[1, 0], [0, 3]])

analysis = PairAnalysis(a, b, ToleranceModel(rel=1e-8))
for report in analysis.evaluate(0.5, list(InequalityId)):
    print(report.inequality_id.value, report.worst_slack, report.passed)
```

Campaigns are driven from the ``powerstormer`` command or ``run_suite``:
```python
from powerstormer import TrialConfig, run_suite

report = run_suite(TrialConfig.build(dims=[2, 3], trials_per_dim=20))
assert report.passed
```
"""

from powerstormer.decomp import (JordanPair, ParallelMinResult, Pivot, abs_hermitian,
                                 jordan_decompose, parallel_min, singular_values,
                                 sum_minus_abs)
from powerstormer.exceptions import (ConfigError, ConvergenceError, InvalidInput,
                                     NearSingularA, NotPSD, PowerStormerError, ReportIOError)
from powerstormer.harness import (SuiteReport, TrialConfig, TrialDescriptor, replay,
                                  run_suite)
from powerstormer.inequalities import (InequalityId, PairAnalysis, SlackReport,
                                       chernoff_exponent, projection_shift)
from powerstormer.linalg import HermitianMatrix, eig_hermitian, matrix_function
from powerstormer.norms import NormSpec, norm, weakly_majorized
from powerstormer.tolerance import ToleranceModel

__version__ = "0.1.0"

__all__ = [
    "HermitianMatrix",
    "eig_hermitian",
    "matrix_function",
    "ToleranceModel",
    "JordanPair",
    "ParallelMinResult",
    "Pivot",
    "abs_hermitian",
    "jordan_decompose",
    "parallel_min",
    "singular_values",
    "sum_minus_abs",
    "NormSpec",
    "norm",
    "weakly_majorized",
    "InequalityId",
    "PairAnalysis",
    "SlackReport",
    "chernoff_exponent",
    "projection_shift",
    "TrialConfig",
    "TrialDescriptor",
    "SuiteReport",
    "run_suite",
    "replay",
    "PowerStormerError",
    "InvalidInput",
    "NotPSD",
    "NearSingularA",
    "ConvergenceError",
    "ConfigError",
    "ReportIOError",
]
