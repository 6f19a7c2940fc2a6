"""Bigeometric calculus: geometric arithmetic, bigeometric derivatives,
Cesàro difference sequence spaces, matrix maps and Hermite interpolation."""

from .core import (
    DEFAULT_TOL,
    ONE,
    ZERO,
    GeoReal,
    as_geo,
    gabs,
    gadd,
    gdiv,
    gmetric,
    gmul,
    gneg,
    gpow,
    gprod,
    gsub,
    gsum,
)
from .deriv import BUILTINS, RealFunction, dg, dg_from_classical, dg_numeric
from .diff import GeoSequence, cesaro_mean_partial, delta_m, telescoped_partial
from .errors import (
    BigeoError,
    DegenerateNodes,
    DimensionMismatch,
    DivisionByGeometricZero,
    DomainError,
    EvaluationError,
    IndexOutOfRange,
    InvalidP,
    ParseError,
)
from .hermite import (
    BigeoPolynomial,
    DividedDiffTable,
    HermiteData,
    classical_hermite_oracle,
    divided_diff_table,
    eval_lagrange,
    eval_newton,
    interpolate,
    lagrange_H,
    lagrange_T,
    newton_coeffs,
)
from .matrix import GeoMatrix, apply_row, build_B, transform_consistency
from .spaces import (
    GrowthDiagnostic,
    NormReport,
    dual_partial_sum,
    lemma_diag_sequences,
    membership_diagnostic,
    norm_inf,
    norm_p,
    upsilon_project,
)

__version__ = "0.1.0"
