"""Truncated norms and finite-prefix diagnostics for the bigeometric
Cesàro difference spaces ``C_p^G(Δ_G^m)`` and ``C_∞^G(Δ_G^m)``.

Membership in these spaces is a statement about infinite sums and
suprema; nothing here decides it.  The diagnostics report partial log-sums
over a finite prefix together with a slope fit and a heuristic label.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import GeoReal, gabs, gadd, gmul, gpow
from .diff import GeoSequence, cesaro_mean_logs, delta_m_logs
from .errors import DomainError, IndexOutOfRange, InvalidP

DEFAULT_TRUNCATION = 200

CONVERGENT = "convergent-like"
LINEAR = "linear-divergent"
SUPERLINEAR = "superlinear-divergent"
INCONCLUSIVE = "inconclusive"

# classification thresholds
SLOPE_FLOOR = 1e-3
LINEAR_SPREAD = 0.10
GROWTH_RATIO = 1.10


@dataclass(frozen=True)
class NormReport:
    head_term: GeoReal
    tail_term: GeoReal
    total: GeoReal
    truncation_N: int
    p: float  # math.inf for the sup-norm


@dataclass(frozen=True)
class GrowthDiagnostic:
    partial_log_sums: list  # [(n, log of running G-sum or running sup)]
    fitted_slope: float
    classification: str

    @property
    def final(self) -> GeoReal:
        """Running aggregate at the last materialized index."""
        return GeoReal(self.partial_log_sums[-1][1])


def _lp_log(values: np.ndarray, p: float) -> float:
    """``(Σ |v|^p)^{1/p}`` with the largest entry factored out."""
    a = np.abs(np.asarray(values, dtype=float))
    if a.size == 0:
        return 0.0
    top = float(a.max())
    if top == 0.0:
        return 0.0
    if math.isinf(p):
        return top
    return top * math.fsum((a / top) ** p) ** (1.0 / p)


def _check_p(p: float):
    if not p >= 1:
        raise InvalidP(f"p must lie in [1, inf], got {p}")


def _check_truncation(x: GeoSequence, m: int, N: int):
    if m < 1:
        raise DomainError(f"difference order must be positive, got {m}")
    if N < 1 or N + m > len(x):
        raise IndexOutOfRange(f"truncation N={N} with m={m} needs {N + m} terms, have {len(x)}")


def _head(x: GeoSequence, m: int) -> GeoReal:
    return GeoReal(math.fsum(np.abs(x.logs[:m])))


def norm_p(x: GeoSequence, m: int, p: float, N: int = DEFAULT_TRUNCATION) -> NormReport:
    _check_p(p)
    if math.isinf(p):
        return norm_inf(x, m, N)
    _check_truncation(x, m, N)
    head = _head(x, m)
    tail = GeoReal(_lp_log(cesaro_mean_logs(x, m, N), p))
    return NormReport(head, tail, gadd(head, tail), N, float(p))


def norm_inf(x: GeoSequence, m: int, N: int = DEFAULT_TRUNCATION) -> NormReport:
    _check_truncation(x, m, N)
    head = _head(x, m)
    tail = GeoReal(float(np.max(np.abs(cesaro_mean_logs(x, m, N)))))
    return NormReport(head, tail, gadd(head, tail), N, math.inf)


def _running_fsum(values) -> list[float]:
    out, acc = [], []
    for v in values:
        acc.append(float(v))
        out.append(math.fsum(acc))
    return out


def classify_growth(partial: Sequence[float]) -> tuple[float, str]:
    """Least-squares slope over the last half of ``partial`` and a label.

    slope < SLOPE_FLOOR: convergent-like.  Every increment within
    LINEAR_SPREAD of the slope: linear-divergent.  Mean increment of the
    last quarter exceeding the previous quarter by GROWTH_RATIO:
    superlinear-divergent.  Anything else: inconclusive.
    """
    s = np.asarray(partial, dtype=float)
    N = s.size
    if N < 2:
        return 0.0, INCONCLUSIVE
    start = N // 2 if N >= 4 else 0
    n = np.arange(start + 1, N + 1, dtype=float)
    tail = s[start:]
    slope = float(np.polyfit(n, tail, 1)[0])
    if abs(slope) < SLOPE_FLOOR:
        return slope, CONVERGENT
    inc = np.diff(tail)
    if slope > 0 and np.all(np.abs(inc - slope) <= LINEAR_SPREAD * slope):
        return slope, LINEAR
    if N >= 8:
        q = N // 4
        inc_all = np.diff(s)
        late = inc_all[-q:].mean()
        before = inc_all[-2 * q:-q].mean()
        if before > 0 and late > GROWTH_RATIO * before:
            return slope, SUPERLINEAR
    return slope, INCONCLUSIVE


def _diagnostic(partial: list[float]) -> GrowthDiagnostic:
    slope, label = classify_growth(partial)
    return GrowthDiagnostic(list(enumerate(partial, start=1)), slope, label)


def membership_diagnostic(x: GeoSequence, m: int, p: float = 1.0,
                          N: int = DEFAULT_TRUNCATION) -> GrowthDiagnostic:
    """Finite surrogate for the defining conditions of the two spaces.

    For finite ``p`` the tracked quantity is the log of the running G-sum
    of ``|cesaro mean|_G^{p_G}``; for ``p = inf`` it is the running sup.
    """
    _check_p(p)
    _check_truncation(x, m, N)
    c = np.abs(cesaro_mean_logs(x, m, N))
    if math.isinf(p):
        partial = list(np.maximum.accumulate(c))
    else:
        partial = _running_fsum(c ** p)
    return _diagnostic([float(v) for v in partial])


def upsilon_project(x: GeoSequence, m: int) -> GeoSequence:
    """Replace the first ``m`` terms by the geometric zero."""
    if m < 0 or len(x) < m:
        raise IndexOutOfRange(f"cannot project the first {m} of {len(x)} terms")
    logs = np.array(x.logs)
    logs[:m] = 0.0
    gen = None
    if x.generator is not None:
        inner = x.generator
        gen = lambda k: 0.0 if k <= m else inner(k)  # noqa: E731
    return GeoSequence(logs, gen)


def dual_partial_sum(a: GeoSequence, m: int, N: int = DEFAULT_TRUNCATION) -> GrowthDiagnostic:
    """Running ``G-sum_{k<=n} e^{k^m} ⊙ |a_k|_G`` for the α-dual test set."""
    if m < 1:
        raise DomainError(f"difference order must be positive, got {m}")
    if N < 1 or N > len(a):
        raise IndexOutOfRange(f"truncation N={N} exceeds sequence length {len(a)}")
    k = np.arange(1, N + 1, dtype=float)
    return _diagnostic(_running_fsum(k ** m * np.abs(a.logs[:N])))


def lemma_diag_sequences(x: GeoSequence, m: int, N: int = DEFAULT_TRUNCATION):
    """Per ``k``: ``(e^{1/k} ⊙ |Δ_G^{m-1} x_k|_G, e^{k^-m} ⊙ |x_k|_G)``."""
    _check_truncation(x, m, N)
    d = delta_m_logs(x, m - 1, N)
    out = []
    for k in range(1, N + 1):
        first = GeoReal(abs(d[k - 1]) / k)
        second = GeoReal(abs(x.logs[k - 1]) / k ** m)
        out.append((k, first, second))
    return out


def geometric_lp_norm(terms: Sequence[GeoReal], p: float) -> GeoReal:
    """``(G-sum |a_k|_G^{p_G})^{(1/p)_G}`` for ``p > 0`` (``inf`` allowed)."""
    if not p > 0:
        raise InvalidP(f"p must be positive, got {p}")
    return GeoReal(_lp_log(np.array([t.log_value for t in terms]), p))


def maddox_sides(a: GeoReal, b: GeoReal, p: float) -> tuple[GeoReal, GeoReal]:
    """Both sides of ``|a ⊕ b|_G^{p_G} <= e^{2^{p-1}} ⊙ (|a|_G^{p_G} ⊕ |b|_G^{p_G})``."""
    _check_p(p)
    lhs = gpow(gabs(gadd(a, b)), p)
    rhs = gmul(GeoReal(2 ** (p - 1)), gadd(gpow(gabs(a), p), gpow(gabs(b), p)))
    return lhs, rhs
