"""Geometric sequences and the forward difference operators on them.

Sequences are 1-indexed.  ``Δ_G x_k = x_k ⊖ x_{k+1}`` and higher orders
are iterated, which in log domain is the classical forward difference of
``ln x_k`` with the sign convention ``Σ (-1)^v C(m, v) ln x_{k+v}``.
"""
from __future__ import annotations

import math
from typing import Callable, Optional, Sequence

import numpy as np

from .core import GeoReal, gsub
from .errors import DomainError, IndexOutOfRange

MAX_ORDER = 60


class GeoSequence:
    """Finite prefix ``x_1..x_N`` of a geometric sequence.

    Terms are held as a float array of logs.  ``generator`` is the optional
    closed-form rule ``k -> ln x_k`` the prefix was materialized from.
    """

    def __init__(self, logs: Sequence[float],
                 generator: Optional[Callable[[int], float]] = None):
        arr = np.array(logs, dtype=float).reshape(-1)
        if arr.size == 0:
            raise IndexOutOfRange("a geometric sequence needs at least one term")
        if not np.all(np.isfinite(arr)):
            raise DomainError("sequence logs must be finite")
        arr.setflags(write=False)
        self._logs = arr
        self.generator = generator

    @classmethod
    def from_generator(cls, generator: Callable[[int], float], length: int):
        return cls([generator(k) for k in range(1, length + 1)], generator)

    @classmethod
    def from_reals(cls, values: Sequence[float]):
        vals = np.asarray(values, dtype=float)
        if np.any(~(vals > 0)):
            raise DomainError("geometric sequence terms must be positive")
        return cls(np.log(vals))

    @classmethod
    def from_geo(cls, terms: Sequence[GeoReal]):
        return cls([t.log_value for t in terms])

    @classmethod
    def ones(cls, length: int):
        return cls(np.zeros(length))

    @property
    def logs(self) -> np.ndarray:
        return self._logs

    def __len__(self):
        return self._logs.size

    def __getitem__(self, k: int) -> GeoReal:
        if not 1 <= k <= len(self):
            raise IndexOutOfRange(f"index {k} outside 1..{len(self)}")
        return GeoReal(self._logs[k - 1])

    def terms(self) -> list[GeoReal]:
        return [GeoReal(t) for t in self._logs]

    def extend(self, length: int) -> "GeoSequence":
        """Materialize a longer prefix from the generator."""
        if self.generator is None:
            raise IndexOutOfRange("sequence has no generator to extend from")
        return GeoSequence.from_generator(self.generator, length)

    # linear-space operations of w(G)
    def oplus(self, other: "GeoSequence") -> "GeoSequence":
        n = min(len(self), len(other))
        return GeoSequence(self._logs[:n] + other._logs[:n])

    def scale(self, a: GeoReal) -> "GeoSequence":
        """Scalar geometric multiple ``a ⊙ x``."""
        return GeoSequence(a.log_value * self._logs)

    def __repr__(self):
        head = ", ".join(f"e^{t:.6g}" for t in self._logs[:5])
        more = ", ..." if len(self) > 5 else ""
        return f"GeoSequence([{head}{more}], N={len(self)})"


def difference_weights(m: int) -> list[int]:
    """Exact weights ``(-1)^v C(m, v)`` of the order-m forward difference."""
    if m < 0:
        raise DomainError(f"difference order must be non-negative, got {m}")
    if m > MAX_ORDER:
        raise DomainError(f"difference order {m} exceeds the supported {MAX_ORDER}")
    return [(-1) ** v * math.comb(m, v) for v in range(m + 1)]


def _delta_log(logs: np.ndarray, m: int, k: int) -> float:
    w = difference_weights(m)
    window = logs[k - 1:k + m]
    return math.fsum(c * float(t) for c, t in zip(w, window))


def _check_window(x: GeoSequence, m: int, k: int):
    if k < 1 or k + m > len(x):
        raise IndexOutOfRange(
            f"Δ^{m} at k={k} needs terms up to {k + m}, sequence has {len(x)}")


def delta_m(x: GeoSequence, m: int, k: int) -> GeoReal:
    """``Δ_G^m x_k`` via the binomial formula."""
    difference_weights(m)
    _check_window(x, m, k)
    return GeoReal(_delta_log(x.logs, m, k))


def delta_m_logs(x: GeoSequence, m: int, count: Optional[int] = None) -> np.ndarray:
    """Logs of ``Δ_G^m x_k`` for ``k = 1..count`` (default: all available)."""
    avail = len(x) - m
    if count is None:
        count = avail
    if count > avail or count < 0:
        raise IndexOutOfRange(f"Δ^{m} for k<= {count} needs {count + m} terms, have {len(x)}")
    return np.array([_delta_log(x.logs, m, k) for k in range(1, count + 1)])


def cesaro_mean_logs(x: GeoSequence, m: int, N: int) -> np.ndarray:
    """Logs of ``(e ⊘ e^n) ⊙ G-sum_{k<=n} Δ_G^m x_k`` for ``n = 1..N``."""
    if N < 1:
        raise IndexOutOfRange(f"truncation must be at least 1, got {N}")
    d = delta_m_logs(x, m, N)
    out = np.empty(N)
    for n in range(1, N + 1):
        out[n - 1] = math.fsum(d[:n]) / n
    return out


def cesaro_mean_partial(x: GeoSequence, m: int, n: int) -> GeoReal:
    if n < 1:
        raise IndexOutOfRange(f"n must be at least 1, got {n}")
    difference_weights(m)
    if n + m > len(x):
        raise IndexOutOfRange(f"Cesàro mean at n={n} needs {n + m} terms, have {len(x)}")
    d = delta_m_logs(x, m, n)
    return GeoReal(math.fsum(d) / n)


def telescoped_partial(x: GeoSequence, m: int, n: int) -> GeoReal:
    """``G-sum_{k=1..n} Δ_G^m x_k`` collapsed to ``Δ^{m-1} x_1 ⊖ Δ^{m-1} x_{n+1}``."""
    if m < 1:
        raise DomainError(f"order must be positive, got {m}")
    if n < 1 or n + m > len(x):
        raise IndexOutOfRange(f"telescoping to n={n} needs {n + m} terms, have {len(x)}")
    return gsub(delta_m(x, m - 1, 1), delta_m(x, m - 1, n + 1))
