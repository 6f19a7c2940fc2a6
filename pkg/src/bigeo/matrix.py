"""Finite truncations of infinite matrices over R(G).

``B`` is built with the difference operator running down the rows (index
``n``) for a fixed column ``k``; this is what makes the row transforms
``A_n(x)`` telescope into ``B``'s rows.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .core import GeoReal, gmul, gsum
from .diff import GeoSequence, delta_m_logs, difference_weights
from .errors import DimensionMismatch, DomainError, IndexOutOfRange


class GeoMatrix:
    """``R x K`` matrix of geometric reals, stored as a float array of logs."""

    def __init__(self, logs):
        arr = np.array(logs, dtype=float)
        if arr.ndim != 2 or arr.size == 0:
            raise DimensionMismatch(f"expected a non-empty 2-D array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("matrix logs must be finite")
        arr.setflags(write=False)
        self._logs = arr

    @classmethod
    def from_reals(cls, values):
        vals = np.asarray(values, dtype=float)
        if np.any(~(vals > 0)):
            raise DomainError("matrix entries must be positive")
        return cls(np.log(vals))

    @property
    def logs(self) -> np.ndarray:
        return self._logs

    @property
    def shape(self) -> tuple[int, int]:
        return self._logs.shape

    @property
    def rows(self) -> int:
        return self._logs.shape[0]

    @property
    def columns(self) -> int:
        return self._logs.shape[1]

    def entry(self, n: int, k: int) -> GeoReal:
        """1-indexed entry ``a_{nk}``."""
        if not (1 <= n <= self.rows and 1 <= k <= self.columns):
            raise IndexOutOfRange(f"entry ({n}, {k}) outside {self.shape}")
        return GeoReal(self._logs[n - 1, k - 1])

    def to_reals(self) -> np.ndarray:
        return np.exp(self._logs)

    def __repr__(self):
        return f"GeoMatrix(shape={self.shape})"


def _check_row(A: GeoMatrix, n: int):
    if not 1 <= n <= A.rows:
        raise IndexOutOfRange(f"row {n} outside 1..{A.rows}")


def apply_row(A: GeoMatrix, n: int, x: GeoSequence) -> GeoReal:
    """``A_n(x) = G-sum_k a_{nk} ⊙ x_k`` over the truncated columns."""
    _check_row(A, n)
    if len(x) < A.columns:
        raise DimensionMismatch(f"sequence has {len(x)} terms, matrix has {A.columns} columns")
    return gsum(gmul(A.entry(n, k), x[k]) for k in range(1, A.columns + 1))


def transform(A: GeoMatrix, x: GeoSequence) -> GeoSequence:
    """The sequence ``(A_n(x))_{n=1..R}``."""
    return GeoSequence([apply_row(A, n, x).log_value for n in range(1, A.rows + 1)])


def row_sums(A: GeoMatrix) -> list[GeoReal]:
    """Truncated ``G-sum_k |a_{nk}|_G`` per row."""
    return [GeoReal(math.fsum(np.abs(row))) for row in A.logs]


def _row_differences(A: GeoMatrix, order: int) -> np.ndarray:
    # Δ^order down the rows, column by column
    w = difference_weights(order)
    R = A.rows - order
    out = np.empty((R, A.columns))
    for n in range(R):
        for k in range(A.columns):
            out[n, k] = math.fsum(c * A.logs[n + v, k] for v, c in enumerate(w))
    return out


def build_B(A: GeoMatrix, m: int) -> GeoMatrix:
    """``b_{ik} = e^{1/i} ⊙ (Δ_G^{m-1} a_{1k} ⊖ Δ_G^{m-1} a_{i+1,k})`` for ``i = 1..R-m``."""
    if m < 1:
        raise DomainError(f"order must be positive, got {m}")
    if A.rows < m + 1:
        raise DimensionMismatch(f"B of order {m} needs at least {m + 1} rows, A has {A.rows}")
    D = _row_differences(A, m - 1)
    i = np.arange(1, A.rows - m + 1, dtype=float)[:, None]
    return GeoMatrix((D[0][None, :] - D[1:A.rows - m + 1]) / i)


def transform_consistency(A: GeoMatrix, m: int, x: GeoSequence, i: int) -> tuple[GeoReal, GeoReal]:
    """``(e^{1/i} ⊙ G-sum_{n<=i} Δ_G^m A_n(x), B_i(x))``; the two must agree."""
    if m < 1:
        raise DomainError(f"order must be positive, got {m}")
    if len(x) < A.columns:
        raise DimensionMismatch(f"sequence has {len(x)} terms, matrix has {A.columns} columns")
    if i < 1 or i + m > A.rows:
        raise DimensionMismatch(f"row {i} of order {m} needs {i + m} matrix rows, have {A.rows}")
    Ax = transform(A, x)
    direct = GeoReal(math.fsum(delta_m_logs(Ax, m, i)) / i)
    via_b = apply_row(build_B(A, m), i, x)
    return direct, via_b


def matrix_from_rows(rows: Sequence[Sequence[float]]) -> GeoMatrix:
    """Matrix from nested positive reals; rows must be equally long."""
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DimensionMismatch(f"ragged rows: widths {sorted(widths)}")
    return GeoMatrix.from_reals(rows)
