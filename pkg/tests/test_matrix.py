import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from bigeo.core import ZERO, GeoReal, gadd, gmul, gsub
from bigeo.diff import GeoSequence, delta_m
from bigeo.errors import DimensionMismatch, IndexOutOfRange
from bigeo.matrix import (
    GeoMatrix,
    apply_row,
    build_B,
    matrix_from_rows,
    row_sums,
    transform,
    transform_consistency,
)


def classical_B(L, m):
    """Independent construction on the log matrix with numpy differences."""
    D = L.copy()
    for _ in range(m - 1):
        D = D[:-1] - D[1:]
    R = L.shape[0]
    i = np.arange(1, R - m + 1)[:, None]
    return (D[0] - D[1:R - m + 1]) / i


class TestApplyRow:
    def test_zero_row(self):
        A = GeoMatrix(np.zeros((2, 3)))
        x = GeoSequence([1.0, -4.0, 2.0])
        assert apply_row(A, 1, x) == ZERO

    def test_identity_weights(self):
        A = GeoMatrix(np.ones((1, 3)))
        x = GeoSequence([1.0, -4.0, 2.5])
        assert apply_row(A, 1, x) == GeoReal(-0.5)

    def test_dot_product_oracle(self):
        rng = np.random.default_rng(0)
        L = rng.normal(size=(3, 3))
        xl = rng.normal(size=3)
        A, x = GeoMatrix(L), GeoSequence(xl)
        for n in range(1, 4):
            assert apply_row(A, n, x).isclose(GeoReal(float(L[n - 1] @ xl)), 1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply_row(GeoMatrix(np.zeros((2, 4))), 1, GeoSequence([1.0, 2.0]))
        with pytest.raises(IndexOutOfRange):
            apply_row(GeoMatrix(np.zeros((2, 2))), 3, GeoSequence([1.0, 2.0]))


class TestBuildB:
    def test_identical_rows(self):
        row = np.array([0.3, -1.0, 2.0, 0.7])
        A = GeoMatrix(np.tile(row, (6, 1)))
        for m in (1, 2, 3):
            assert np.all(build_B(A, m).logs == 0.0)

    def test_order_one(self):
        rng = np.random.default_rng(2)
        A = GeoMatrix(rng.normal(size=(4, 3)))
        B = build_B(A, 1)
        for i in range(1, 4):
            for k in range(1, 4):
                expected = gmul(GeoReal(1 / i), gsub(A.entry(1, k), A.entry(i + 1, k)))
                assert B.entry(i, k).isclose(expected, 1e-14)

    def test_random_against_oracle(self):
        rng = np.random.default_rng(4)
        L = rng.normal(size=(6, 4))
        np.testing.assert_allclose(build_B(GeoMatrix(L), 2).logs, classical_B(L, 2), atol=1e-13)
        assert build_B(GeoMatrix(L), 2).shape == (4, 4)

    def test_too_few_rows(self):
        with pytest.raises(DimensionMismatch):
            build_B(GeoMatrix(np.zeros((2, 3))), 2)


class TestConsistency:
    def test_random(self):
        rng = np.random.default_rng(6)
        A = GeoMatrix(rng.normal(size=(7, 5)))
        x = GeoSequence(rng.normal(size=5))
        a, b = transform_consistency(A, 2, x, 3)
        assert abs(a.log_value - b.log_value) < 1e-10

    def test_constant_rows(self):
        A = GeoMatrix(np.tile([1.0, 2.0, -0.5], (5, 1)))
        x = GeoSequence([0.4, 1.1, -2.0])
        a, b = transform_consistency(A, 2, x, 2)
        assert a == ZERO and b == ZERO

    def test_single_step(self):
        rng = np.random.default_rng(9)
        A = GeoMatrix(rng.normal(size=(3, 4)))
        x = GeoSequence(rng.normal(size=4))
        expected = gsub(apply_row(A, 1, x), apply_row(A, 2, x))
        a, b = transform_consistency(A, 1, x, 1)
        assert a.isclose(expected, 1e-12) and b.isclose(expected, 1e-12)

    def test_row_bound(self):
        A = GeoMatrix(np.zeros((4, 2)))
        with pytest.raises(DimensionMismatch):
            transform_consistency(A, 2, GeoSequence([1.0, 1.0]), 3)


@settings(max_examples=150, deadline=None)
@given(hnp.arrays(float, (6, 4), elements=st.floats(-2, 2)), hnp.arrays(float, 4, elements=st.floats(-2, 2)),
       st.integers(1, 3), st.integers(1, 3))
def test_telescoping_property(L, xl, m, i):
    A, x = GeoMatrix(L), GeoSequence(xl)
    Ax = transform(A, x)
    lhs = GeoReal(math.fsum(delta_m(Ax, m, n).log_value for n in range(1, i + 1)))
    rhs = gsub(delta_m(Ax, m - 1, 1), delta_m(Ax, m - 1, i + 1))
    assert lhs.isclose(rhs, 1e-10)


@settings(max_examples=150, deadline=None)
@given(hnp.arrays(float, (3, 5), elements=st.floats(-2, 2)),
       hnp.arrays(float, 5, elements=st.floats(-2, 2)), hnp.arrays(float, 5, elements=st.floats(-2, 2)),
       st.floats(-2, 2), st.floats(-2, 2))
def test_row_linearity(L, xl, yl, a, b):
    A = GeoMatrix(L)
    x, y = GeoSequence(xl), GeoSequence(yl)
    A_, B_ = GeoReal(a), GeoReal(b)
    combo = x.scale(A_).oplus(y.scale(B_))
    for n in (1, 2, 3):
        rhs = gadd(gmul(A_, apply_row(A, n, x)), gmul(B_, apply_row(A, n, y)))
        assert apply_row(A, n, combo).isclose(rhs, 1e-10)


def test_row_sums_monotone_in_columns():
    rng = np.random.default_rng(11)
    L = rng.normal(size=(4, 10))
    prev = [0.0] * 4
    for K in range(1, 11):
        sums = [s.log_value for s in row_sums(GeoMatrix(L[:, :K]))]
        assert all(s >= p for s, p in zip(sums, prev))
        prev = sums


def test_matrix_constructors():
    M = matrix_from_rows([[1.0, math.e], [math.e, 1.0]])
    assert M.entry(1, 2) == GeoReal(1.0)
    with pytest.raises(DimensionMismatch):
        matrix_from_rows([[1.0], [1.0, 2.0]])
    with pytest.raises(DimensionMismatch):
        GeoMatrix(np.zeros(3))
