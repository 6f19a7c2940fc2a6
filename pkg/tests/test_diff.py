import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from bigeo.core import ZERO, GeoReal, gadd, gmul, gsub, gsum
from bigeo.diff import (
    GeoSequence,
    cesaro_mean_partial,
    delta_m,
    delta_m_logs,
    difference_weights,
    telescoped_partial,
)
from bigeo.errors import DomainError, IndexOutOfRange


def delta_recursive(x: GeoSequence, m: int, k: int) -> GeoReal:
    """Δ^m x_k = Δ^{m-1}(x_k ⊖ x_{k+1}), straight from the definition."""
    if m == 0:
        return x[k]
    first = GeoSequence.from_geo([gsub(x[j], x[j + 1]) for j in range(1, len(x))])
    return delta_recursive(first, m - 1, k)


def classical_delta(logs, m):
    # repeated first differencing with the x_k - x_{k+1} sign
    out = np.asarray(logs, dtype=float)
    for _ in range(m):
        out = out[:-1] - out[1:]
    return out


def witness(m, length):
    return GeoSequence.from_generator(lambda k: float(k ** (m - 1)), length)


class TestDeltaExamples:
    def test_first_order(self):
        x = GeoSequence([1.0, 2.0, 4.0])
        assert delta_m(x, 1, 1) == GeoReal(-1)

    def test_order_zero_is_identity(self):
        x = GeoSequence([0.3, -2.0])
        assert delta_m(x, 0, 2) == x[2]

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_witness_annihilated(self, m):
        x = witness(m, 60)
        for k in range(1, 50):
            assert delta_m(x, m, k).log_value == 0.0

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_witness_one_order_lower(self, m):
        x = witness(m, 60)
        expected = (-1) ** (m - 1) * math.factorial(m - 1)
        for k in range(1, 50):
            assert delta_m(x, m - 1, k).log_value == expected

    def test_out_of_range(self):
        x = GeoSequence([1.0, 2.0, 3.0])
        with pytest.raises(IndexOutOfRange):
            delta_m(x, 2, 2)
        with pytest.raises(IndexOutOfRange):
            delta_m(x, 0, 0)

    def test_order_cap(self):
        assert len(difference_weights(60)) == 61
        with pytest.raises(DomainError):
            difference_weights(61)


class TestCesaro:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_witness_means_vanish(self, m):
        x = witness(m, 40)
        for n in range(1, 30):
            assert cesaro_mean_partial(x, m, n) == ZERO

    def test_constant(self):
        x = GeoSequence([1.7] * 10)
        for n in range(1, 9):
            assert cesaro_mean_partial(x, 1, n) == ZERO

    def test_linear_logs(self):
        x = GeoSequence([1.0, 2.0, 3.0, 4.0])
        assert cesaro_mean_partial(x, 1, 3) == GeoReal(-1)

    def test_range(self):
        with pytest.raises(IndexOutOfRange):
            cesaro_mean_partial(GeoSequence([1.0, 2.0]), 1, 2)


class TestTelescoping:
    def test_matches_brute_force(self):
        rng = np.random.default_rng(12)
        x = GeoSequence(rng.uniform(-3, 3, 12))
        brute = gsum(delta_m(x, 2, k) for k in range(1, 6))
        assert telescoped_partial(x, 2, 5).isclose(brute, 1e-12)

    def test_vanishing_prefix(self):
        rng = np.random.default_rng(3)
        logs = rng.uniform(-2, 2, 10)
        logs[:2] = 0.0
        x = GeoSequence(logs)
        assert telescoped_partial(x, 2, 3) == gsub(ZERO, delta_m(x, 1, 4))

    def test_constant(self):
        assert telescoped_partial(GeoSequence([0.4] * 8), 3, 4) == ZERO


seqs = hnp.arrays(float, st.integers(2, 64),
                  elements=st.floats(-20, 20, allow_nan=False, allow_infinity=False))


@settings(max_examples=200, deadline=None)
@given(seqs, st.integers(0, 6), st.data())
def test_log_domain_oracle(logs, m, data):
    if m >= logs.size:
        m = logs.size - 1
    x = GeoSequence(logs)
    expected = classical_delta(logs, m)
    got = delta_m_logs(x, m)
    np.testing.assert_allclose(got, expected, rtol=0, atol=1e-10)
    k = data.draw(st.integers(1, logs.size - m))
    assert delta_m(x, m, k).isclose(delta_recursive(x, m, k), 1e-10)


@settings(max_examples=200, deadline=None)
@given(hnp.arrays(float, 20, elements=st.floats(-5, 5)),
       hnp.arrays(float, 20, elements=st.floats(-5, 5)),
       st.floats(-3, 3), st.floats(-3, 3), st.integers(1, 5), st.integers(1, 10))
def test_linearity(xl, yl, a, b, m, k):
    x, y = GeoSequence(xl), GeoSequence(yl)
    A, B = GeoReal(a), GeoReal(b)
    combo = x.scale(A).oplus(y.scale(B))
    lhs = delta_m(combo, m, k)
    rhs = gadd(gmul(A, delta_m(x, m, k)), gmul(B, delta_m(y, m, k)))
    assert lhs.isclose(rhs, 1e-9)


@settings(max_examples=200, deadline=None)
@given(hnp.arrays(float, 30, elements=st.floats(-5, 5)), st.integers(1, 5), st.integers(1, 20))
def test_telescoping_identity(xl, m, n):
    x = GeoSequence(xl)
    brute = gsum(delta_m(x, m, k) for k in range(1, n + 1))
    assert telescoped_partial(x, m, n).isclose(brute, 1e-9)


def test_sequence_basics():
    x = GeoSequence.from_reals([1.0, math.e, math.e ** 2])
    assert x[3] == GeoReal(2)
    with pytest.raises(IndexOutOfRange):
        x[4]
    with pytest.raises(DomainError):
        GeoSequence.from_reals([1.0, 0.0])
    g = GeoSequence.from_generator(lambda k: k * 0.5, 4)
    assert len(g.extend(10)) == 10
    assert g.extend(10)[7] == GeoReal(3.5)
    assert all(t == ZERO for t in GeoSequence.ones(3).terms())
