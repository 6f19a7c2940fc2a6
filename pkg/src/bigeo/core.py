"""Geometric real arithmetic.

The realm is the set of positive reals, viewed as ``e**t``.  Every value is
stored by its logarithm ``t`` so that the geometric operations reduce to
exact classical operations on logs and huge values such as ``e**(k**m)``
never overflow.

    >>> gadd(GeoReal.from_real(2), GeoReal.from_real(3)).to_real()
    6.0
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

from .errors import DivisionByGeometricZero, DomainError

#: absolute tolerance used by ``==`` on GeoReal (log domain)
DEFAULT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class GeoReal:
    """A positive real number ``e**log_value``."""

    log_value: float

    def __post_init__(self):
        lv = float(self.log_value)
        if not math.isfinite(lv):
            raise DomainError(f"log_value must be finite, got {self.log_value!r}")
        object.__setattr__(self, "log_value", lv)

    @classmethod
    def from_real(cls, u: float) -> "GeoReal":
        if not u > 0 or not math.isfinite(u):
            raise DomainError(f"geometric reals are positive and finite, got {u!r}")
        return cls(math.log(u))

    @classmethod
    def exp(cls, t: float) -> "GeoReal":
        """The geometric real ``e**t``."""
        return cls(t)

    def to_real(self) -> float:
        # may overflow to inf for log_value > ~709; the log is the source of truth
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf

    def isclose(self, other: "GeoReal", tol: float = DEFAULT_TOL) -> bool:
        return abs(self.log_value - other.log_value) <= tol

    def __eq__(self, other):
        if not isinstance(other, GeoReal):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None  # tolerance equality is not transitive

    def __lt__(self, other: "GeoReal") -> bool:
        return self.log_value < other.log_value

    def __le__(self, other: "GeoReal") -> bool:
        return self.log_value <= other.log_value

    def __gt__(self, other: "GeoReal") -> bool:
        return self.log_value > other.log_value

    def __ge__(self, other: "GeoReal") -> bool:
        return self.log_value >= other.log_value

    def __repr__(self):
        return f"GeoReal(e^{self.log_value!r})"

    def __float__(self):
        return self.to_real()


ZERO = GeoReal(0.0)  # geometric zero, the number 1
ONE = GeoReal(1.0)  # geometric identity, the number e


def as_geo(u) -> GeoReal:
    """Coerce a positive real (or a GeoReal) to GeoReal."""
    if isinstance(u, GeoReal):
        return u
    return GeoReal.from_real(u)


def gadd(u: GeoReal, v: GeoReal) -> GeoReal:
    return GeoReal(u.log_value + v.log_value)


def gsub(u: GeoReal, v: GeoReal) -> GeoReal:
    return GeoReal(u.log_value - v.log_value)


def gneg(u: GeoReal) -> GeoReal:
    """Additive inverse ``1 ⊖ u``."""
    return GeoReal(-u.log_value)


def gmul(u: GeoReal, v: GeoReal) -> GeoReal:
    return GeoReal(u.log_value * v.log_value)


def gdiv(u: GeoReal, v: GeoReal) -> GeoReal:
    if v.log_value == 0.0:
        raise DivisionByGeometricZero("geometric division by 1")
    return GeoReal(u.log_value / v.log_value)


def gabs(u: GeoReal) -> GeoReal:
    return GeoReal(abs(u.log_value))


def gpow(u: GeoReal, q: float) -> GeoReal:
    """Geometric power ``u^{q_G} = exp((ln u)**q)``.

    Negative ``ln u`` is only allowed with an integer exponent.
    """
    t = u.log_value
    integral = float(q).is_integer()
    if t < 0 and not integral:
        raise DomainError(f"(ln u)**q undefined for ln u={t} < 0 and q={q}")
    if t == 0 and q < 0:
        raise DomainError("geometric zero raised to a negative power")
    try:
        return GeoReal(t ** int(q) if integral else t**q)
    except OverflowError:
        raise DomainError(f"(ln u)**q overflows for ln u={t}, q={q}") from None


def gsum(xs: Iterable[GeoReal]) -> GeoReal:
    # fsum keeps long geometric sums exact to rounding
    return GeoReal(math.fsum(x.log_value for x in xs))


def gprod(xs: Iterable[GeoReal]) -> GeoReal:
    return reduce(gmul, xs, ONE)


def gmetric(x: GeoReal, y: GeoReal) -> GeoReal:
    return gabs(gsub(x, y))
