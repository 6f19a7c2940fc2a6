"""Bigeometric derivatives.

``D_G f(a) = exp(a f'(a) / f(a))`` when ``f`` has a classical derivative.
Without one, the derivative is estimated by a central difference of
``g(t) = ln f(e**t)`` at ``t = ln a``, since ``D_G f(a) = exp(g'(ln a))``.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable, Optional

from .core import GeoReal
from .errors import DomainError, EvaluationError

DEFAULT_STEP = sys.float_info.epsilon ** (1 / 3)


@dataclass(frozen=True)
class RealFunction:
    """A map from positive reals to positive reals.

    ``classical_derivative`` is optional; when present it takes precedence
    over numeric estimation.
    """

    eval: Callable[[float], float]
    classical_derivative: Optional[Callable[[float], float]] = None
    name: str = "f"

    def __call__(self, x: float) -> float:
        return self.eval(x)


def dg_from_classical(a: float, f_a: float, fprime_a: float) -> GeoReal:
    if not a > 0:
        raise DomainError(f"point must be positive, got {a}")
    if not f_a > 0:
        raise DomainError(f"function value must be positive, got {f_a}")
    return GeoReal(a * fprime_a / f_a)


def _log_eval(f: RealFunction, x: float) -> float:
    try:
        y = f(x)
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise EvaluationError(f"{f.name}({x}) failed: {exc}") from exc
    if not (y > 0 and math.isfinite(y)):
        raise EvaluationError(f"{f.name}({x}) = {y} is not a geometric real")
    return math.log(y)


def dg_numeric(f: RealFunction, a: float, h: float = DEFAULT_STEP) -> GeoReal:
    if not a > 0:
        raise DomainError(f"point must be positive, got {a}")
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")
    _log_eval(f, a)
    t = math.log(a)
    hi = _log_eval(f, math.exp(t + h))
    lo = _log_eval(f, math.exp(t - h))
    return GeoReal((hi - lo) / (2 * h))


def dg(f: RealFunction, a: float, h: float = DEFAULT_STEP) -> GeoReal:
    """Bigeometric derivative of ``f`` at ``a``, exact when possible."""
    if f.classical_derivative is not None:
        f_a = f(a)
        if not f_a > 0:
            raise EvaluationError(f"{f.name}({a}) = {f_a} is not a geometric real")
        return dg_from_classical(a, f_a, f.classical_derivative(a))
    return dg_numeric(f, a, h)


def _positive_sin(x):
    s = math.sin(x)
    if s <= 0:
        raise ValueError("sin is not positive here")
    return s


def _log_above_one(x):
    if x <= 1:
        raise ValueError("ln x is a geometric real only for x > 1")
    return math.log(x)


# Closed forms: D_G exp = exp, D_G ln = exp(1/ln x), D_G sin = exp(x cot x).
BUILTINS = {
    "exp": RealFunction(math.exp, math.exp, "exp"),
    "ln": RealFunction(_log_above_one, lambda x: 1.0 / x, "ln"),
    "sin": RealFunction(_positive_sin, math.cos, "sin"),
}


def known_derivative(name: str, x: float) -> GeoReal:
    """Closed-form bigeometric derivatives of the builtin functions."""
    if name == "exp":
        return GeoReal(x)
    if name == "ln":
        if x <= 1:
            raise DomainError("D_G ln is defined for x > 1")
        return GeoReal(1.0 / math.log(x))
    if name == "sin":
        if math.sin(x) <= 0:
            raise DomainError("D_G sin is defined where sin x > 0")
        return GeoReal(x / math.tan(x))
    raise KeyError(name)
