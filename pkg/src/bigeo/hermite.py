"""Bigeometric Hermite interpolation.

Given nodes ``x_i`` with values ``f(x_i)`` and bigeometric derivatives
``D_G f(x_i)``, there is a unique bigeometric polynomial of geometric degree
at most ``2n+1`` matching both.  Two constructions are provided:

* the Lagrange form built from ``T_{n,i}``, ``H_i`` and ``Ĥ_i``, evaluated
  with geometric operations throughout;
* the Newton form, whose coefficients are the top diagonal of the geometric
  divided-difference table over the doubled abscissae ``z_i = x_{i // 2}``.

In log coordinates ``s = ln x`` the interpolant is the classical Hermite
polynomial of ``ln f`` with slopes ``ln D_G f``;
:func:`classical_hermite_oracle` computes that independently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (
    ONE,
    GeoReal,
    as_geo,
    gadd,
    gdiv,
    gmul,
    gpow,
    gprod,
    gsub,
    gsum,
)
from .deriv import RealFunction, dg, dg_from_classical
from .errors import DegenerateNodes, DomainError, IndexOutOfRange

#: minimum log-domain separation between two abscissae
NODE_TOL = 1e-12


@dataclass(frozen=True)
class HermiteNode:
    x: GeoReal
    f: GeoReal
    dgf: GeoReal


@dataclass(frozen=True)
class HermiteData:
    nodes: tuple

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if not nodes:
            raise DegenerateNodes("at least one node is required")
        logs = sorted(nd.x.log_value for nd in nodes)
        for a, b in zip(logs, logs[1:]):
            if b - a <= NODE_TOL:
                raise DegenerateNodes(f"abscissae e^{a} and e^{b} coincide")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def from_values(cls, xs: Sequence[float], fs: Sequence[float],
                    dgfs: Optional[Sequence[Optional[float]]] = None,
                    fprimes: Optional[Sequence[Optional[float]]] = None,
                    function: Optional[RealFunction] = None) -> "HermiteData":
        """Build from positive reals.

        Per node the bigeometric derivative comes from ``dgfs`` if given,
        else from the classical ``fprimes``, else from ``function``.
        """
        n = len(xs)
        if len(fs) != n:
            raise DomainError(f"{n} abscissae but {len(fs)} function values")
        dgfs = list(dgfs) if dgfs is not None else [None] * n
        fprimes = list(fprimes) if fprimes is not None else [None] * n
        if len(dgfs) != n or len(fprimes) != n:
            raise DomainError("derivative columns must match the node count")
        nodes = []
        for x, f, d, fp in zip(xs, fs, dgfs, fprimes):
            if d is not None:
                dgf = as_geo(d)
            elif fp is not None:
                dgf = dg_from_classical(x, f, fp)
            elif function is not None:
                dgf = dg(function, x)
            else:
                raise DomainError(f"no derivative information for node x={x}")
            nodes.append(HermiteNode(as_geo(x), as_geo(f), dgf))
        return cls(tuple(nodes))

    @classmethod
    def from_function(cls, function: RealFunction, xs: Sequence[float]) -> "HermiteData":
        return cls.from_values(xs, [function(x) for x in xs], function=function)

    @property
    def n(self) -> int:
        """Index of the last node; there are ``n + 1`` nodes."""
        return len(self.nodes) - 1

    @property
    def xs(self) -> list[GeoReal]:
        return [nd.x for nd in self.nodes]

    @property
    def fs(self) -> list[GeoReal]:
        return [nd.f for nd in self.nodes]

    @property
    def dgfs(self) -> list[GeoReal]:
        return [nd.dgf for nd in self.nodes]


def _check_index(data: HermiteData, i: int):
    if not 0 <= i <= data.n:
        raise IndexOutOfRange(f"node index {i} outside 0..{data.n}")


# Lagrange form

def lagrange_T(data: HermiteData, i: int, x: GeoReal) -> GeoReal:
    _check_index(data, i)
    xs = data.xs
    others = [xj for j, xj in enumerate(xs) if j != i]
    num = gprod(gsub(x, xj) for xj in others)
    den = gprod(gsub(xs[i], xj) for xj in others)
    return gdiv(num, den)


def dg_T_at_node(data: HermiteData, i: int) -> GeoReal:
    """``D_G T_{n,i}`` at ``x_i``; its log is ``Σ_{j≠i} 1/(ln x_i - ln x_j)``."""
    _check_index(data, i)
    ti = data.nodes[i].x.log_value
    return GeoReal(math.fsum(1.0 / (ti - nd.x.log_value)
                             for j, nd in enumerate(data.nodes) if j != i))


def lagrange_H(data: HermiteData, i: int, x: GeoReal) -> tuple[GeoReal, GeoReal]:
    """``(H_i(x), Ĥ_i(x))``."""
    _check_index(data, i)
    xi = data.nodes[i].x
    T2 = gpow(lagrange_T(data, i, x), 2)
    gap = gsub(x, xi)
    weight = gsub(ONE, gmul(gmul(GeoReal(2.0), dg_T_at_node(data, i)), gap))
    return gmul(weight, T2), gmul(gap, T2)


def eval_lagrange(data: HermiteData, x) -> GeoReal:
    x = as_geo(x)
    terms = []
    for i, nd in enumerate(data.nodes):
        H, Hhat = lagrange_H(data, i, x)
        terms.append(gmul(H, nd.f))
        terms.append(gmul(Hhat, nd.dgf))
    return gsum(terms)


# Newton form

@dataclass(frozen=True)
class DividedDiffTable:
    """``columns[c][i]`` is ``f_G[z_i, ..., z_{i+c}]``."""

    z: list
    columns: list = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.z)

    def entry(self, c: int, i: int) -> GeoReal:
        return self.columns[c][i]

    def top_diagonal(self) -> list[GeoReal]:
        return [col[0] for col in self.columns]


def doubled_abscissae(data: HermiteData) -> list[GeoReal]:
    return [data.nodes[i // 2].x for i in range(2 * len(data.nodes))]


def divided_diff_table(data: HermiteData) -> DividedDiffTable:
    z = doubled_abscissae(data)
    size = len(z)
    columns = [[data.nodes[i // 2].f for i in range(size)]]
    for c in range(1, size):
        prev = columns[-1]
        col = []
        for i in range(size - c):
            if c == 1 and i % 2 == 0:
                # z_i == z_{i+1}: the equal-argument rule
                col.append(data.nodes[i // 2].dgf)
                continue
            den = gsub(z[i + c], z[i])
            if den.log_value == 0.0:
                raise DegenerateNodes(f"z_{i} == z_{i + c} in column {c}")
            col.append(gdiv(gsub(prev[i + 1], prev[i]), den))
        columns.append(col)
    return DividedDiffTable(z, columns)


@dataclass(frozen=True)
class BigeoPolynomial:
    """``p_G(x) = A_0 ⊕ G-sum_k A_k ⊙ G-prod_{i<k} (x ⊖ z_i)``."""

    centers: list
    coeffs: list

    def __post_init__(self):
        if len(self.coeffs) != len(self.centers) + 1:
            raise DomainError("a Newton polynomial needs one more coefficient than centers")

    def geometric_degree(self, tol: float = 1e-12) -> int:
        """Index of the last coefficient that is not the geometric zero."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if abs(self.coeffs[k].log_value) > tol:
                return k
        return 0

    def log_eval(self, s: float) -> float:
        """Log of ``p_G(e**s)``; nested evaluation in log coordinates."""
        a = [c.log_value for c in self.coeffs]
        z = [c.log_value for c in self.centers]
        acc = a[-1]
        for k in range(len(z) - 1, -1, -1):
            acc = a[k] + (s - z[k]) * acc
        return acc

    def log_dg(self, s: float) -> float:
        """Log of ``D_G p_G`` at ``e**s``."""
        a = [c.log_value for c in self.coeffs]
        z = [c.log_value for c in self.centers]
        acc, dacc = a[-1], 0.0
        for k in range(len(z) - 1, -1, -1):
            dacc = acc + (s - z[k]) * dacc
            acc = a[k] + (s - z[k]) * acc
        return dacc

    def __call__(self, x) -> GeoReal:
        return eval_newton(self, x)

    def dg(self, x) -> GeoReal:
        return GeoReal(self.log_dg(as_geo(x).log_value))

    def as_function(self) -> RealFunction:
        """Wrap as a positive-real function with its classical derivative."""
        def f(x):
            return math.exp(self.log_eval(math.log(x)))

        def fprime(x):
            s = math.log(x)
            return math.exp(self.log_eval(s)) * self.log_dg(s) / x

        return RealFunction(f, fprime, "p_G")


def newton_coeffs(table: DividedDiffTable) -> BigeoPolynomial:
    return BigeoPolynomial(list(table.z[:-1]), table.top_diagonal())


def interpolate(data: HermiteData) -> BigeoPolynomial:
    """Newton-form bigeometric Hermite interpolant of ``data``."""
    return newton_coeffs(divided_diff_table(data))


def eval_newton(poly: BigeoPolynomial, x) -> GeoReal:
    return GeoReal(poly.log_eval(as_geo(x).log_value))


def eval_newton_expanded(poly: BigeoPolynomial, x) -> GeoReal:
    """Term-by-term evaluation of the Newton form with geometric operations."""
    x = as_geo(x)
    terms = [poly.coeffs[0]]
    for k in range(1, len(poly.coeffs)):
        basis = gprod(gsub(x, poly.centers[i]) for i in range(k))
        terms.append(gmul(poly.coeffs[k], basis))
    return gsum(terms)


def classical_hermite_oracle(data: HermiteData, x) -> GeoReal:
    """Classical Hermite interpolation of the log-transformed data.

    Nodes ``t_i = ln x_i``, values ``ln f_i``, slopes ``ln D_G f_i``; plain
    float divided differences and a term-by-term Newton sum.  Shares no code
    with the geometric construction above.
    """
    t = [nd.x.log_value for nd in data.nodes]
    g = [nd.f.log_value for nd in data.nodes]
    slope = [nd.dgf.log_value for nd in data.nodes]
    if len(set(t)) != len(t):
        raise DegenerateNodes("repeated abscissae")
    size = 2 * len(t)
    zz = [t[j // 2] for j in range(size)]
    q = [[0.0] * size for _ in range(size)]
    for j in range(size):
        q[j][0] = g[j // 2]
    for j in range(1, size):
        if j % 2 == 1:
            q[j][1] = slope[j // 2]
        else:
            q[j][1] = (q[j][0] - q[j - 1][0]) / (zz[j] - zz[j - 1])
    for c in range(2, size):
        for j in range(c, size):
            q[j][c] = (q[j][c - 1] - q[j - 1][c - 1]) / (zz[j] - zz[j - c])
    s = as_geo(x).log_value
    total, basis = 0.0, 1.0
    for c in range(size):
        total += q[c][c] * basis
        basis *= s - zz[c]
    return GeoReal(total)


def format_table(table: DividedDiffTable, digits: int = 4) -> str:
    """Staircase rendering of the table as positive reals."""
    size = table.size
    width = digits + 8
    lines = []
    header = ["x".ljust(width), "f(x)".ljust(width)]
    header += [f"col {c}".ljust(width) for c in range(1, size)]
    lines.append("".join(header).rstrip())
    for r in range(2 * size - 1):
        cells = []
        if r % 2 == 0:
            cells.append(f"{table.z[r // 2].to_real():.{digits}f}".ljust(width))
        else:
            cells.append("".ljust(width))
        for c in range(size):
            # entry (c, i) sits on row 2i + c
            i, rem = divmod(r - c, 2)
            if rem == 0 and 0 <= i < size - c:
                cells.append(f"{table.entry(c, i).to_real():.{digits}f}".ljust(width))
            else:
                cells.append("".ljust(width))
        lines.append("".join(cells).rstrip())
    return "\n".join(lines)
