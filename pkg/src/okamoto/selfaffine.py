"""Construction and evaluation of the self-affine family F and its approximants.

The function F is the uniform limit of piecewise-linear maps f_n generated by
a (2N+2)-point interpolation pattern.  Grid values of f_n are exact values of
F, which makes the sampled graphs exact up to floating-point roundoff.

All functions here are pure; graph sampling can be partitioned over disjoint
index ranges without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TextIO

import numpy as np

from .errors import DomainError, GridPointError, ResourceError
from .numdigits import DigitSeq, Number, Params, digits_of, odd_count_prefix

DEFAULT_TOL = 1e-12
GRAPH_POINT_CAP = 10_000_000


@dataclass(frozen=True)
class GeneratorPattern:
    """Interpolation points (x_i, y_i), i = 0..2N+1, of the generating map.

    x_i = i/(2N+1); y_{2j} = j(a-b), y_{2j+1} = (j+1)a - jb.  Consecutive
    slope ratios after the first lie in {-a/b, -b/a}.
    """

    xs: tuple[Fraction, ...]
    ys: tuple[Number, ...]


def generator_pattern(p: Params) -> GeneratorPattern:
    B = 2 * p.N + 1
    xs = tuple(Fraction(i, B) for i in range(B + 1))
    ys: list[Number] = []
    for j in range(p.N + 1):
        ys.append(j * (p.a - p.b))
        ys.append((j + 1) * p.a - j * p.b)
    return GeneratorPattern(xs=xs, ys=tuple(ys))


def eval_fn(p: Params, n: int, x: Number) -> Number:
    """Value of the n-th piecewise-linear approximant f_n at x; f_0(x) = x.

    O(n) work: descends one subdivision level per step, accumulating the
    affine image of the current cell.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    if not (0 <= x <= 1):
        raise DomainError(f"x must lie in [0,1], got {x}")
    B = 2 * p.N + 1
    ys = generator_pattern(p).ys
    offset: Number = 0 * x  # matches the arithmetic type of x
    scale: Number = 1
    t = x
    for _ in range(n):
        u = B * t
        i = min(int(u), B - 1)
        offset = offset + scale * ys[i]
        scale = scale * (ys[i + 1] - ys[i])
        t = u - i
    return offset + scale * t


def _series_terms(a: float, tol: float) -> int:
    # tail after M terms is bounded by a^M/(1-a)
    if tol <= 0:
        raise DomainError("tol must be positive")
    return max(1, math.ceil(math.log(tol * (1 - a)) / math.log(a)))


def eval_F(p: Params, d: DigitSeq, tol: float = DEFAULT_TOL) -> float:
    """Value of F at the point represented by d, via the digit series.

    Truncated once the tail bound a^M/(1-a) drops below tol, so the absolute
    error is at most tol.  When every digit is even the simpler form
    F(x) = (1-a)/N * sum a^(n-1) * (digit_n/2) is used.
    """
    if d.N != p.N:
        raise DomainError(f"digit sequence has N={d.N}, params have N={p.N}")
    a = float(p.a)
    b = float(p.b)
    terms = _series_terms(a, tol)
    gen = d.iter_digits()
    if all(t % 2 == 0 for t in d.preperiod + d.period):
        acc = 0.0
        apow = 1.0
        c = (1.0 - a) / p.N
        for _ in range(terms):
            acc += apow * c * (next(gen) // 2)
            apow *= a
        return acc
    ys = [float(v) for v in generator_pattern(p).ys]
    acc = 0.0
    factor = 1.0
    for _ in range(terms):
        xi = next(gen)
        acc += factor * ys[xi]
        factor *= a if xi % 2 == 0 else -b
    return acc


def eval_F_exact(p: Params, d: DigitSeq) -> Fraction:
    """Exact value of F at an eventually periodic point, for rational a.

    Used as an independent oracle: the digit series is summed in closed form
    over one period, which is valid because the per-period factor has modulus
    a^e * b^o < 1.
    """
    if not isinstance(p.a, Fraction):
        raise DomainError("eval_F_exact requires a rational slope parameter a")
    if d.N != p.N:
        raise DomainError(f"digit sequence has N={d.N}, params have N={p.N}")
    ys = generator_pattern(p).ys
    a, b = p.a, p.b
    acc = Fraction(0)
    factor = Fraction(1)
    for xi in d.preperiod:
        acc += factor * ys[xi]
        factor *= a if xi % 2 == 0 else -b
    block = Fraction(0)
    g = Fraction(1)
    for xi in d.period:
        block += g * ys[xi]
        g *= a if xi % 2 == 0 else -b
    return acc + factor * block / (1 - g)


def eval_F_rational(p: Params, x: Fraction, tol: float = DEFAULT_TOL) -> float:
    """Convenience wrapper: expand a rational x and evaluate F there."""
    return eval_F(p, digits_of(x, p.N), tol)


def slope_fn(p: Params, d: DigitSeq, n: int) -> Number:
    """Signed slope of f_n on the level-n cell containing the point.

    Equals (2N+1)^n a^(n-i) (-b)^i with i the number of odd digits among the
    first n.  Undefined (GridPointError) when the point is a grid point of
    level <= n, i.e. its digit tail beyond n is all zeros.
    """
    if n < 1:
        raise DomainError("n must be positive")
    if d.N != p.N:
        raise DomainError(f"digit sequence has N={d.N}, params have N={p.N}")
    if d.tail_is_zero_beyond(n):
        raise GridPointError(
            f"x = {d} is a grid point of level <= {n}; f_{n} has no slope there"
        )
    B = 2 * p.N + 1
    i = odd_count_prefix(d, n)
    return B**n * p.a ** (n - i) * (-p.b) ** i


@dataclass(frozen=True)
class GraphSample:
    """Exact values of F on the uniform level-`depth` grid.

    Endpoints of adjacent cells are shared, so plotted polylines are closed.
    """

    depth: int
    xs: np.ndarray
    ys: np.ndarray

    def to_csv(self, out: TextIO) -> None:
        out.write("x,F\n")
        for x, y in zip(self.xs, self.ys):
            out.write(f"{x:.17g},{y:.17g}\n")

    def to_json_obj(self) -> list[list[float]]:
        return [[float(x), float(y)] for x, y in zip(self.xs, self.ys)]


def sample_graph(p: Params, depth: int, max_points: int = GRAPH_POINT_CAP) -> GraphSample:
    """F at all grid points j/(2N+1)^depth, computed by level-wise subdivision."""
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    B = 2 * p.N + 1
    npts = B**depth + 1
    if npts > max_points:
        raise ResourceError(
            f"(2N+1)^depth = {npts - 1} grid cells exceed the cap of {max_points}"
        )
    ys_pat = [float(v) for v in generator_pattern(p).ys]
    vals = np.array([0.0, 1.0])
    for _ in range(depth):
        parts = []
        for i in range(B):
            seg = ys_pat[i] + (ys_pat[i + 1] - ys_pat[i]) * vals
            parts.append(seg[:-1] if i < B - 1 else seg)
        vals = np.concatenate(parts)
    xs = np.arange(npts, dtype=float) / (npts - 1) if depth > 0 else np.array([0.0, 1.0])
    return GraphSample(depth=depth, xs=xs, ys=vals)


def box_dimension(p: Params) -> float:
    """Closed-form box-counting dimension of the graph: 1 + log(2(N+1)a-1)/log(2N+1)."""
    return 1.0 + math.log(2 * (p.N + 1) * float(p.a) - 1.0) / math.log(2 * p.N + 1)
