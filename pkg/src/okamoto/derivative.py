"""Exact classification of F'(x) for eventually periodic points.

For such points the derivative is always one of 0, +infinity, -infinity, or
undefined, and the verdict is decidable in closed form:

* a period containing an odd digit forces the approximant slopes to grow or
  shrink geometrically with per-period factor gamma = ((2N+1)a)^e ((2N+1)b)^o;
  gamma < 1 gives derivative 0, gamma >= 1 gives non-differentiability;
* an all-even period makes an infinite derivative possible exactly when the
  two families of tail margins 1 - sum_j a^j w_{n+j} (for the halved digits w
  and their complement) stay strictly positive over every residue class of
  the period; the sign is then + for an even total number of odd digits and
  - for an odd total.

Batch classification parallelizes over inputs with no shared state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PrecisionError
from .numdigits import (
    DigitSeq,
    Number,
    OmegaSeq,
    Params,
    digits_of,
    odd_total,
)
from .selfaffine import eval_F

MARGIN_TIE_TOL = 1e-12


class DerivativeTag(enum.Enum):
    ZERO = "ZERO"
    PLUS_INFINITY = "PLUS_INFINITY"
    MINUS_INFINITY = "MINUS_INFINITY"
    NOT_DIFFERENTIABLE = "NOT_DIFFERENTIABLE"


@dataclass(frozen=True)
class DerivativeClass:
    """Verdict plus the evidence it was decided on.

    growth_factor is the per-period slope factor gamma; odd_digits is the
    total count of odd digits (math.inf when the period contains one);
    tail_margins holds the (direct, complement) margin pairs per residue
    class when the all-even analysis ran, else None.
    """

    tag: DerivativeTag
    growth_factor: Number
    odd_digits: int | float
    tail_margins: tuple[tuple[Number, Number], ...] | None

    def to_json_obj(self) -> dict:
        return {
            "tag": self.tag.value,
            "gamma": float(self.growth_factor),
            "M": "INFINITE" if self.odd_digits == math.inf else int(self.odd_digits),
            "T_values": None
            if self.tail_margins is None
            else [[float(t), float(tb)] for t, tb in self.tail_margins],
        }


def check_infinite_conditions(
    p: Params, w: OmegaSeq
) -> tuple[bool, bool, tuple[tuple[Number, Number], ...]]:
    """Evaluate the two infinite-derivative tail conditions for w's period.

    For each residue class r of the period, the direct margin is
    T_r = 1 - sum_{j>=1} a^j w_{r+j} and the complement margin uses digits
    N - w instead; both series are summed in closed form.  The first flag is
    true iff every direct margin is strictly positive, the second for the
    complement margins.  Preperiod digits are irrelevant: the underlying
    limits depend only on large indices.

    Raises PrecisionError when a is a float and some margin is within 1e-12
    of zero.
    """
    if w.N != p.N:
        raise DomainError(f"sequence alphabet N={w.N} does not match params N={p.N}")
    a = p.a
    exact = isinstance(a, Fraction)
    if not exact:
        a = float(a)
    v = w.period
    m = len(v)
    denom = 1 - a**m
    full = p.N * a / (1 - a)  # sum of a^j * N over j >= 1
    margins = []
    for r in range(m):
        s = sum(a ** (j + 1) * v[(r + j) % m] for j in range(m)) / denom
        t_direct = 1 - s
        t_comp = 1 - (full - s)
        if not exact and (
            abs(t_direct) <= MARGIN_TIE_TOL or abs(t_comp) <= MARGIN_TIE_TOL
        ):
            raise PrecisionError(
                f"tail margin within {MARGIN_TIE_TOL} of zero at residue {r}; "
                "supply a as an exact rational to decide the boundary case"
            )
        margins.append((t_direct, t_comp))
    cond_direct = all(t > 0 for t, _ in margins)
    cond_comp = all(tb > 0 for _, tb in margins)
    return cond_direct, cond_comp, tuple(margins)


def classify_derivative(p: Params, d: DigitSeq) -> DerivativeClass:
    """Four-way classification of F'(x) for an eventually periodic point.

    Decision procedure: compute the per-period growth factor gamma.  If the
    period contains an odd digit, infinitely many odd digits occur and the
    verdict is ZERO when gamma < 1, otherwise NOT_DIFFERENTIABLE (this covers
    gamma == 1, where the slopes stay bounded away from zero).  Otherwise the
    two tail-margin families decide: all strictly positive gives an infinite
    derivative signed by the parity of the odd-digit total; a zero margin
    breaks the required divergence, so any non-positive margin means
    NOT_DIFFERENTIABLE.  Grid points j/(2N+1)^n fall out automatically: their
    all-zero tail makes the complement margin 1 - aN/(1-a) < 0.
    """
    if d.N != p.N:
        raise DomainError(f"digit sequence has N={d.N}, params have N={p.N}")
    if not d.preperiod and d.period == (0,):
        raise DomainError("x = 0 is outside the open interval (0,1)")
    B = 2 * p.N + 1
    odd = sum(1 for t in d.period if t % 2 == 1)
    even = len(d.period) - odd
    gamma = (B * p.a) ** even * (B * p.b) ** odd
    M = odd_total(d)
    if odd > 0:
        tag = DerivativeTag.ZERO if gamma < 1 else DerivativeTag.NOT_DIFFERENTIABLE
        return DerivativeClass(tag, gamma, M, None)
    omega = OmegaSeq(p.N, (), tuple(t // 2 for t in d.period))
    cond_direct, cond_comp, margins = check_infinite_conditions(p, omega)
    if cond_direct and cond_comp:
        tag = (
            DerivativeTag.PLUS_INFINITY
            if M % 2 == 0
            else DerivativeTag.MINUS_INFINITY
        )
    else:
        tag = DerivativeTag.NOT_DIFFERENTIABLE
    return DerivativeClass(tag, gamma, M, margins)


@dataclass(frozen=True)
class ProbeQuotients:
    """Two-sided difference quotients at scale h = (2N+1)^-level.

    A side is None when x +/- h falls outside [0,1].
    """

    level: int
    h: float
    right: float | None
    left: float | None


def finite_difference_probe(
    p: Params, x: Fraction | int, levels: int
) -> list[ProbeQuotients]:
    """Empirical difference quotients (F(x+h)-F(x))/(+h), (F(x-h)-F(x))/(-h).

    h runs over (2N+1)^-n for n = 1..levels; each F evaluation uses a series
    tolerance of at most h*1e-4, so quotient noise stays below 2e-4.
    """
    if levels < 1:
        raise DomainError("levels must be >= 1")
    xq = Fraction(x)
    if not (0 < xq < 1):
        raise DomainError(f"x must lie in (0,1), got {x}")
    B = 2 * p.N + 1
    tol_min = float(B) ** (-levels) * 1e-4 / 2
    f_x = eval_F(p, digits_of(xq, p.N), tol_min)
    rows: list[ProbeQuotients] = []
    for n in range(1, levels + 1):
        h = Fraction(1, B**n)
        tol = float(h) * 1e-4 / 2
        right = left = None
        if xq + h <= 1:
            f_r = eval_F(p, digits_of(xq + h, p.N), tol) if xq + h < 1 else 1.0
            right = (f_r - f_x) / float(h)
        if xq - h >= 0:
            f_l = eval_F(p, digits_of(xq - h, p.N), tol) if xq - h > 0 else 0.0
            left = (f_x - f_l) / float(h)
        rows.append(ProbeQuotients(level=n, h=float(h), right=right, left=left))
    return rows
