"""Exact representation of points via eventually periodic digit sequences.

A point x in (0,1) is stored by its base-(2N+1) expansion split into a finite
preperiod and a repeating period.  All arithmetic on these sequences is done
with exact integer fractions; real-valued outputs elsewhere in the package use
binary floating point with at least 15 significant digits.

Everything here is immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterator

from .errors import DomainError

Number = float | Fraction


def _primitive(period: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest word u with period == u repeated."""
    m = len(period)
    for p in range(1, m + 1):
        if m % p == 0 and period == period[:p] * (m // p):
            return period[:p]
    return period


def _canonical(preperiod: tuple[int, ...], period: tuple[int, ...]):
    """Minimal (preperiod, primitive period) form of the same sequence."""
    period = _primitive(period)
    pre = list(preperiod)
    per = list(period)
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = [per[-1]] + per[:-1]
    return tuple(pre), _primitive(tuple(per))


@dataclass(frozen=True)
class DigitSeq:
    """Eventually periodic base-(2N+1) expansion of a point in [0,1).

    Digits lie in {0,...,2N}.  The representation is canonical: the period is
    primitive, the preperiod is minimal, and a period of all (2N)'s is
    rejected (ties are resolved toward the expansion ending in zeros).
    """

    N: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre, per = _canonical(tuple(self.preperiod), tuple(self.period))
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)
        if self.N < 1:
            raise DomainError(f"N must be a positive integer, got {self.N}")
        if not self.period:
            raise DomainError("period must be nonempty")
        top = 2 * self.N
        for d in self.preperiod + self.period:
            if not (0 <= d <= top):
                raise DomainError(f"digit {d} outside 0..{top}")
        if all(d == top for d in self.period):
            raise DomainError(
                "non-canonical expansion ending in all %d's; use the "
                "terminating form instead" % top
            )

    @property
    def base(self) -> int:
        return 2 * self.N + 1

    def digit(self, i: int) -> int:
        """The i-th digit, 1-indexed."""
        if i < 1:
            raise DomainError("digit index starts at 1")
        L = len(self.preperiod)
        if i <= L:
            return self.preperiod[i - 1]
        return self.period[(i - L - 1) % len(self.period)]

    def digits(self, n: int) -> list[int]:
        return [self.digit(i) for i in range(1, n + 1)]

    def iter_digits(self) -> Iterator[int]:
        yield from self.preperiod
        while True:
            yield from self.period

    def value(self) -> Fraction:
        """Exact value sum(digit_i * (2N+1)^-i)."""
        B = self.base
        L = len(self.preperiod)
        m = len(self.period)
        pre_int = 0
        for d in self.preperiod:
            pre_int = pre_int * B + d
        per_int = 0
        for d in self.period:
            per_int = per_int * B + d
        denom = B**L * (B**m - 1)
        return Fraction(pre_int * (B**m - 1) + per_int, denom)

    def tail_is_zero_beyond(self, n: int) -> bool:
        """True iff digits n+1, n+2, ... are all zero (x is a level-n grid point)."""
        if self.period != (0,):
            return False
        return all(d == 0 for d in self.preperiod[n:])

    def __str__(self) -> str:
        head = " ".join(str(d) for d in self.preperiod)
        tail = " ".join(str(d) for d in self.period)
        return f"0.{head}{' ' if head else ''}({tail})"


@dataclass(frozen=True)
class OmegaSeq:
    """Eventually periodic sequence over the alphabet {0,...,N}.

    Used for expansions in a (typically non-integer) base beta.
    """

    N: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre, per = _canonical(tuple(self.preperiod), tuple(self.period))
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)
        if self.N < 1:
            raise DomainError(f"N must be a positive integer, got {self.N}")
        if not self.period:
            raise DomainError("period must be nonempty")
        for d in self.preperiod + self.period:
            if not (0 <= d <= self.N):
                raise DomainError(f"digit {d} outside 0..{self.N}")

    def digit(self, i: int) -> int:
        if i < 1:
            raise DomainError("digit index starts at 1")
        L = len(self.preperiod)
        if i <= L:
            return self.preperiod[i - 1]
        return self.period[(i - L - 1) % len(self.period)]

    def digits(self, n: int) -> list[int]:
        return [self.digit(i) for i in range(1, n + 1)]

    def iter_digits(self) -> Iterator[int]:
        yield from self.preperiod
        while True:
            yield from self.period

    def __str__(self) -> str:
        head = " ".join(str(d) for d in self.preperiod)
        tail = " ".join(str(d) for d in self.period)
        return f"{head}{' ' if head else ''}({tail})"


@dataclass(frozen=True)
class Params:
    """Validated parameter pair (N, a) with the derived slope parameter b.

    b solves (N+1)a - Nb = 1, so 0 < b < a < 1 on the admissible range.
    a (and hence b) may be a Fraction for exact work or a float.
    """

    N: int
    a: Number
    b: Number


def make_params(N: int, a: Number) -> Params:
    """Validate (N, a) and derive b = ((N+1)a - 1)/N.

    Raises DomainError unless N >= 1 and 1/(N+1) < a < 1; values of a at or
    below 1/(N+1) give a Cantor-type or singular function and are out of scope.
    """
    if not isinstance(N, int) or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    if isinstance(a, Rational) and not isinstance(a, Fraction):
        a = Fraction(a)
    lo = Fraction(1, N + 1)
    if not (lo < a < 1):
        raise DomainError(f"a must lie in (1/{N + 1}, 1), got {a}")
    b = ((N + 1) * a - 1) / N
    return Params(N=N, a=a, b=b)


def digits_of_rational(numerator: int, denominator: int, N: int) -> DigitSeq:
    """Canonical base-(2N+1) expansion of a rational in (0,1) by long division.

    The returned sequence reconstructs the input exactly via DigitSeq.value().
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if denominator == 0:
        raise DomainError("zero denominator")
    g = math.gcd(numerator, denominator)
    num, den = numerator // g, denominator // g
    if den < 0:
        num, den = -num, -den
    if not (0 < Fraction(num, den) < 1):
        raise DomainError(f"{numerator}/{denominator} not in (0,1)")
    B = 2 * N + 1
    digits: list[int] = []
    seen: dict[int, int] = {}
    r = num
    while True:
        if r == 0:
            return DigitSeq(N, tuple(digits), (0,))
        if r in seen:
            k = seen[r]
            return DigitSeq(N, tuple(digits[:k]), tuple(digits[k:]))
        seen[r] = len(digits)
        r *= B
        digits.append(r // den)
        r %= den


def digits_of(x: Rational | Fraction, N: int) -> DigitSeq:
    """Convenience wrapper: canonical expansion of an exact rational x."""
    q = Fraction(x)
    return digits_of_rational(q.numerator, q.denominator, N)


def odd_count_prefix(d: DigitSeq, n: int) -> int:
    """Number of odd digits among the first n digits; 0 for n = 0."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    L = len(d.preperiod)
    m = len(d.period)
    pre_odd = sum(1 for t in d.preperiod[: min(n, L)] if t % 2 == 1)
    if n <= L:
        return pre_odd
    k = n - L
    per_odd = sum(1 for t in d.period if t % 2 == 1)
    full, rest = divmod(k, m)
    return pre_odd + full * per_odd + sum(
        1 for t in d.period[:rest] if t % 2 == 1
    )


def odd_total(d: DigitSeq) -> int | float:
    """Total number of odd digits; math.inf when the period contains one."""
    if any(t % 2 == 1 for t in d.period):
        return math.inf
    return sum(1 for t in d.preperiod if t % 2 == 1)


def odd_liminf_frequency(d: DigitSeq) -> Fraction:
    """Limiting frequency of odd digits, exact; the limit exists for periodic tails."""
    per_odd = sum(1 for t in d.period if t % 2 == 1)
    return Fraction(per_odd, len(d.period))


def parse_digitseq(text: str, N: int) -> DigitSeq:
    """Parse the text form "0.d1 d2 (p1 p2)" (the leading "0." is optional)."""
    body = text.strip()
    if body.startswith("0."):
        body = body[2:]
    if "(" not in body or not body.rstrip().endswith(")"):
        raise DomainError(f"malformed digit sequence {text!r}")
    head, _, rest = body.partition("(")
    per_text = rest.rstrip()[:-1]
    pre = tuple(int(t) for t in head.split())
    per = tuple(int(t) for t in per_text.split())
    return DigitSeq(N, pre, per)


def parse_omegaseq(text: str, N: int) -> OmegaSeq:
    """Parse the text form "d1 d2 (p1 p2)"."""
    body = text.strip()
    if "(" not in body or not body.endswith(")"):
        raise DomainError(f"malformed sequence {text!r}")
    head, _, rest = body.partition("(")
    per = tuple(int(t) for t in rest[:-1].split())
    pre = tuple(int(t) for t in head.split())
    return OmegaSeq(N, pre, per)
