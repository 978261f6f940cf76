"""Regime thresholds and Hausdorff-dimension quantities.

Five thresholds of the slope parameter a partition the family's behavior:
below a0_tilde the zero-derivative set has full measure, above a0_star it is
empty; below a_inf_hat the infinite-derivative set has positive dimension,
above a_inf_star it is empty, with a countable regime in between.  Closed
forms exist for a_min, a0_star and a_inf_star; a0_tilde and a_inf_hat are
pinned down by bisection against their defining equations (monotonicity makes
plain bisection robust; 200 iterations cap).

Grid evaluations parallelize pointwise; everything here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from . import betaexp
from .betaexp import EntropyBounds, komornik_loreti, generalized_golden_ratio
from .derivative import DerivativeTag, classify_derivative
from .errors import ConvergenceError, DomainError
from .numdigits import DigitSeq, Number, OmegaSeq, make_params

ASYMPTOTIC_LIMITS = (1.0, (1.0 + math.sqrt(2.0)) / 2.0, 1.5, 2.0, 2.0)
THRESHOLD_EQ_TOL = 1e-12


@dataclass(frozen=True)
class Thresholds:
    """The five regime boundaries for one N.

    Ordering for N >= 5: a_min < a0_tilde < a0_star < a_inf_hat < a_inf_star.
    """

    N: int
    a_min: Fraction
    a0_tilde: float
    a0_star: Fraction
    a_inf_hat: float
    a_inf_star: Number

    def as_row(self) -> tuple[float, float, float, float, float]:
        return (
            float(self.a_min),
            float(self.a0_tilde),
            float(self.a0_star),
            float(self.a_inf_hat),
            float(self.a_inf_star),
        )

    def to_json_obj(self) -> dict:
        return {
            "N": self.N,
            "a_min": float(self.a_min),
            "a0_tilde": float(self.a0_tilde),
            "a0_star": float(self.a0_star),
            "a_inf_hat": float(self.a_inf_hat),
            "a_inf_star": float(self.a_inf_star),
        }


def _bisect(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Bisection run down to floating-point collapse (200 iteration cap).

    tol only bounds how much wider than machine precision the caller will
    tolerate; the defining functions here have steep slopes, so stopping at a
    fixed interval width would leave residuals far above the width.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ConvergenceError(
            f"no sign change on bracket [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (fhi > 0):
            hi = mid
        else:
            lo = mid
        if hi - lo <= tol * 1e-4:
            break
    return 0.5 * (lo + hi)


def log_g(N: int, a: float) -> float:
    """log of the normalized defining polynomial for a0_tilde.

    g_N(a) = N^-N (2N+1)^(2N+1) a^(N+1) ((N+1)a - 1)^N is strictly increasing
    on (1/(N+1), 1) with g_N(a0_tilde) = 1; working in logs keeps large N
    stable.
    """
    return (
        (2 * N + 1) * math.log(2 * N + 1)
        + (N + 1) * math.log(a)
        + N * math.log((N + 1) * a - 1)
        - N * math.log(N)
    )


def a0_tilde(N: int, tol: float = 1e-12) -> float:
    lo = 1.0 / (N + 1)
    lo = lo + lo * 1e-15  # keep the log arguments positive
    while (N + 1) * lo - 1 <= 0:
        lo = math.nextafter(lo, 1.0)
    return _bisect(lambda a: log_g(N, a), lo, 1.0, tol)


def thresholds(N: int, tol: float = 1e-12) -> Thresholds:
    """All five thresholds for one N; closed forms where they exist."""
    if N < 1:
        raise DomainError("N must be >= 1")
    if tol <= 0:
        raise DomainError("tol must be positive")
    G = generalized_golden_ratio(N)
    a_inf_star: Number = Fraction(1, G) if isinstance(G, int) else 1.0 / G
    return Thresholds(
        N=N,
        a_min=Fraction(1, N + 1),
        a0_tilde=a0_tilde(N, tol),
        a0_star=Fraction(3 * N + 1, (N + 1) * (2 * N + 1)),
        a_inf_hat=1.0 / komornik_loreti(N, tol),
        a_inf_star=a_inf_star,
    )


def critical_frequency(N: int, a: Number) -> float:
    """Odd-digit frequency at which the approximant slopes neither grow nor decay.

    phi = log((2N+1)a) / (log(Na) - log((N+1)a - 1)); it satisfies
    (2N+1) a (b/a)^phi = 1.
    """
    af = float(a)
    if not (1.0 / (N + 1) < af < 1.0):
        raise DomainError(f"a must lie in (1/{N + 1}, 1), got {a}")
    return math.log((2 * N + 1) * af) / (
        math.log(N * af) - math.log((N + 1) * af - 1)
    )


def frequency_dimension(N: int, p: float) -> float:
    """Dimension of the set of points with odd-digit frequency p.

    -(p log(p/N) + (1-p) log((1-p)/(N+1))) / log(2N+1); equals 1 at
    p = N/(2N+1) and tends to log(N+1)/log(2N+1), log(N)/log(2N+1) at the
    endpoints.
    """
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0,1), got {p}")
    return -(
        p * math.log(p / N) + (1 - p) * math.log((1 - p) / (N + 1))
    ) / math.log(2 * N + 1)


def frequency_set_dimension(N: int, probs: Sequence[float]) -> float:
    """Dimension of the set of points with prescribed digit frequencies.

    Shannon entropy of the 2N+1 probabilities in base 2N+1, with the
    convention 0 log 0 = 0.
    """
    if len(probs) != 2 * N + 1:
        raise DomainError(f"expected {2 * N + 1} probabilities, got {len(probs)}")
    total = 0.0
    for q in probs:
        q = float(q)
        if q < 0:
            raise DomainError(f"negative probability {q}")
        total += q
    if abs(total - 1.0) > 1e-12:
        raise DomainError(f"probabilities sum to {total}, not 1")
    acc = 0.0
    for q in probs:
        q = float(q)
        if q > 0:
            acc -= q * math.log(q)
    return acc / math.log(2 * N + 1)


@dataclass(frozen=True)
class DimensionReport:
    """Dimension value (or bounds) with the regime label and echoed inputs."""

    N: int
    a: float
    regime: str
    value: float | tuple[float, float]
    depth: int | None = None
    note: str | None = None
    at_threshold: bool = False

    def to_json_obj(self) -> dict:
        obj: dict = {"N": self.N, "a": self.a, "regime": self.regime}
        if isinstance(self.value, tuple):
            obj["lower"], obj["upper"] = self.value
        else:
            obj["value"] = self.value
        if self.depth is not None:
            obj["depth"] = self.depth
        if self.note is not None:
            obj["note"] = self.note
        if self.at_threshold:
            obj["at_threshold"] = True
        return obj


def dim_zero_set(N: int, a: Number) -> DimensionReport:
    """Dimension report for the set where F' = 0.

    EMPTY (value 0) from a0_star on, including the endpoint;
    NULL_UNCOUNTABLE with value h(phi(a)) on [a0_tilde, a0_star); below
    a0_tilde the set has full measure and the reported value is the dimension
    of its complement.
    """
    t = thresholds(N)
    if not (t.a_min < a < 1):
        raise DomainError(f"a must lie in (1/{N + 1}, 1), got {a}")
    if a >= t.a0_star:
        return DimensionReport(N=N, a=float(a), regime="EMPTY", value=0.0)
    value = frequency_dimension(N, critical_frequency(N, a))
    if a >= t.a0_tilde:
        return DimensionReport(N=N, a=float(a), regime="NULL_UNCOUNTABLE", value=value)
    return DimensionReport(
        N=N,
        a=float(a),
        regime="FULL_MEASURE",
        value=value,
        note="set has full measure; value is the dimension of its complement",
    )


def dim_infinite_set(N: int, a: Number, depth: int = 20) -> DimensionReport:
    """Dimension report for the set where F' = +/-infinity.

    EMPTY from a_inf_star on; COUNTABLE_RATIONAL strictly between a_inf_hat
    and a_inf_star; UNCOUNTABLE_DIM_ZERO within 1e-12 of the computed
    a_inf_hat (flagged at_threshold, neighbors listed); below that, bounds
    log(1/a)/log(2N+1) times the univoque-set entropy bounds at the given
    depth.
    """
    t = thresholds(N)
    if not (t.a_min < a < 1):
        raise DomainError(f"a must lie in (1/{N + 1}, 1), got {a}")
    af = float(a)
    if a >= t.a_inf_star:
        return DimensionReport(N=N, a=af, regime="EMPTY", value=0.0)
    if abs(af - t.a_inf_hat) <= THRESHOLD_EQ_TOL:
        return DimensionReport(
            N=N,
            a=af,
            regime="UNCOUNTABLE_DIM_ZERO",
            value=0.0,
            at_threshold=True,
            note="at the countable/positive-dimension threshold; "
            "COUNTABLE_RATIONAL above, POSITIVE_DIM below",
        )
    if af > t.a_inf_hat:
        return DimensionReport(N=N, a=af, regime="COUNTABLE_RATIONAL", value=0.0)
    beta = 1 / Fraction(a) if isinstance(a, (int, Fraction)) else 1.0 / af
    eb: EntropyBounds = betaexp.univoque_entropy_bounds(N, beta, depth)
    factor = math.log(1.0 / af) / math.log(2 * N + 1)
    return DimensionReport(
        N=N,
        a=af,
        regime="POSITIVE_DIM",
        value=(factor * eb.lower, factor * eb.upper),
        depth=depth,
    )


@dataclass(frozen=True)
class PointCertificate:
    """A point of the infinite-derivative set with its construction witness."""

    x: Fraction
    prefix: tuple[int, ...]
    omega: OmegaSeq
    tag: DerivativeTag

    def to_json_obj(self) -> dict:
        return {
            "x": f"{self.x.numerator}/{self.x.denominator}",
            "x_float": float(self.x),
            "prefix": list(self.prefix),
            "omega": str(self.omega),
            "tag": self.tag.value,
        }


@dataclass(frozen=True)
class InfiniteSetEnumeration:
    """Points built as prefix + doubled univoque sequence, cross-validated.

    Candidates whose classification is not an infinite derivative are kept in
    `rejected` rather than silently dropped: for exceptional parameter values
    the construction can overshoot the true set.
    """

    points: tuple[PointCertificate, ...]
    rejected: tuple[PointCertificate, ...]


def _primitive_words(alphabet: int, length: int):
    for word in product(range(alphabet), repeat=length):
        for div in range(1, length):
            if length % div == 0 and word == word[:div] * (length // div):
                break
        else:
            yield word


def enumerate_infinite_points(
    N: int, a: Number, max_prefix_len: int, max_period: int
) -> InfiniteSetEnumeration:
    """All points prefix . doubled-omega with omega periodic and univoque.

    omega runs over primitive periodic sequences with period up to
    max_period that pass is_univoque in base 1/a; prefixes run over all
    base-(2N+1) words up to max_prefix_len.  Each emitted point carries its
    (prefix, omega) certificate and is independently classified; points whose
    verdict is not an infinite derivative land in `rejected`.
    """
    if max_prefix_len < 0 or max_period < 1:
        raise DomainError("max_prefix_len must be >= 0 and max_period >= 1")
    p = make_params(N, a)
    beta = 1 / Fraction(a) if isinstance(a, (int, Fraction)) else 1.0 / float(a)
    admissible: list[OmegaSeq] = []
    for plen in range(1, max_period + 1):
        for word in _primitive_words(N + 1, plen):
            w = OmegaSeq(N, (), word)
            if betaexp.is_univoque(w, N, beta):
                admissible.append(w)
    B = 2 * N + 1
    seen: dict[Fraction, PointCertificate] = {}
    order: list[Fraction] = []
    for plen in range(max_prefix_len + 1):
        for v in product(range(B), repeat=plen):
            for w in admissible:
                dseq = DigitSeq(N, v, tuple(2 * t for t in w.period))
                x = dseq.value()
                if x in seen:
                    continue
                verdict = classify_derivative(p, dseq)
                cert = PointCertificate(x=x, prefix=v, omega=w, tag=verdict.tag)
                seen[x] = cert
                order.append(x)
    points = []
    rejected = []
    for x in sorted(order):
        cert = seen[x]
        if cert.tag in (DerivativeTag.PLUS_INFINITY, DerivativeTag.MINUS_INFINITY):
            points.append(cert)
        else:
            rejected.append(cert)
    return InfiniteSetEnumeration(points=tuple(points), rejected=tuple(rejected))


@dataclass(frozen=True)
class AsymptoticsReport:
    """N-scaled thresholds against their large-N limits.

    rows hold (N, N*a_min, N*a0_tilde, N*a0_star, N*a_inf_hat, N*a_inf_star);
    deltas compare the last row against the limits 1, (1+sqrt 2)/2, 3/2, 2, 2.
    """

    rows: tuple[tuple[float, ...], ...]
    limits: tuple[float, ...] = field(default=ASYMPTOTIC_LIMITS)
    deltas: tuple[float, ...] = ()

    def to_json_obj(self) -> dict:
        names = ["N", "N*a_min", "N*a0_tilde", "N*a0_star", "N*a_inf_hat", "N*a_inf_star"]
        return {
            "columns": names,
            "rows": [list(r) for r in self.rows],
            "limits": list(self.limits),
            "last_row_deltas": list(self.deltas),
        }


def threshold_asymptotics(N_values: Sequence[int]) -> AsymptoticsReport:
    rows = []
    for N in N_values:
        t = thresholds(N)
        rows.append((float(N),) + tuple(N * v for v in t.as_row()))
    deltas = tuple(
        abs(rows[-1][i + 1] - ASYMPTOTIC_LIMITS[i]) for i in range(5)
    ) if rows else ()
    return AsymptoticsReport(rows=tuple(rows), deltas=deltas)


def dimension_curve(N: int, count: int = 200) -> list[tuple[float, float]]:
    """Grid samples of a -> h(phi(a)) on the open interval (a_min, a0_star)."""
    if count < 2:
        raise DomainError("count must be >= 2")
    lo = 1.0 / (N + 1)
    hi = float(Fraction(3 * N + 1, (N + 1) * (2 * N + 1)))
    out = []
    for k in range(count):
        a = lo + (hi - lo) * (k + 1) / (count + 1)
        out.append((a, frequency_dimension(N, critical_frequency(N, a))))
    return out
