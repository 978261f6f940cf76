"""Expansions in a non-integer base beta over the alphabet {0,...,N}.

Covers the projection map, shift/complement operations, greedy-style
expansions of 1, membership in the set of uniquely expandable points, a
branching oracle that counts expansions, Thue-Morse style sequences with the
associated critical bases, and entropy-based dimension bounds for the set of
points with a unique expansion.

Numeric policy: a beta given as an int or Fraction is treated as exact and
strict comparisons are decided in rational arithmetic; a beta given as a float
is treated as an approximation, and any strict comparison that lands within
1e-12 of a boundary raises PrecisionError instead of guessing.

All operations are pure.  The word counting in univoque_entropy_bounds can be
partitioned over chunks of the word index range; partial counts add.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import ConvergenceError, DomainError, PrecisionError, ResourceError
from .numdigits import Number, OmegaSeq

TIE_TOL = 1e-12
DEFAULT_FRONTIER_CAP = 50_000_000


def _as_exact(beta) -> Fraction | None:
    if isinstance(beta, Rational):
        return Fraction(beta)
    return None


def pi_beta(w: OmegaSeq, beta) -> Number:
    """Projection sum(w_j * beta^-j), in closed form for eventually periodic w.

    Exact (Fraction) when beta is rational, float otherwise.
    """
    if beta <= 1:
        raise DomainError(f"beta must exceed 1, got {beta}")
    bq = _as_exact(beta)
    b = bq if bq is not None else float(beta)
    L = len(w.preperiod)
    m = len(w.period)
    head = sum(d * b ** -(i + 1) for i, d in enumerate(w.preperiod))
    block = sum(d * b ** (m - j - 1) for j, d in enumerate(w.period))
    per_val = block / (b**m - 1)
    return head + b**-L * per_val


def shift(w: OmegaSeq, n: int = 1) -> OmegaSeq:
    """Left shift by n digits; eventual periodicity is preserved."""
    if n < 0:
        raise DomainError("shift count must be nonnegative")
    L = len(w.preperiod)
    m = len(w.period)
    if n <= L:
        return OmegaSeq(w.N, w.preperiod[n:], w.period)
    k = (n - L) % m
    return OmegaSeq(w.N, (), w.period[k:] + w.period[:k])


def complement(w: OmegaSeq) -> OmegaSeq:
    """Digitwise reflection d -> N - d."""
    return OmegaSeq(
        w.N,
        tuple(w.N - d for d in w.preperiod),
        tuple(w.N - d for d in w.period),
    )


@dataclass(frozen=True)
class QuasiGreedyResult:
    """Expansion of 1: the largest digit sequence not ending in all zeros.

    When a period is detected (and certified) within the length budget, `seq`
    holds the exact eventually periodic sequence and `truncated` is False.
    Otherwise `digits` is a plain prefix and `truncated` is True.
    """

    N: int
    digits: tuple[int, ...]
    seq: OmegaSeq | None
    truncated: bool

    def digits_extended(self, length: int) -> list[int]:
        """First `length` digits; a truncated prefix is padded with N.

        Padding with the maximal digit only enlarges the sequence
        lexicographically, so upper-bound uses remain valid.
        """
        if self.seq is not None:
            return self.seq.digits(length)
        out = list(self.digits[:length])
        out.extend([self.N] * (length - len(out)))
        return out


def quasi_greedy_one(N: int, beta, max_len: int) -> QuasiGreedyResult:
    """Digits of the quasi-greedy expansion of 1 in base beta over {0,...,N}.

    Each digit is the largest that leaves a strictly positive remainder:
    d_k = min(N, ceil(beta * r) - 1), r <- beta*r - d_k, starting from r = 1.
    Exact rational beta gives exact period detection; for float beta a
    detected period is only returned once it passes the closed-form check
    |pi_beta(candidate) - 1| <= 1e-9.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if max_len < 1:
        raise DomainError("max_len must be >= 1")
    if not (1 < beta <= N + 1):
        raise DomainError(f"beta must lie in (1, {N + 1}], got {beta}")
    bq = _as_exact(beta)
    digits: list[int] = []
    if bq is not None:
        r = Fraction(1)
        seen: dict[Fraction, int] = {}
        for i in range(max_len):
            if r in seen:
                j = seen[r]
                seq = OmegaSeq(N, tuple(digits[:j]), tuple(digits[j:i]))
                return QuasiGreedyResult(N, tuple(digits[:i]), seq, False)
            seen[r] = i
            br = bq * r
            d = min(N, math.ceil(br) - 1)
            digits.append(d)
            r = br - d
        return QuasiGreedyResult(N, tuple(digits), None, True)
    b = float(beta)
    rems: list[float] = []
    r = 1.0
    for i in range(max_len):
        for j in range(i):
            if abs(rems[j] - r) <= 1e-10:
                cand = OmegaSeq(N, tuple(digits[:j]), tuple(digits[j:i]))
                if cand.period != (0,) and abs(float(pi_beta(cand, b)) - 1.0) <= 1e-9:
                    return QuasiGreedyResult(N, tuple(digits[:i]), cand, False)
        rems.append(r)
        br = b * r
        # a product within roundoff of an integer is treated as that integer,
        # matching the exact rule ceil(k) - 1 = k - 1; the certification above
        # still vets any period built from snapped digits
        nearest = round(br)
        if abs(br - nearest) <= 1e-9 and nearest >= 1:
            br = float(nearest)
        d = min(N, math.ceil(br) - 1)
        if d < 0:
            d = 0
        digits.append(d)
        r = br - d
    return QuasiGreedyResult(N, tuple(digits), None, True)


def is_univoque(w: OmegaSeq, N: int, beta) -> bool:
    """Whether w projects to a point of the univoque set in base beta.

    Criterion: pi(shift^n(w)) < 1 and pi(shift^n(complement(w))) < 1 for all
    n >= 0, applied verbatim.  For eventually periodic w only finitely many
    distinct shifts exist, so the check is exact.  Endpoint sequences (the
    constant 0 and constant N sequences) fail the criterion by definition even
    though they are the unique expansions of their values.
    """
    if w.N != N:
        raise DomainError(f"sequence alphabet N={w.N} does not match N={N}")
    if not (1 < beta <= N + 1):
        raise DomainError(f"beta must lie in (1, {N + 1}], got {beta}")
    bq = Fraction(beta)
    K = Fraction(N) / (bq - 1)
    approx = isinstance(beta, float)
    n_tails = len(w.preperiod) + len(w.period)
    ambiguous_at = None
    for n in range(n_tails):
        v = pi_beta(shift(w, n), bq)
        # complement tail value is K - v, so both conditions read K-1 < v < 1
        if approx and (abs(v - 1) <= TIE_TOL or abs(v - (K - 1)) <= TIE_TOL):
            ambiguous_at = (n, v)
            continue
        if not (K - 1 < v < 1):
            return False  # definitive regardless of any ambiguous tail
    if ambiguous_at is not None:
        n, v = ambiguous_at
        raise PrecisionError(
            f"projection value {float(v):.17g} is within {TIE_TOL} of a "
            f"strict boundary at shift {n}; supply beta as an exact rational"
        )
    return True


@dataclass(frozen=True)
class ExpansionCount:
    """Result of the branching count; `saturated` means at least `count`."""

    count: int
    saturated: bool

    @property
    def unique(self) -> bool:
        return self.count == 1 and not self.saturated

    def __str__(self) -> str:
        return f"AT_LEAST({self.count})" if self.saturated else str(self.count)


def count_expansions(x, N: int, beta, cap: int = 10, depth: int = 40) -> ExpansionCount:
    """Count digit prefixes surviving `depth` levels of t -> beta*t - d.

    A branch with digit d in {0,...,N} survives when 0 <= beta*t - d <=
    N/(beta-1).  Branches never die, so once the count reaches `cap` the
    result AT_LEAST(cap) is sound for every larger depth.  Exact rational
    arithmetic throughout (a float beta is used via its exact binary value).
    """
    if cap < 1 or depth < 1:
        raise DomainError("cap and depth must be >= 1")
    if beta <= 1:
        raise DomainError(f"beta must exceed 1, got {beta}")
    bq = Fraction(beta)
    K = Fraction(N) / (bq - 1)
    xq = Fraction(x)
    if not (0 <= xq <= K):
        raise DomainError(f"x must lie in [0, N/(beta-1)] = [0, {K}], got {x}")
    frontier = [xq]
    for _ in range(depth):
        nxt: list[Fraction] = []
        for t in frontier:
            bt = bq * t
            for d in range(N + 1):
                u = bt - d
                if 0 <= u <= K:
                    nxt.append(u)
                    if len(nxt) >= cap:
                        return ExpansionCount(cap, True)
        frontier = nxt
    return ExpansionCount(len(frontier), False)


def thue_morse_prefix(n: int) -> list[int]:
    """First n terms (from index 0) of the parity-of-bit-count sequence."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return [bin(j).count("1") % 2 for j in range(n)]


def generalized_tm_prefix(N: int, n: int) -> list[int]:
    """First n digits (index starting at 1) of the base sequence for beta_c(N).

    For N = 2m-1 the i-th digit is m-1+t_i; for N = 2m it is m+t_i-t_{i-1},
    where t is the parity-of-bit-count sequence and t_0 = 0.
    """
    if N < 1 or n < 1:
        raise DomainError("N and n must be >= 1")
    t = thue_morse_prefix(n + 1)
    if N % 2 == 1:
        m = (N + 1) // 2
        return [m - 1 + t[i] for i in range(1, n + 1)]
    m = N // 2
    return [m + t[i] - t[i - 1] for i in range(1, n + 1)]


def generalized_golden_ratio(N: int) -> int | float:
    """Base below which no point has a unique expansion over {0,...,N}.

    Exact integer m+1 for N = 2m; (m + sqrt(m^2+4m))/2 for N = 2m-1.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if N % 2 == 0:
        return N // 2 + 1
    m = (N + 1) // 2
    return (m + math.sqrt(m * m + 4 * m)) / 2


def komornik_loreti(N: int, tol: float = 1e-12) -> float:
    """Critical base: the unique root of pi_beta(tm-sequence) = 1.

    Bisection on the strictly decreasing map beta -> pi_beta(tau), with the
    sequence truncated once the geometric tail bound drops below tol/10.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    G = float(generalized_golden_ratio(N))
    max_digit = (N + 1) // 2 + (0 if N % 2 == 1 else 1)
    k = math.ceil(math.log(10 * max_digit / (tol * (G - 1))) / math.log(G)) + 4
    digits = generalized_tm_prefix(N, k)

    def f(beta: float) -> float:
        s = 0.0
        for d in reversed(digits):
            s = (s + d) / beta
        return s - 1.0

    lo, hi = G, float(N + 1)
    if not (f(lo) > 0 > f(hi)):
        raise ConvergenceError(
            f"bisection bracket failed for N={N}: f({lo})={f(lo)}, f({hi})={f(hi)}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * 1e-4:
            break
    return 0.5 * (lo + hi)


def resolve_beta(spec):
    """Turn a beta specification into a number.

    Accepts a number as-is; strings "kl:N" and "gr:N" resolve to the computed
    critical base and generalized golden ratio; any other string is parsed as
    an exact rational ("5/6", "1.9", "2").
    """
    if not isinstance(spec, str):
        return spec
    text = spec.strip()
    for prefix, fn in (("kl:", komornik_loreti), ("gr:", generalized_golden_ratio)):
        if text.startswith(prefix):
            try:
                n = int(text[len(prefix):])
            except ValueError:
                raise DomainError(f"malformed beta reference {spec!r}") from None
            return fn(n)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot parse beta value {spec!r}") from None


@dataclass(frozen=True)
class BetaContext:
    """A base together with the expansion of 1 used for admissibility checks."""

    N: int
    beta: Number
    alpha: QuasiGreedyResult

    @classmethod
    def create(cls, N: int, beta, alpha_len: int = 64) -> "BetaContext":
        return cls(N=N, beta=beta, alpha=quasi_greedy_one(N, beta, alpha_len))


@dataclass(frozen=True)
class EntropyBounds:
    """Dimension bounds for the univoque set, as entropy divided by log beta."""

    depth: int
    lower: float
    upper: float

    def to_json_obj(self) -> dict:
        return {"depth": self.depth, "lower": self.lower, "upper": self.upper}


def _suffix_automaton(N: int, alpha: list[int], n_states: int):
    """KMP-style automaton tracking the longest tight match against alpha.

    Returns (cap, delta): cap[L] is the largest next digit allowed when the
    longest current match has length L (the minimum of alpha over the border
    chain); delta[L, c] is the next match length.
    """
    fail = [0] * (n_states + 1)
    k = 0
    for i in range(1, n_states):
        while k and alpha[i] != alpha[k]:
            k = fail[k]
        if alpha[i] == alpha[k]:
            k += 1
        fail[i + 1] = k
    cap = np.zeros(n_states, dtype=np.int32)
    cap[0] = alpha[0]
    for L in range(1, n_states):
        cap[L] = min(alpha[L], cap[fail[L]])
    delta = np.zeros((n_states, N + 1), dtype=np.int32)
    for L in range(n_states):
        for c in range(N + 1):
            j = L
            while j and alpha[j] != c:
                j = fail[j]
            delta[L, c] = j + 1 if alpha[j] == c else 0
    return cap, delta


def _periodic_counts(N, beta_f, alpha, d, want_lower, chunk=1 << 22):
    """Counts over all (N+1)^d period words w, evaluated on w repeated.

    upper: words whose doubled form w.w passes every suffix-vs-alpha
    lexicographic constraint for both the word and its complement (the
    admissibility relaxation applied to the periodic extension).
    lower: among those, words whose periodic extension passes the exact
    projection criterion (every rotation value within the open interval).
    Words are processed as integer indices; digit columns are extracted only
    for the indices still alive, which keeps the scan cheap when the
    admissible language is thin.
    """
    A = N + 1
    total = A**d
    n_states = 2 * d + 1
    cap, delta = _suffix_automaton(N, alpha, n_states)
    place = A ** np.arange(d - 1, -1, -1, dtype=np.int64)
    K = N / (beta_f - 1.0)
    pows = beta_f ** -(np.arange(1, d + 1, dtype=float))
    C = np.empty((d, d))
    for k in range(d):
        for j in range(d):
            C[(k + j) % d, k] = pows[j]
    denom = 1.0 - beta_f ** (-d)
    hi_bound = denom
    lo_bound = (K - 1.0) * denom
    n_upper = 0
    n_lower = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        Lw = np.zeros(len(idx), dtype=np.int32)
        Lb = np.zeros(len(idx), dtype=np.int32)
        for t in range(2 * d):
            if idx.shape[0] == 0:
                break
            c = ((idx // place[t % d]) % A).astype(np.int32)
            keep = (c <= cap[Lw]) & ((N - c) <= cap[Lb])
            if not keep.all():
                idx = idx[keep]
                Lw = Lw[keep]
                Lb = Lb[keep]
                c = c[keep]
            Lw = delta[Lw, c]
            Lb = delta[Lb, N - c]
        n_upper += idx.shape[0]
        if want_lower and idx.shape[0]:
            W = ((idx[:, None] // place) % A).astype(np.float64)
            S = W @ C
            ok = (S.max(axis=1) < hi_bound) & (S.min(axis=1) > lo_bound)
            n_lower += int(ok.sum())
    return n_upper, (n_lower if want_lower else None)


def univoque_entropy_bounds(
    N: int,
    beta,
    depth: int = 20,
    frontier_cap: int = DEFAULT_FRONTIER_CAP,
) -> EntropyBounds:
    """Bounds on the dimension of the univoque set from period-word counts.

    upper: log(U_d)/(d log beta) where U_d counts length-d words whose
    periodic extension (and its complement) stays lexicographically at or
    below the expansion of 1 at every shift; the reported value is the
    minimum over the halving chain of depths, which makes it nonincreasing
    along doubling depths by construction.
    lower: log(L_d)/(d log beta) where L_d counts words whose periodic
    extension passes is_univoque's projection criterion; clamped to stay at
    or below the reported upper.  Counts of one or zero words carry no
    exponential content and report as 0.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if not (1 < beta < N + 1):
        raise DomainError(f"beta must lie in (1, {N + 1}), got {beta}")
    if depth < 2:
        raise DomainError("depth must be >= 2")
    if (N + 1) ** depth > frontier_cap:
        raise ResourceError(
            f"(N+1)^depth = {(N + 1) ** depth} words exceed the cap of {frontier_cap}"
        )
    beta_f = float(beta)
    log_b = math.log(beta_f)
    alpha_len = max(64, 4 * depth)
    alpha = quasi_greedy_one(N, beta, alpha_len).digits_extended(alpha_len)
    chain = []
    dd = depth
    while dd >= 2:
        chain.append(dd)
        if dd == 2:
            break
        dd = (dd + 1) // 2
    upper = 1.0
    lower_raw = 0.0
    for dc in chain:
        u_count, l_count = _periodic_counts(N, beta_f, alpha, dc, want_lower=(dc == depth))
        u_val = math.log(u_count) / (dc * log_b) if u_count > 1 else 0.0
        upper = min(upper, max(0.0, min(1.0, u_val)))
        if dc == depth and l_count is not None and l_count > 1:
            lower_raw = math.log(l_count) / (dc * log_b)
    lower = max(0.0, min(lower_raw, upper))
    return EntropyBounds(depth=depth, lower=lower, upper=upper)
