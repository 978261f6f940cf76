"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timing.
"""

import io
import math
import random
import time
from fractions import Fraction

import numpy as np

from okamoto import (
    DerivativeTag,
    PrecisionError,
    classify_derivative,
    count_expansions,
    digits_of,
    enumerate_infinite_points,
    is_univoque,
    komornik_loreti,
    make_params,
    pi_beta,
    sample_graph,
    thresholds,
    univoque_entropy_bounds,
)
from okamoto.cli import run as cli_run
from okamoto.spectrum import critical_frequency, frequency_dimension, threshold_asymptotics

from conftest import (
    TREND_FOR_TAG,
    derivative_witness_trend,
    random_digitseq,
    random_omegaseq_for_oracle,
)

F = Fraction


def report(num: int, ok: bool, detail: str) -> None:
    print(f"[acceptance] criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


# four-decimal reference table of the five thresholds for N = 1..10
# (a_min, a0_tilde, a0_star, a_inf_hat, a_inf_star per row)
REFERENCE_TABLE = {
    1: (0.5000, 0.5592, 0.6667, 0.5598, 0.6180),
    2: (0.3333, 0.3835, 0.4667, 0.4047, 0.5000),
    3: (0.2500, 0.2914, 0.3571, 0.3444, 0.3660),
    4: (0.2000, 0.2349, 0.2889, 0.2728, 0.3333),
    5: (0.1667, 0.1967, 0.2424, 0.2534, 0.2638),
    6: (0.1429, 0.1692, 0.2088, 0.2104, 0.2500),
    7: (0.1250, 0.1484, 0.1833, 0.2014, 0.2071),
    8: (0.1111, 0.1321, 0.1634, 0.1724, 0.2000),
    9: (0.1000, 0.1191, 0.1474, 0.1674, 0.1708),
    10: (0.0909, 0.1084, 0.1342, 0.1463, 0.1667),
}


def test_criterion_1_threshold_table():
    """All 50 reference cells within 5e-4; the N=1 a_inf_hat cell is the
    documented special case (compared against the computed critical base)."""
    t0 = time.time()
    out = io.StringIO()
    code = cli_run(["thresholds", "--N", "1..10", "--csv"], stdout=out)
    assert code == 0
    lines = out.getvalue().strip().split("\n")
    assert lines[0] == "N,a_min,a0_tilde,a0_star,a_inf_hat,a_inf_star"
    computed = {}
    for line in lines[1:]:
        parts = line.split(",")
        computed[int(parts[0])] = tuple(float(v) for v in parts[1:])
    elapsed = time.time() - t0

    bad_cells = []
    for N, ref_row in REFERENCE_TABLE.items():
        for col, (got, ref) in enumerate(zip(computed[N], ref_row)):
            if N == 1 and col == 3:
                # documented discrepancy: must match the computed critical
                # base to 1e-6 and sit within 5e-4 of it or of the printed value
                exact = 1.0 / komornik_loreti(1)
                if abs(got - exact) > 1e-6 or min(abs(got - exact), abs(got - ref)) > 5e-4:
                    bad_cells.append((N, col, got, ref))
                continue
            if abs(got - ref) > 5e-4:
                bad_cells.append((N, col, got, ref))
    for N, col, got, ref in bad_cells:
        name = ("a_min", "a0_tilde", "a0_star", "a_inf_hat", "a_inf_star")[col]
        print(
            f"    cell mismatch: N={N} {name}: computed {got:.6f} vs printed "
            f"{ref:.4f} (|diff| = {abs(got - ref):.2e})"
        )
    ok = not bad_cells and elapsed < 10.0
    report(
        1,
        ok,
        f"{50 - len(bad_cells)}/50 table cells within tolerance in {elapsed:.1f}s"
        + ("" if not bad_cells else "; mismatched cells follow the defining equations, not the printed table"),
    )


# frozen (N, a, x, probe levels, expected class) suite spanning all outcomes;
# includes the four worked classification examples
CLASSIFIER_SUITE = [
    # PLUS_INFINITY (17)
    (1, "13/25", "1/4", 16, "PLUS_INFINITY"),
    (1, "13/25", "3/4", 16, "PLUS_INFINITY"),
    (1, "13/25", "1/36", 16, "PLUS_INFINITY"),
    (1, "11/20", "1/4", 16, "PLUS_INFINITY"),
    (1, "11/20", "11/12", 16, "PLUS_INFINITY"),
    (1, "11/20", "1/36", 16, "PLUS_INFINITY"),
    (1, "29/50", "1/4", 16, "PLUS_INFINITY"),
    (1, "29/50", "3/4", 16, "PLUS_INFINITY"),
    (1, "29/50", "1/12", 16, "PLUS_INFINITY"),
    (1, "29/50", "11/12", 16, "PLUS_INFINITY"),
    (2, "2/5", "1/2", 13, "PLUS_INFINITY"),
    (2, "9/20", "1/2", 11, "PLUS_INFINITY"),
    (2, "47/100", "1/2", 13, "PLUS_INFINITY"),
    (2, "2/5", "1/6", 15, "PLUS_INFINITY"),
    (3, "9/25", "3/8", 12, "PLUS_INFINITY"),
    (3, "7/20", "3/8", 12, "PLUS_INFINITY"),
    (3, "3/10", "3/8", 12, "PLUS_INFINITY"),
    # MINUS_INFINITY (12)
    (1, "29/50", "5/12", 18, "MINUS_INFINITY"),
    (1, "29/50", "7/12", 18, "MINUS_INFINITY"),
    (1, "29/50", "13/36", 18, "MINUS_INFINITY"),
    (1, "29/50", "29/36", 18, "MINUS_INFINITY"),
    (1, "29/50", "5/108", 18, "MINUS_INFINITY"),
    (1, "11/20", "5/12", 20, "MINUS_INFINITY"),
    (1, "11/20", "7/12", 20, "MINUS_INFINITY"),
    (1, "13/25", "5/12", 22, "MINUS_INFINITY"),
    (1, "13/25", "7/12", 22, "MINUS_INFINITY"),
    (2, "2/5", "3/10", 15, "MINUS_INFINITY"),
    (2, "9/20", "3/10", 13, "MINUS_INFINITY"),
    (2, "12/25", "3/10", 13, "MINUS_INFINITY"),
    # ZERO (14)
    (1, "13/25", "1/2", 14, "ZERO"),
    (1, "13/25", "1/5", 14, "ZERO"),
    (1, "13/25", "2/5", 14, "ZERO"),
    (1, "13/25", "1/8", 14, "ZERO"),
    (1, "11/20", "1/2", 14, "ZERO"),
    (1, "29/50", "1/2", 14, "ZERO"),
    (1, "3/5", "1/2", 14, "ZERO"),
    (2, "2/5", "1/4", 11, "ZERO"),
    (2, "2/5", "3/4", 11, "ZERO"),
    (2, "19/50", "1/4", 9, "ZERO"),
    (2, "19/50", "3/4", 9, "ZERO"),
    (3, "3/10", "1/2", 10, "ZERO"),
    (3, "27/100", "1/6", 8, "ZERO"),
    (3, "27/100", "1/2", 8, "ZERO"),
    # NOT_DIFFERENTIABLE (17)
    (1, "7/10", "1/4", 14, "NOT_DIFFERENTIABLE"),
    (1, "7/10", "1/2", 14, "NOT_DIFFERENTIABLE"),
    (1, "7/10", "5/12", 14, "NOT_DIFFERENTIABLE"),
    (1, "7/10", "2/5", 14, "NOT_DIFFERENTIABLE"),
    (1, "17/25", "1/4", 14, "NOT_DIFFERENTIABLE"),
    (1, "17/25", "1/2", 14, "NOT_DIFFERENTIABLE"),
    (1, "3/4", "1/4", 14, "NOT_DIFFERENTIABLE"),
    (1, "3/4", "1/2", 14, "NOT_DIFFERENTIABLE"),
    (1, "63/100", "1/4", 14, "NOT_DIFFERENTIABLE"),
    (1, "13/20", "1/4", 14, "NOT_DIFFERENTIABLE"),
    (2, "2/5", "1/12", 9, "NOT_DIFFERENTIABLE"),
    (2, "9/20", "1/6", 9, "NOT_DIFFERENTIABLE"),
    (2, "12/25", "1/4", 9, "NOT_DIFFERENTIABLE"),
    (2, "47/100", "1/6", 9, "NOT_DIFFERENTIABLE"),
    (2, "19/50", "1/12", 9, "NOT_DIFFERENTIABLE"),
    (3, "8/25", "3/16", 8, "NOT_DIFFERENTIABLE"),
    (3, "9/25", "1/2", 8, "NOT_DIFFERENTIABLE"),
]


def test_criterion_2_classifier_vs_probe():
    t0 = time.time()
    assert len(CLASSIFIER_SUITE) == 60
    seen_tags = set()
    worked_examples = {
        (1, F(29, 50), F(1, 4)),
        (1, F(29, 50), F(5, 12)),
        (1, F(13, 25), F(1, 2)),
        (1, F(7, 10), F(1, 4)),
    }
    consistent = 0
    for N, a_str, x_str, levels, want in CLASSIFIER_SUITE:
        a, x = F(a_str), F(x_str)
        worked_examples.discard((N, a, x))
        p = make_params(N, a)
        verdict = classify_derivative(p, digits_of(x, N))
        trend = derivative_witness_trend(p, x, levels)
        if verdict.tag.value == want and trend == TREND_FOR_TAG[want]:
            consistent += 1
        else:
            print(f"    inconsistent: N={N} a={a} x={x}: {verdict.tag.value} vs {trend}")
        seen_tags.add(want)
    elapsed = time.time() - t0
    ok = consistent == 60 and len(seen_tags) == 4 and not worked_examples and elapsed < 30
    report(2, ok, f"{consistent}/60 classifier/probe consistent in {elapsed:.1f}s")


def test_criterion_3_regime_exclusions():
    rng = random.Random(1689)
    ok = True
    for N in (1, 2):
        t = thresholds(N)
        a_no_zero = F(t.a0_star.numerator, t.a0_star.denominator) + F(1, 100)
        a_no_inf = F(round(float(t.a_inf_star) * 10**6), 10**6) + F(1, 100)
        p_zero = make_params(N, a_no_zero)
        p_inf = make_params(N, a_no_inf)
        zeros = infs = 0
        for _ in range(500):
            d = random_digitseq(rng, N)
            if classify_derivative(p_zero, d).tag == DerivativeTag.ZERO:
                zeros += 1
            if classify_derivative(p_inf, d).tag in (
                DerivativeTag.PLUS_INFINITY,
                DerivativeTag.MINUS_INFINITY,
            ):
                infs += 1
        if zeros or infs:
            ok = False
            print(f"    N={N}: {zeros} zero verdicts above a0*, {infs} infinite above a_inf*")
    report(3, ok, "500-sample regime scans clean for N=1,2")


def test_criterion_4_dimension_curve():
    ok = True
    details = []
    for N in (1, 2):
        t = thresholds(N)
        at_max = frequency_dimension(N, critical_frequency(N, t.a0_tilde))
        lo = float(t.a_min) + 1e-6
        hi = float(t.a0_star) - 1e-6
        left = frequency_dimension(N, critical_frequency(N, lo))
        right = frequency_dimension(N, critical_frequency(N, hi))
        left_lim = math.log(N + 1) / math.log(2 * N + 1)
        right_lim = math.log(N) / math.log(2 * N + 1)
        grid = np.linspace(lo, hi, 200)
        vals = [frequency_dimension(N, critical_frequency(N, a)) for a in grid]
        second_diffs = [vals[i - 1] - 2 * vals[i] + vals[i + 1] for i in range(1, 199)]
        checks = {
            "max at a0_tilde": abs(at_max - 1.0) <= 1e-6,
            "max over grid": max(vals) <= at_max + 1e-9,
            "left endpoint": abs(left - left_lim) <= 1e-3,
            "right endpoint": abs(right - right_lim) <= 1e-3,
            "concavity": max(second_diffs) <= 1e-9,
        }
        for name, good in checks.items():
            if not good:
                ok = False
                details.append(f"N={N}: {name} failed")
    report(4, ok, "; ".join(details) if details else "curve peak, endpoints, concavity verified for N=1,2")


def test_criterion_5_oracle_equivalence():
    combos = [(1, 1.5), (1, 1.7), (1, 1.9), (2, 1.8), (2, 2.2), (2, 2.7)]
    total = agree = escalations = 0
    for N, beta in combos:
        rng = random.Random(hash((N, int(beta * 10))) & 0xFFFF)
        bq = F(beta)
        for _ in range(200):
            w = random_omegaseq_for_oracle(rng, N, bq)
            try:
                uni = is_univoque(w, N, beta)
            except PrecisionError:
                escalations += 1
                continue
            x = pi_beta(w, bq)
            cnt = count_expansions(x, N, beta, cap=2, depth=60)
            total += 1
            agree += uni == (cnt.count == 1 and not cnt.saturated)
    ok = agree == total and escalations < 0.05 * 1200
    report(5, ok, f"{agree}/{total} agreement, {escalations} precision escalations")


def test_criterion_6_entropy_bounds():
    t0 = time.time()
    eb_17 = univoque_entropy_bounds(1, 1.7, 25)
    eb_15 = univoque_entropy_bounds(1, 1.5, 15)
    eb_199 = univoque_entropy_bounds(1, 1.99, 20)
    elapsed = time.time() - t0
    checks = {
        "upper(1.7, d25) <= 0.05": eb_17.upper <= 0.05,
        "upper(1.5, d15) == 0": eb_15.upper == 0.0,
        "lower(1.99, d20) >= 0.9": eb_199.lower >= 0.9,
        "runtime < 120s": elapsed < 120,
    }
    bad = [k for k, v in checks.items() if not v]
    report(
        6,
        not bad,
        f"upper(1.7)={eb_17.upper:.4f}, upper(1.5)={eb_15.upper:.4f}, "
        f"lower(1.99)={eb_199.lower:.4f} in {elapsed:.0f}s"
        + (f"; failed: {bad}" if bad else ""),
    )


def test_criterion_7_box_counting():
    p = make_params(1, F(5, 6))
    g = sample_graph(p, 6)
    B = 3
    log_counts = []
    log_inv_eps = []
    # column extremes at each scale are attained at cell endpoints, so the
    # depth-6 sample gives exact ranges; drop the two coarsest scales where
    # the +1-box-per-column boundary term dominates
    for k in range(3, 7):
        step = B ** (6 - k)
        eps = float(B) ** (-k)
        boxes = 0
        for j in range(B**k):
            col = g.ys[j * step : (j + 1) * step + 1]
            boxes += int(math.floor(col.max() / eps) - math.floor(col.min() / eps)) + 1
        log_counts.append(math.log(boxes))
        log_inv_eps.append(k * math.log(B))
    slope = np.polyfit(log_inv_eps, log_counts, 1)[0]
    closed = 1 + math.log(7 / 3) / math.log(3)
    ok = abs(slope - closed) < 0.05
    report(7, ok, f"box-count slope {slope:.4f} vs closed form {closed:.4f}")


def test_criterion_8_correspondence():
    res = enumerate_infinite_points(1, F(29, 50), max_prefix_len=2, max_period=3)
    all_infinite = len(res.points) > 0 and not res.rejected
    xs = [c.x for c in res.points]
    includes = F(1, 4) in xs and F(5, 12) in xs
    res_empty = enumerate_infinite_points(1, F(63, 100), max_prefix_len=2, max_period=3)
    empty = not res_empty.points and not res_empty.rejected
    ok = all_infinite and includes and empty
    report(
        8,
        ok,
        f"{len(res.points)} points at a=0.58 all classified infinite "
        f"(includes 1/4, 5/12: {includes}); empty at a=0.63: {empty}",
    )


def test_criterion_9_threshold_ordering_and_asymptotics():
    ok = True
    details = []
    for N in range(5, 11):
        t = thresholds(N)
        chain = (
            float(t.a_min),
            t.a0_tilde,
            float(t.a0_star),
            t.a_inf_hat,
            float(t.a_inf_star),
        )
        if not all(chain[i] < chain[i + 1] for i in range(4)):
            ok = False
            details.append(f"ordering fails at N={N}: {chain}")
    rep = threshold_asymptotics([100])
    limits = rep.limits
    row = rep.rows[-1][1:]
    for value, limit in zip(row, limits):
        if abs(value - limit) > 0.05 * limit:
            ok = False
            details.append(f"N=100 scaled threshold {value:.4f} off limit {limit:.4f}")
    report(9, ok, "; ".join(details) if details else "ordering N=5..10 and N=100 asymptotics verified")


def test_figure_data_shape():
    # graph emitter output: bounded, non-monotone, symmetric under x -> 1-x
    for N, a in ((1, F(5, 6)), (2, F(3, 5))):
        g = sample_graph(make_params(N, a), 4)
        ys = g.ys
        assert np.all(ys >= 0) and np.all(ys <= 1)
        diffs = np.diff(ys)
        assert (diffs > 0).any() and (diffs < 0).any()
        assert np.max(np.abs(ys + ys[::-1] - 1.0)) <= 1e-9
    print("[acceptance] figure-shape checks: PASS - graph data bounded, non-monotone, symmetric")
