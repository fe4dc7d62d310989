"""Acceptance suite: one criterion per test, one printed PASS/FAIL line each.

Run with -s to see the lines. Several criteria are deliberately heavy
(minutes, not seconds); the whole file is sized for a desktop run.
"""

import math
import time

from mahler import (fekete, mahler_jensen, mahler_quadrature,
                    moment_log_identity, moment_series, mq_norm, normalize,
                    roots_aberth, rudin_shapiro, verify)

M0_P2 = 1.8392867552141612  # real root of z^3 - z^2 - z - 1


def _report(num: int, label: str, ok: bool, detail: str) -> bool:
    print(f"criterion {num:02d} {label}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


def test_criterion_01_exact_identities():
    t0 = time.perf_counter()
    ok = True
    for n in range(0, 19):
        ok &= verify.check_flatness(n).passed
        ok &= verify.check_conjugate_pairing(n).passed
        if n >= 2:
            ok &= verify.check_lemma31(n).passed
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60.0
    assert _report(1, "exact identities n<=18", ok, f"{elapsed:.1f}s")


def test_criterion_02_even_node_flatness():
    t0 = time.perf_counter()
    worst = math.inf
    ok = True
    for n in range(2, 19):
        r = verify.check_lemma35(n)
        ok &= r.passed
        worst = min(worst, r.worst_margin)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 120.0
    assert _report(2, "even-node lower bound n<=18", ok,
                   f"min margin {worst:.4f}, {elapsed:.1f}s")


def test_criterion_03_parseval():
    worst = 0.0
    for n in range(1, 17):
        f = rudin_shapiro(n).p
        target = 2.0 ** (n / 2.0)
        worst = max(worst, abs(mq_norm(f, 2.0).value - target) / target)
    ok = worst <= 1e-8
    assert _report(3, "M_2 = 2^(n/2) n<=16", ok, f"worst rel {worst:.2e}")


def test_criterion_04_l4_ratio():
    f = rudin_shapiro(14).p
    ratio = mq_norm(f, 4.0).value ** 4 / (4.0 ** 15 / 3.0)
    ok = 0.98 <= ratio <= 1.02
    assert _report(4, "L4 fourth-power ratio n=14", ok, f"ratio {ratio:.6f}")


def test_criterion_05_even_moment_limits():
    f = rudin_shapiro(16).p
    scale = 2.0 ** (17 / 2.0)
    ok = True
    gaps = []
    for q in (4, 6, 8):
        got = mq_norm(f, float(q)).value / scale
        target = (q / 2.0 + 1.0) ** (-1.0 / q)
        rel = abs(got - target) / target
        gaps.append(f"q={q}:{rel:.2%}")
        ok &= rel <= 0.05
    assert _report(5, "even moment ratios n=16", ok, " ".join(gaps))


def test_criterion_06_cross_method():
    worst = 0.0
    ok = True
    for n in range(1, 13):
        pair = rudin_shapiro(n)
        for f in (pair.p, pair.q):
            q = mahler_quadrature(f).value
            j = mahler_jensen(roots_aberth(f)).value
            worst = max(worst, abs(q - j) / j)
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
              61, 67, 71, 73, 79, 83, 89, 97, 101):
        f = fekete(p)
        q = mahler_quadrature(f).value
        j = mahler_jensen(roots_aberth(f)).value
        worst = max(worst, abs(q - j) / j)
    ok &= worst <= 1e-6
    # anchors
    a1 = mahler_quadrature(rudin_shapiro(1).p).value
    a2 = mahler_quadrature(rudin_shapiro(2).p).value
    ok &= abs(a1 - 1.0) <= 1e-6
    ok &= abs(a2 - M0_P2) / M0_P2 <= 1e-6
    assert _report(6, "quadrature vs Jensen", ok,
                   f"worst rel {worst:.2e}, anchors {a1:.8f} {a2:.8f}")


def test_criterion_07_full_circle_ratios():
    ok = True
    lo, hi = 1.0, 0.0
    for n in range(2, 19):
        r = verify.ratio_theorem21(n)
        ratio = r.details["ratio_p"]
        lo, hi = min(lo, ratio), max(hi, ratio)
        ok &= 0.5 < ratio < 1.0
        ok &= r.details["rel_equality_gap"] <= 1e-6
    assert _report(7, "M_0/sqrt(N) in (0.5,1.0), P=Q, n<=18", ok,
                   f"ratios in [{lo:.4f}, {hi:.4f}]")


def test_criterion_08_moment_sums_and_identity():
    sums = []
    for n in range(4, 15):
        nf, _ = normalize(rudin_shapiro(n))
        sums.append(moment_series(nf, 400).partial_log_sum())
    spread = (max(sums) - min(sums)) / abs(min(sums))
    ok = spread < 0.10
    worst_rel = 0.0
    for n in range(4, 11):
        nf, _ = normalize(rudin_shapiro(n))
        lhs, _, resid = moment_log_identity(nf, 400)
        worst_rel = max(worst_rel, resid / abs(lhs))
    ok &= worst_rel < 0.01
    assert _report(8, "moment sums 4<=n<=14 and log identity", ok,
                   f"spread {spread:.2%}, worst residual {worst_rel:.2%}")


def test_criterion_09_critical_subarcs():
    t0 = time.perf_counter()
    ok = True
    min_ratio = math.inf
    for n in (12, 14, 16):
        rows = verify.thm23_subarc_sweep(n, 32, seed=0, widths=(1.0,))
        for row in rows:
            min_ratio = min(min_ratio, row.ratio_to_sqrtN)
            ok &= row.ratio_to_sqrtN > 0.1
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 600.0
    assert _report(9, "critical-arc M_0 ratios n=12,14,16", ok,
                   f"min ratio {min_ratio:.4f}, {elapsed:.1f}s")


def test_criterion_10_node_sum_inequality():
    ok = True
    margins = []
    for n in (8, 10, 12):
        r = verify.check_lemma32_inequality(rudin_shapiro(n).p)
        ok &= r.passed
        margins.append(f"n={n}:{r.worst_margin:.1f}")
    assert _report(10, "node-sum bound A=4pi, B=9A^2", ok, " ".join(margins))


def test_criterion_11_fekete_gauss():
    ok = True
    worst = 0.0
    for p in (5, 101, 1009, 10007):
        r = verify.fekete_gauss_check(p)
        ok &= r.passed
        worst = max(worst, r.details["max_abs_deviation"] / math.sqrt(p))
    assert _report(11, "Gauss property p<=10007", ok, f"worst rel {worst:.2e}")


def test_criterion_12_random_moment_statistic():
    r4 = verify.borwein_lockhart_mc(1000, 4, 2000, seed=0)
    mean4 = r4.details["mean"]
    ok = abs(mean4 - 2.0) / 2.0 <= 0.05
    r2 = verify.borwein_lockhart_mc(1000, 2, 2000, seed=0)
    mean2 = r2.details["mean"]
    ok &= abs(mean2 - 1.0) <= 1e-3
    assert _report(12, "random-polynomial moment means", ok,
                   f"q=4 mean {mean4:.4f}, q=2 mean {mean2:.6f}")
