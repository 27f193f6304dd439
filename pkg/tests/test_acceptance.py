"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings.
"""

import math
import time

from syzdepth.depth import (
    coeff_sum1,
    coeff_sum2,
    hdepth_std,
    positivity,
)
from syzdepth.exact import expand_quotient, numerator_std
from syzdepth.koszul import (
    Hook,
    HookAssignment,
    boundary_squared_zero,
    generic_rank,
    verify_stanley,
)
from syzdepth.multigraded import (
    LEX_GREEDY,
    MAX_MATCHING,
    SCD,
    build_upper_decomposition,
    elements,
    hdepth_multi_upper,
    mask_of,
    popcount,
    verify_hilbert_decomposition,
)
from syzdepth.asymptotics import f_base, gamma_curve, solve_gamma
from syzdepth.report import compute_cells, regimeA_ratio


def _report(num: int, name: str, started: float, limit: float, detail: str = "") -> None:
    elapsed = time.monotonic() - started
    line = f"[criterion {num:02d}] PASS {name} ({elapsed:.2f}s / limit {limit:.0f}s)"
    if detail:
        line += f"  {detail}"
    print(line)
    assert elapsed < limit, f"criterion {num} exceeded its {limit}s budget ({elapsed:.2f}s)"


def test_criterion_01_closed_form_k1():
    t0 = time.monotonic()
    for n in range(1, 41):
        assert hdepth_std(n, 1).hdepth == (n + 1) // 2, n
    _report(1, "hdepth(n,1) = floor((n+1)/2) for n <= 40", t0, 1.0)


def test_criterion_02_upper_range():
    t0 = time.monotonic()
    for n in range(1, 31):
        for k in range(max(1, n // 2), n):
            assert hdepth_std(n, k).hdepth == n - 1, (n, k)
        assert hdepth_std(n, n).hdepth == n, n
    _report(2, "hdepth(n,k) = n-1 on floor(n/2) <= k < n, = n at k = n, n <= 30", t0, 10.0)


def test_criterion_03_quotient_bound_experiment():
    t0 = time.monotonic()
    for n in range(2, 23):
        for k in range(1, n // 2):
            expected = n - math.ceil((n - k) / (k + 1))
            assert hdepth_std(n, k).hdepth == expected, (n, k)
    exceptional = []
    for k in range(1, 23 // 2):
        bound = 23 - math.ceil((23 - k) / (k + 1))
        if hdepth_std(23, k).hdepth != bound:
            exceptional.append(k)
    assert exceptional == [3, 4, 5]
    _report(3, "quotient bound exact for n <= 22; fails at n=23 for k=3,4,5 only", t0, 60.0)


def test_criterion_04_oracle_equivalence():
    t0 = time.monotonic()
    for n in range(1, 41):
        for k in range(1, n + 1):
            q = numerator_std(n, k)
            for s in range(0, n + 1):
                oracle = expand_quotient(q, s, n)
                for j in range(0, n - k + 1):
                    assert coeff_sum1(n, k, s, j) == oracle[j], (n, k, s, j)
    for n in range(1, 31):
        for k in range(1, n + 1):
            for s in range(0, n + 1):
                for j in range(0, n - s - k + 1):
                    assert coeff_sum2(n, k, s, j) == coeff_sum1(n, k, s, j), (n, k, s, j)
    _report(4, "coeff_sum1 = prefix-sum oracle (n <= 40); coeff_sum1 = coeff_sum2 (n <= 30)", t0, 60.0)


def test_criterion_05_monotonicity():
    t0 = time.monotonic()
    for n in range(1, 26):
        previous = None
        for k in range(1, n + 1):
            h = hdepth_std(n, k).hdepth
            if previous is not None:
                assert previous <= h, (n, k)
            previous = h
        for k in range(1, n + 1):
            positive_seen = False
            for s in range(0, n + 1):
                ok = positivity(n, k, s).is_positive
                if positive_seen:
                    assert ok, (n, k, s)
                positive_seen = positive_seen or ok
    _report(5, "hdepth monotone in k and positivity monotone in s, n <= 25", t0, 60.0)


def test_criterion_06_multigraded_construction():
    t0 = time.monotonic()
    for n in range(2, 17):
        for k in range(max(1, n // 2), n):
            for strategy in (SCD, MAX_MATCHING, LEX_GREEDY):
                dec = build_upper_decomposition(n, k, strategy)
                report = verify_hilbert_decomposition(dec)
                assert report.accepted, (n, k, strategy, report.detail)
            cert = hdepth_multi_upper(n, k)
            assert cert.value == n - 1
            assert cert.min_free_count >= n - 1
            assert cert.nonfree_witness_coeff < 0
            assert cert.verification.accepted
    _report(6, "decompositions verified for n <= 16, all strategies; upper certificates", t0, 120.0)


def _m52_known_hooks(dec):
    level4 = {
        (1, 2, 3, 4): ((3, 4), (1, 2)),
        (1, 2, 3, 5): ((2, 3), (1, 5)),
        (1, 2, 4, 5): ((2, 5), (1, 4)),
        (1, 3, 4, 5): ((4, 5), (1, 3)),
        (2, 3, 4, 5): ((4, 5), (2, 3)),
    }
    hooks = []
    for p in dec.pieces:
        if popcount(p.shift) == 2:
            hooks.append(Hook((0, 0, 0, 0, 0), p.shift))
        else:
            mu_members, gen = level4[elements(p.shift)]
            hooks.append(Hook(tuple(1 if i + 1 in mu_members else 0 for i in range(5)), mask_of(gen)))
    return HookAssignment(hooks)


def test_criterion_07_stanley_m52():
    t0 = time.monotonic()
    dec = build_upper_decomposition(5, 2, LEX_GREEDY)
    # the quoted injection values
    inj3 = {p.shift: p.removed for p in dec.pieces if popcount(p.shift) == 2}
    assert inj3[mask_of([2, 4])] == 5  # image of 245
    assert inj3[mask_of([3, 4])] == 5  # image of 345
    inj5 = {p.shift: p.removed for p in dec.pieces if popcount(p.shift) == 4}
    assert inj5[mask_of([1, 2, 3, 4])] == 5  # image of 12345

    hooks = _m52_known_hooks(dec)
    report = verify_stanley(dec, hooks)
    assert report.accepted and report.certified_depth == 4

    corrupted = list(hooks.hooks)
    for i, p in enumerate(dec.pieces):
        if elements(p.shift) == (1, 2, 3, 4):
            corrupted[i] = Hook((1, 0, 0, 1, 0), mask_of((2, 3)))
    bad = verify_stanley(dec, HookAssignment(corrupted))
    assert not bad.accepted
    assert bad.failing_degree == mask_of([1, 2, 3, 4])
    _report(7, "Stanley certificate for (5,2): accepted at depth 4; bad hook rejected at 1234", t0, 5.0)


def test_criterion_08_koszul_sanity():
    t0 = time.monotonic()
    for n in range(2, 7):
        for k in range(2, n + 1):
            assert boundary_squared_zero(n, k), (n, k)
    assert generic_rank([(1, 2), (1, 3), (2, 3)], 3) == 2
    _report(8, "boundary squared vanishes for n <= 6; syzygy rank drop detected", t0, 5.0)


def test_criterion_09_regimeB_solver():
    t0 = time.monotonic()
    exact_half = solve_gamma(0.5)
    assert exact_half.gamma == 0.0 and exact_half.residual == 0.0
    for i in range(1, 10):
        beta = i * 0.05
        sol = solve_gamma(beta)
        assert abs(f_base(sol.alpha0, beta, sol.gamma) - 1.0) <= 1e-10, beta
        assert 0.0 < sol.gamma <= 0.5 - beta, beta
    first = [(s.beta, s.gamma) for s in gamma_curve(100)]
    second = [(s.beta, s.gamma) for s in gamma_curve(100)]
    assert first == second
    _report(9, "solver exact at beta=1/2; residuals <= 1e-10; 100-point curve deterministic", t0, 5.0)


def test_criterion_10_large_n_consistency():
    t0 = time.monotonic()
    sizes = [10**3, 10**4, 10**5]
    results = compute_cells([(n, 2) for n in sizes], threads=3)
    ratios = []
    gaps = []
    for n, res in zip(sizes, results):
        assert res.hdepth > n / 2, n
        assert res.lower_bound <= res.hdepth <= res.upper_bound, n
        gaps.append(res.hdepth - n / 2)
        ratios.append(regimeA_ratio(n, res.hdepth))
    assert gaps == sorted(gaps)  # excess over n/2 grows with n
    detail = "ratios (hdepth - n/2)/(sqrt(n log n)/2): " + ", ".join(
        f"n=10^{int(math.log10(n))}: {r:.4f}" for n, r in zip(sizes, ratios)
    )
    _report(10, "k=2 at n in {1e3,1e4,1e5}: above n/2, within bounds; ratio recorded", t0, 600.0, detail)
