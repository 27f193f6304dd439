import math
from fractions import Fraction

import pytest

from syzdepth.asymptotics import (
    alpha_crit,
    f_base,
    gamma_curve,
    gamma_zero_diagnostics,
    j_min_estimate,
    predict_regimeA,
    quotient_ratio,
    solve_gamma,
)
from syzdepth.depth import coeff_sum1


def test_predict_k1_is_half_n():
    for n in (3, 10, 1000):
        pred = predict_regimeA(n, 1)
        assert pred.value == n / 2
        assert pred.terms[1] == 0.0 and pred.terms[2] == 0.0


def test_predict_value_against_high_precision():
    # frozen from a 50-digit evaluation of the same three terms
    pred = predict_regimeA(10000, 2)
    assert pred.value == pytest.approx(5170.0329389020137, rel=1e-13)


def test_predict_terms_decompose():
    pred = predict_regimeA(5000, 4)
    assert pred.value - sum(pred.terms) == 0.0


def test_predict_domain():
    with pytest.raises(ValueError):
        predict_regimeA(2, 2)
    with pytest.raises(ValueError):
        predict_regimeA(100, 0)


def test_j_min_estimate():
    assert j_min_estimate(100, 1) == 0.0
    n = 10**4
    ln = math.log(n)
    expected = 0.5 * math.sqrt(n * ln) * (1 - 1 / ln)
    assert j_min_estimate(n, 2) == pytest.approx(expected, rel=1e-15)
    values = [j_min_estimate(n, k) for k in range(1, 8)]
    assert values == sorted(values)


def test_quotient_ratio_example():
    assert quotient_ratio(10, 2, 3, 1) == Fraction(10, 7)


def test_quotient_ratio_numerator_matches_shift_sum():
    for n in range(2, 21):
        for k in range(1, n + 1):
            for s in range(0, n + 1):
                for j in range(0, n - s - k + 1):
                    ratio = quotient_ratio(n, k, s, j)
                    iso = (-1) ** j * math.comb(n - s, k + j)
                    inner = coeff_sum1(n, k, s, j) - iso
                    assert ratio == Fraction(inner, math.comb(n - s, k + j)), (n, k, s, j)


def test_quotient_ratio_k1_numerator():
    for n, s, j in [(10, 3, 2), (12, 5, 1), (9, 0, 3)]:
        ratio = quotient_ratio(n, 1, s, j)
        if s >= 1:
            assert ratio * math.comb(n - s, 1 + j) == math.comb(s + j, s - 1)
        else:
            assert ratio == 0


def test_quotient_ratio_zero_denominator():
    with pytest.raises(ValueError):
        quotient_ratio(10, 2, 6, 3)


def test_quotient_ratio_below_one_past_critical_offset():
    # diagnostic regime: with the shift taken slightly deeper than the
    # predictor's critical offset, some index has ratio < 1
    n, k = 10**4, 2
    delta = 0.5
    ln = math.log(n)
    s = round(n / 2 - 0.5 * math.sqrt((k - 1) * n * ln) - delta * math.sqrt((k - 1) * n / ln) * math.log(ln))
    j0 = round(j_min_estimate(n, k))
    assert min(quotient_ratio(n, k, s, j) for j in range(j0 - 50, j0 + 51)) < 1


def test_f_base_corners():
    for beta in (0.1, 0.3, 0.5):
        assert f_base(0.0, beta, 0.0) == 1.0
    beta, gamma = 0.2, 0.1
    expected0 = (1 - beta - gamma) ** (1 - beta - gamma) / (
        (1 - beta) ** (1 - beta) * (1 - gamma) ** (1 - gamma)
    )
    assert f_base(0.0, beta, gamma) == pytest.approx(expected0, rel=1e-14)
    amax = 1 - beta - gamma
    expected1 = 1 / (amax**amax * beta**beta * gamma**gamma)
    assert f_base(amax, beta, gamma) == pytest.approx(expected1, rel=1e-13)


def test_f_base_continuity_at_zero_corner():
    for beta, gamma in [(0.2, 0.0), (0.3, 0.1), (0.5, 0.0)]:
        assert abs(f_base(1e-8, beta, gamma) - f_base(0.0, beta, gamma)) < 1e-5


def test_f_base_domain():
    with pytest.raises(ValueError):
        f_base(0.5, 0.4, 0.3)  # alpha beyond 1 - beta - gamma
    with pytest.raises(ValueError):
        f_base(0.1, 0.0, 0.1)


def test_alpha_crit():
    for beta in (0.1, 0.25, 0.4):
        assert alpha_crit(beta, 0.0) == pytest.approx((1 - 2 * beta) / 2, rel=1e-15)
    assert alpha_crit(0.5, 0.0) == 0.0
    assert alpha_crit(0.3, 0.3) is None  # negative discriminant


def test_solve_gamma_half_is_exact_zero():
    sol = solve_gamma(0.5)
    assert sol.gamma == 0.0 and sol.residual == 0.0 and sol.alpha0 == 0.0


def test_solve_gamma_residuals_and_range():
    for i in range(1, 10):
        beta = i * 0.05
        sol = solve_gamma(beta)
        assert 0.0 < sol.gamma <= 0.5 - beta, beta
        assert abs(sol.residual) <= 1e-10, (beta, sol.residual)
        assert 0.0 <= sol.alpha0 <= 1 - beta - sol.gamma


def test_solve_gamma_sign_at_zero():
    for beta in (0.1, 0.2, 0.3, 0.4, 0.45):
        a0 = alpha_crit(beta, 0.0)
        assert f_base(a0, beta, 0.0) < 1.0
    assert f_base(alpha_crit(0.5, 0.0), 0.5, 0.0) == 1.0


def test_solve_gamma_against_dense_scan():
    beta = 0.25
    sol = solve_gamma(beta)
    grid = 100000
    gmax = 0.5 - beta
    prev = None
    crossing = None
    for i in range(grid + 1):
        x = gmax * i / grid
        a0 = alpha_crit(beta, x)
        v = f_base(a0, beta, x) if a0 is not None and a0 > 0 else 1.0
        if prev is not None and prev < 1.0 <= v:
            crossing = x
            break
        prev = v
    assert crossing is not None
    assert abs(sol.gamma - crossing) <= gmax / grid


def test_gamma_curve():
    sols = gamma_curve(20)
    assert sols[-1].beta == 0.5 and sols[-1].gamma == 0.0
    for s in sols[:-1]:
        assert s.gamma < 0.5 - s.beta  # strictly below the line in the interior
    again = gamma_curve(20)
    assert [(s.beta, s.gamma) for s in again] == [(s.beta, s.gamma) for s in sols]


def test_gamma_curve_domain():
    with pytest.raises(ValueError):
        gamma_curve(1)


def test_gamma_zero_diagnostics_records_discrepancy():
    diag = gamma_zero_diagnostics(0.5)
    assert diag["direct"] == 1.0
    assert diag["simplified"] == pytest.approx(0.7071067811865475)
    diag = gamma_zero_diagnostics(0.25)
    assert diag["direct"] != pytest.approx(diag["simplified"])
