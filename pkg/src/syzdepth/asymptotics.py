"""Large-n depth asymptotics: the fixed-k predictor and the proportional-k solver.

Two regimes.  With k fixed, the depth grows like
``n/2 + sqrt((k-1) n log n)/2 + ...`` and `predict_regimeA` evaluates the
three explicit terms.  With ``k ~ beta*n`` the depth is ``(1-gamma) n + o(n)``
where gamma solves an entropy-type equation; `solve_gamma` finds it by
bracketing and bisection.  Natural logarithms throughout; reals are IEEE
binary64.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .exact import BinomialProvider, default_provider

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
_BRACKET_STEPS = 64
_GUARD_GRID = 1000


@dataclass(frozen=True)
class RegimeAPrediction:
    n: int
    k: int
    value: float
    terms: Tuple[float, float, float]


@dataclass(frozen=True)
class GammaSolution:
    beta: float
    gamma: float
    alpha0: float
    residual: float
    iterations: int


def predict_regimeA(n: int, k: int) -> RegimeAPrediction:
    """Fixed-k depth predictor:
    ``n/2 + sqrt((k-1) n log n)/2 + sqrt((k-1) n / log n) * log log n / 4``.
    """
    if n < 3:
        raise ValueError(f"need n >= 3 (log log n), got {n}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    ln = math.log(n)
    t1 = n / 2
    t2 = 0.5 * math.sqrt((k - 1) * n * ln)
    t3 = 0.25 * math.sqrt((k - 1) * n / ln) * math.log(ln)
    return RegimeAPrediction(n, k, t1 + t2 + t3, (t1, t2, t3))


def j_min_estimate(n: int, k: int) -> float:
    """Location of the critical scan index, ``sqrt((k-1) n log n)/2 * (1 - 1/log n)``.

    The correction of order o(1/log n) is dropped; this is an estimate for
    diagnostics only, never an input to an exact computation.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    ln = math.log(n)
    return 0.5 * math.sqrt((k - 1) * n * ln) * (1 - 1 / ln)


def quotient_ratio(
    n: int, k: int, s: int, j: int, provider: BinomialProvider | None = None
) -> Fraction:
    """Exact ratio of the positive inner sum to the isolated binomial.

    ``sum_{l=0}^{k-1} C(j+l,l) C(n-s-j-l-1,k-l-1) C(s+j+l,s-1) / C(n-s, k+j)``.
    The coefficient at index j is nonnegative exactly when this ratio is >= 1
    (odd j); requires ``s + j + k <= n`` so the denominator is nonzero.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if s < 0 or j < 0:
        raise ValueError(f"need s, j >= 0, got s={s}, j={j}")
    if s + j + k > n:
        raise ValueError(f"zero denominator: need s+j+k <= n, got {s}+{j}+{k} > {n}")
    binom = (provider or default_provider()).binomial
    numerator = sum(
        binom(j + ell, ell) * binom(n - s - j - ell - 1, k - ell - 1) * binom(s + j + ell, s - 1)
        for ell in range(k)
    )
    return Fraction(numerator, binom(n - s, k + j))


def _xlogx(x: float) -> float:
    # x log x extended continuously by 0 at x = 0; tolerate roundoff dust.
    if x <= 0.0:
        if x < -1e-9:
            raise ValueError(f"negative argument {x} to x*log(x)")
        return 0.0
    return x * math.log(x)


def f_base(alpha: float, beta: float, gamma: float) -> float:
    """Base of the exponential growth of the coefficient quotient.

    ``(a+g)^(a+g) (a+b)^(a+b) (1-a-b-g)^(1-a-b-g)
    / (a^a b^b g^g (1-b)^(1-b) (1-g)^(1-g))`` with the 0**0 = 1 convention.
    """
    if not 0.0 < beta <= 0.5:
        raise ValueError(f"need beta in (0, 1/2], got {beta}")
    if not 0.0 <= gamma < 1.0 - beta:
        raise ValueError(f"need gamma in [0, 1-beta), got {gamma}")
    if alpha < -1e-12 or alpha > 1.0 - beta - gamma + 1e-12:
        raise ValueError(f"need alpha in [0, 1-beta-gamma], got {alpha}")
    return math.exp(
        _xlogx(alpha + gamma)
        + _xlogx(alpha + beta)
        + _xlogx(1.0 - alpha - beta - gamma)
        - _xlogx(alpha)
        - _xlogx(beta)
        - _xlogx(gamma)
        - _xlogx(1.0 - beta)
        - _xlogx(1.0 - gamma)
    )


def alpha_crit(beta: float, gamma: float) -> Optional[float]:
    """Larger root of the interior critical-point quadratic, or None.

    ``(1 - 2b - 2g + sqrt((1 - 2b - 2g)**2 - 8 b g)) / 4`` when the
    discriminant is nonnegative; a negative discriminant means no interior
    critical point and the minimum sits on the boundary.
    """
    if not 0.0 < beta <= 0.5:
        raise ValueError(f"need beta in (0, 1/2], got {beta}")
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"need gamma in [0, 1), got {gamma}")
    lin = 1.0 - 2.0 * beta - 2.0 * gamma
    disc = lin * lin - 8.0 * beta * gamma
    if disc < 0.0:
        return None
    return 0.25 * (lin + math.sqrt(disc))


def _min_f(beta: float, gamma: float) -> Tuple[float, float]:
    """Minimum of f over the admissible alpha interval, with its argmin.

    Candidates are the two boundary points and, when present and interior,
    the critical point; the boundary values are always >= 1, so the check
    below 1 is decided by the critical point alone.
    """
    amax = 1.0 - beta - gamma
    best = (f_base(0.0, beta, gamma), 0.0)
    end = (f_base(amax, beta, gamma), amax)
    if end[0] < best[0]:
        best = end
    a0 = alpha_crit(beta, gamma)
    if a0 is not None and 0.0 < a0 < amax:
        mid = (f_base(a0, beta, gamma), a0)
        if mid[0] < best[0]:
            best = mid
    return best


def _interior_guard(beta: float, gamma: float, claimed_min: float) -> None:
    amax = 1.0 - beta - gamma
    for i in range(1, _GUARD_GRID):
        v = f_base(amax * i / _GUARD_GRID, beta, gamma)
        if v < claimed_min - 1e-9:
            log.warning(
                "interior scan found f=%.15g below the candidate minimum %.15g "
                "at beta=%.6g gamma=%.6g alpha=%.6g",
                v, claimed_min, beta, gamma, amax * i / _GUARD_GRID,
            )
            return


def solve_gamma(beta: float, tol: float = DEFAULT_TOL) -> GammaSolution:
    """Smallest gamma in [0, 1/2 - beta] with ``min_alpha f(alpha) >= 1``.

    gamma = 0 is accepted exactly when the minimum is already >= 1 there
    (this is the beta = 1/2 endpoint).  Otherwise a monotone scan brackets
    the sign change of ``min f - 1`` and bisection refines until both the
    bracket width and the residual are within tol.  No sign change inside
    the interval is a hard error: it would contradict the established bound
    gamma <= 1/2 - beta.
    """
    if not 0.0 < beta <= 0.5:
        raise ValueError(f"need beta in (0, 1/2], got {beta}")
    if tol <= 0.0:
        raise ValueError(f"need tol > 0, got {tol}")
    gamma_max = 0.5 - beta

    def g(x: float) -> float:
        return _min_f(beta, x)[0] - 1.0

    g0 = g(0.0)
    if g0 >= 0.0:
        value, a0 = _min_f(beta, 0.0)
        _interior_guard(beta, 0.0, value)
        return GammaSolution(beta, 0.0, a0, value - 1.0, 0)

    lo = 0.0
    hi = None
    g_hi = 0.0
    for i in range(1, _BRACKET_STEPS + 1):
        x = gamma_max * i / _BRACKET_STEPS
        gx = g(x)
        if gx >= 0.0:
            hi, g_hi = x, gx
            break
        lo = x
    if hi is None:
        raise RuntimeError(
            f"no sign change of min f - 1 in [0, {gamma_max}] for beta={beta}; "
            "this contradicts the gamma <= 1/2 - beta bound"
        )
    iterations = 0
    while (hi - lo > tol or g_hi > tol) and iterations < 200:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm >= 0.0:
            hi, g_hi = mid, gm
        else:
            lo = mid
        iterations += 1
    if g_hi > tol:
        raise RuntimeError(
            f"bisection stalled for beta={beta}: residual {g_hi} above tol {tol} "
            f"after {iterations} iterations"
        )
    value, a0 = _min_f(beta, hi)
    _interior_guard(beta, hi, value)
    return GammaSolution(beta, hi, a0, value - 1.0, iterations)


def gamma_curve(steps: int, tol: float = DEFAULT_TOL) -> List[GammaSolution]:
    """Solve at ``beta = i / (2 * steps)`` for i = 1..steps; deterministic."""
    if steps < 2:
        raise ValueError(f"need steps >= 2, got {steps}")
    return [solve_gamma(i / (2 * steps), tol) for i in range(1, steps + 1)]


def gamma_zero_diagnostics(beta: float) -> dict:
    """Values of f at the critical alpha with gamma = 0, by two routes.

    ``direct`` evaluates f itself.  ``simplified`` is the compact expression
    ``1 / (2 (1-beta)^(1-beta))`` sometimes quoted for this quantity; it
    drops a ``beta^beta`` factor and disagrees with direct evaluation (at
    beta = 1/2 the direct value is exactly 1).  The solver always uses the
    direct evaluation; both are reported so the discrepancy stays visible.
    """
    a0 = alpha_crit(beta, 0.0)
    direct = f_base(a0, beta, 0.0) if a0 is not None else float("nan")
    simplified = 1.0 / (2.0 * (1.0 - beta) ** (1.0 - beta))
    return {"beta": beta, "alpha0": a0, "direct": direct, "simplified": simplified}
