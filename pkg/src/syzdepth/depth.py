"""Standard-graded Hilbert depth of the Koszul syzygy modules.

The engine decides nonnegativity of the coefficients of
``Q(n,k)(T) / (1-T)**s`` and locates the least ``s`` for which the expansion
is nonnegative; the depth is ``n`` minus that value.  Two closed coefficient
formulas are provided (`coeff_sum1`, `coeff_sum2`); the production scan walks
the coefficient sequence with exact incremental binomial updates, which keeps
the per-coefficient cost at O(k) big-integer operations even for n around
10**5.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .exact import BinomialProvider, default_provider, expand_quotient, numerator_std

POSITIVE = "positive"
NEGATIVE = "negative"


class BracketViolation(RuntimeError):
    """The search bracket for min u was contradicted by re-verification.

    This would falsify the monotonicity of positivity in s and must never be
    patched over; the exception carries the offending probe for diagnosis.
    """


@dataclass(frozen=True)
class PositivityReport:
    n: int
    k: int
    s: int
    verdict: str
    witness_j: Optional[int] = None
    witness_coeff: Optional[int] = None
    checked_range: int = 0

    @property
    def is_positive(self) -> bool:
        return self.verdict == POSITIVE


@dataclass(frozen=True)
class DepthResult:
    n: int
    k: int
    hdepth: int
    min_u: int
    lower_bound: int
    upper_bound: int
    witness_positive: PositivityReport
    witness_negative: Optional[PositivityReport]


def _validate(n: int, k: int, s: Optional[int] = None) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if s is not None and not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")


def coeff_sum1(n: int, k: int, s: int, j: int, provider: BinomialProvider | None = None) -> int:
    """Coefficient of ``T**(j+k)`` in ``Q(n,k)/(1-T)**s``, shift-sum form.

    ``(-1)**j C(n-s, k+j) + sum_{t=1}^{s} C(n-t, k-1) C(s-t+j, s-t)``.
    Valid for every j >= 0; all binomial tops are nonnegative in-domain, so
    the nonnegative-argument convention is exactly what the formula needs.
    """
    _validate(n, k, s)
    if j < 0:
        raise ValueError(f"need j >= 0, got {j}")
    binom = (provider or default_provider()).binomial
    sign = -1 if j % 2 else 1
    total = sign * binom(n - s, k + j)
    for t in range(1, s + 1):
        total += binom(n - t, k - 1) * binom(s - t + j, s - t)
    return total


def coeff_sum2(n: int, k: int, s: int, j: int, provider: BinomialProvider | None = None) -> int:
    """Same coefficient in the binomial-product form, with a length-k inner sum.

    ``(-1)**j C(n-s, k+j)
    + sum_{l=0}^{k-1} C(j+l, l) C(n-s-j-l-1, k-l-1) C(s+j+l, s-1)``.

    Only validated for ``0 <= j <= n-s-k``: the derivation of this form
    passes through generalized binomials, so its behaviour outside that range
    is not asserted and the argument is rejected instead.
    """
    _validate(n, k, s)
    if not 0 <= j <= n - s - k:
        raise ValueError(
            f"coeff_sum2 is only validated for 0 <= j <= n-s-k; got j={j}, n-s-k={n - s - k}"
        )
    binom = (provider or default_provider()).binomial
    sign = -1 if j % 2 else 1
    total = sign * binom(n - s, k + j)
    for ell in range(k):
        total += (
            binom(j + ell, ell)
            * binom(n - s - j - ell - 1, k - ell - 1)
            * binom(s + j + ell, s - 1)
        )
    return total


def coefficient_stream(
    n: int, k: int, s: int, provider: BinomialProvider | None = None
) -> Iterator[Tuple[int, int]]:
    """Yield ``(j, coefficient)`` for ``j = 0 .. n-s-k`` with incremental updates.

    Consecutive binomial coefficients differ by a ratio of small integers, so
    each step multiplies and exactly divides the running values instead of
    recomputing them.  The positive part is carried as the length-k inner sum
    when ``k < s`` and as the length-s inner sum otherwise, matching the
    cheaper of the two closed forms.  Empty when ``n-s-k < 0``.
    """
    _validate(n, k, s)
    jmax = n - s - k
    if jmax < 0:
        return
    binom = (provider or default_provider()).binomial
    iso = binom(n - s, k)
    if k < s:
        # L[l] = C(j+l, l) * C(n-s-j-l-1, k-l-1) * C(s+j+l, s-1)
        terms = [
            binom(n - s - ell - 1, k - ell - 1) * binom(s + ell, s - 1) for ell in range(k)
        ]
        for j in range(jmax + 1):
            pos = sum(terms)
            yield j, (pos - iso if j % 2 else pos + iso)
            if j == jmax:
                break
            for ell in range(k):
                m = n - s - j - ell - 1
                terms[ell] = (
                    terms[ell]
                    * ((j + ell + 1) * (m - (k - ell - 1)) * (s + j + ell + 1))
                    // ((j + 1) * m * (j + ell + 2))
                )
            iso = iso * (n - s - k - j) // (k + j + 1)
    else:
        # U[t-1] = C(n-t, k-1) * C(s-t+j, s-t)
        terms = [binom(n - t, k - 1) for t in range(1, s + 1)]
        for j in range(jmax + 1):
            pos = sum(terms)
            yield j, (pos - iso if j % 2 else pos + iso)
            if j == jmax:
                break
            for i in range(s):
                terms[i] = terms[i] * (s - 1 - i + j + 1) // (j + 1)
            iso = iso * (n - s - k - j) // (k + j + 1)


def positivity(n: int, k: int, s: int, provider: BinomialProvider | None = None) -> PositivityReport:
    """Scan the expansion of ``Q(n,k)/(1-T)**s`` for a negative coefficient.

    Only ``j <= max(0, n-s-k)`` needs scanning: beyond that point the
    alternating isolated term vanishes and every coefficient is a sum of
    nonnegative products, so positivity there is automatic (the bound is
    recorded in ``checked_range``).  Within the range only odd j can go
    negative, so even j are stepped through but not sign-tested.
    """
    _validate(n, k, s)
    jmax = n - s - k
    if jmax < 0:
        return PositivityReport(n, k, s, POSITIVE, checked_range=0)
    for j, coeff in coefficient_stream(n, k, s, provider):
        if j % 2 == 1 and coeff < 0:
            return PositivityReport(n, k, s, NEGATIVE, j, coeff, checked_range=j)
    return PositivityReport(n, k, s, POSITIVE, checked_range=jmax)


def bound_lower(n: int, k: int) -> int:
    """floor((n+k)/2), the syzygy-induction lower bound."""
    _validate(n, k)
    return (n + k) // 2


def bound_upper(n: int, k: int) -> int:
    """Upper bound: second/first numerator-term quotient below the midrange.

    ``n - ceil((n-k)/(k+1))`` for ``k < floor(n/2)``; ``n - 1`` for
    ``floor(n/2) <= k < n`` (nonfree caps the depth); ``n`` for ``k = n``.
    """
    _validate(n, k)
    if k == n:
        return n
    if k >= n // 2:
        return n - 1
    return n - -((n - k) // -(k + 1))


def closed_form(n: int, k: int) -> Optional[int]:
    """Known exact value where one exists, else None.

    ``floor((n+1)/2)`` at k=1, ``n-1`` on ``floor(n/2) <= k < n``, ``n`` at
    k=n.  The midrange below ``floor(n/2)`` (k > 1) has no closed form.
    """
    _validate(n, k)
    if k == n:
        return n
    if k == 1:
        return (n + 1) // 2
    if k >= n // 2:
        return n - 1
    return None


def hdepth_std(n: int, k: int, provider: BinomialProvider | None = None) -> DepthResult:
    """Hilbert depth of the k-th syzygy module in the standard grading.

    For k = n the module is free and the depth is n.  Otherwise min u is
    located by binary search on ``[1, n - floor((n+k)/2)]``; the bracket is
    justified by monotonicity of positivity in s (multiplying a nonnegative
    series by 1/(1-T) keeps it nonnegative) together with the depth lower
    bound floor((n+k)/2).  The boundary is re-verified on both sides after
    the search, so a wrong bracket raises instead of returning a wrong value.
    """
    _validate(n, k)
    lo_bound = bound_lower(n, k)
    up_bound = bound_upper(n, k)
    if k == n:
        wp = positivity(n, n, 0, provider)
        if not wp.is_positive:
            raise BracketViolation(f"free module probe failed: {wp}")
        return DepthResult(n, k, n, 0, lo_bound, up_bound, wp, None)

    u_hi = n - (n + k) // 2
    lo, hi = 0, u_hi  # positivity(s=0) is negative for k < n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if positivity(n, k, mid, provider).is_positive:
            hi = mid
        else:
            lo = mid
    wp = positivity(n, k, hi, provider)
    if not wp.is_positive:
        raise BracketViolation(
            f"positivity expected at u={hi} for (n,k)=({n},{k}) but got {wp}"
        )
    wn = positivity(n, k, hi - 1, provider)
    if wn.is_positive:
        raise BracketViolation(
            f"negativity expected at u={hi - 1} for (n,k)=({n},{k}) but scan was positive"
        )
    return DepthResult(n, k, n - hi, hi, lo_bound, up_bound, wp, wn)


def hdepth_via_oracle(n: int, k: int, provider: BinomialProvider | None = None) -> int:
    """Independent depth computation by successive prefix-sum expansion.

    Expands ``Q(n,k)/(1-T)**u`` for u = 0, 1, 2, ... purely by prefix sums
    and returns ``n - u`` at the first nonnegative expansion.  Coefficients
    up to degree n decide the matter: above degree n-s the remaining terms
    are sums of nonnegative products.  Used to cross-check `hdepth_std`;
    cost grows like n**2, so it is meant for moderate n.
    """
    _validate(n, k)
    q = numerator_std(n, k, provider)
    vec = expand_quotient(q, 0, n)
    for u in range(0, n + 1):
        if all(c >= 0 for c in vec):
            return n - u
        acc = 0
        for i in range(len(vec)):
            acc += vec[i]
            vec[i] = acc
    raise RuntimeError(f"no nonnegative expansion found up to u={n} for (n,k)=({n},{k})")
