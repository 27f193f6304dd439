"""Exact integer combinatorics: binomial coefficients and dense Laurent polynomials.

Everything in this module is arbitrary-precision and side-effect free.  The
binomial convention used throughout the package is the nonnegative one:
``binomial(a, b) = 0`` for ``b < 0`` or ``b > a``, and a negative top argument
is an error (the generalized negative-top extension is deliberately not
provided, so a caller slipping out of its validated domain fails loudly
instead of silently picking a convention).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List

DEFAULT_CACHE_LIMIT = 4096


class BinomialProvider:
    """Binomial coefficients backed by cached Pascal rows.

    Rows with top argument ``a <= n_max`` are kept after first use; each row
    is built independently by the iterative product formula, so touching a
    large row does not materialize all the rows below it.  Arguments beyond
    the cache go straight to the direct multiply/divide evaluator
    (``math.comb``).  Both paths agree everywhere they overlap; the provider
    is logically immutable and safe to share across workers.
    """

    def __init__(self, n_max: int = DEFAULT_CACHE_LIMIT):
        if n_max < 0:
            raise ValueError("n_max must be >= 0")
        self.n_max = n_max
        self._rows: dict[int, List[int]] = {}

    def _row(self, a: int) -> List[int]:
        row = self._rows.get(a)
        if row is None:
            row = [1]
            for b in range(1, a + 1):
                row.append(row[-1] * (a - b + 1) // b)
            self._rows[a] = row
        return row

    def binomial(self, a: int, b: int) -> int:
        """C(a, b) for a >= 0, with C(a, b) = 0 outside 0 <= b <= a."""
        if a < 0:
            raise ValueError(f"binomial: negative top argument {a}")
        if b < 0 or b > a:
            return 0
        if a <= self.n_max:
            return self._row(a)[b]
        return math.comb(a, b)


_default_provider = BinomialProvider()


def default_provider() -> BinomialProvider:
    return _default_provider


def configure_cache(n_max: int) -> BinomialProvider:
    """Replace the shared provider with one caching rows up to ``n_max``."""
    global _default_provider
    _default_provider = BinomialProvider(n_max)
    return _default_provider


def binomial(a: int, b: int) -> int:
    """C(a, b) via the shared provider."""
    return _default_provider.binomial(a, b)


@dataclass(frozen=True)
class UniLaurent:
    """Dense integer Laurent polynomial.

    ``coeffs[i]`` is the coefficient of ``T**(offset + i)``.  Instances built
    through :meth:`of` are normalized: no leading or trailing zeros are
    stored, and the zero polynomial is ``UniLaurent(0, ())``.
    """

    offset: int
    coeffs: tuple

    @staticmethod
    def of(offset: int, coeffs: Iterable[int]) -> "UniLaurent":
        cs = list(coeffs)
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            return UniLaurent(0, ())
        return UniLaurent(offset + lo, tuple(cs[lo:hi]))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_min(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        return self.offset

    def degree_max(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        return self.offset + len(self.coeffs) - 1

    def coefficient(self, degree: int) -> int:
        i = degree - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def evaluate_at_one(self) -> int:
        return sum(self.coeffs)


def numerator_std(n: int, k: int, provider: BinomialProvider | None = None) -> UniLaurent:
    """Hilbert-series numerator of the k-th Koszul syzygy module, standard grading.

    Returns ``sum_{j=k}^{n} (-1)**(j-k) * C(n, j) * T**j`` as a UniLaurent
    with offset ``k``.
    """
    if n < 1:
        raise ValueError(f"numerator_std: n must be >= 1, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"numerator_std: need 0 <= k <= n, got k={k}, n={n}")
    binom = (provider or _default_provider).binomial
    coeffs = [(-1) ** (j - k) * binom(n, j) for j in range(k, n + 1)]
    return UniLaurent.of(k, coeffs)


def expand_quotient(q: UniLaurent, s: int, d_max: int) -> List[int]:
    """Coefficients of ``q(T) / (1-T)**s`` for degrees ``q.offset .. d_max``.

    Computed by ``s`` successive prefix-sum passes over the dense coefficient
    vector.  This is the package's independent oracle for series expansion:
    it never touches the closed-form coefficient formulas, so the two routes
    can validate each other.
    """
    if s < 0:
        raise ValueError(f"expand_quotient: s must be >= 0, got {s}")
    if q.is_zero():
        return [0] * max(0, d_max - q.offset + 1)
    if d_max < q.offset:
        raise ValueError(f"expand_quotient: d_max={d_max} below lowest degree {q.offset}")
    m = d_max - q.offset + 1
    out = list(q.coeffs[:m]) + [0] * (m - len(q.coeffs))
    for _ in range(s):
        acc = 0
        for i in range(m):
            acc += out[i]
            out[i] = acc
    return out
