"""Squarefree multigraded numerators, level injections, and Hilbert decompositions.

Subsets of {1..n} are bitmasks: variable i corresponds to bit i-1.  All
construction here is exact; verification compares full squarefree polynomials
term by term, never by sampling alone.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

from .exact import UniLaurent, binomial

log = logging.getLogger(__name__)

NUMERATOR_CAP_DEFAULT = 24

LEX_GREEDY = "lex_greedy"
SCD = "scd"
MAX_MATCHING = "max_matching"
STRATEGIES = (LEX_GREEDY, SCD, MAX_MATCHING)


class InjectionError(RuntimeError):
    """A level injection could not be completed by the requested strategy."""


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << (i - 1)
    return m


def elements(mask: int) -> Tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def level_masks(n: int, u: int) -> List[int]:
    """All size-u subsets of {1..n} as masks, in lexicographic member order."""
    return [mask_of(c) for c in combinations(range(1, n + 1), u)]


class SqfPoly:
    """Squarefree multivariate polynomial: subset mask -> integer coefficient.

    Zero coefficients are never stored.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[int, int]] = None):
        self.n = n
        self.terms: Dict[int, int] = {}
        if terms:
            for mask, c in terms.items():
                self.add_term(mask, c)

    def add_term(self, mask: int, c: int) -> None:
        if c == 0:
            return
        new = self.terms.get(mask, 0) + c
        if new == 0:
            self.terms.pop(mask, None)
        else:
            self.terms[mask] = new

    def coefficient(self, mask: int) -> int:
        return self.terms.get(mask, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SqfPoly) and self.n == other.n and self.terms == other.terms
        )

    def first_difference(self, other: "SqfPoly") -> Optional[int]:
        """Smallest mask where the two polynomials disagree, or None."""
        for mask in sorted(set(self.terms) | set(other.terms)):
            if self.terms.get(mask, 0) != other.terms.get(mask, 0):
                return mask
        return None

    def specialize_standard(self) -> UniLaurent:
        """Send every variable to T; degrees collapse to subset sizes."""
        by_size: Dict[int, int] = {}
        for mask, c in self.terms.items():
            d = popcount(mask)
            by_size[d] = by_size.get(d, 0) + c
        if not by_size:
            return UniLaurent.of(0, ())
        lo = min(by_size)
        hi = max(by_size)
        return UniLaurent.of(lo, [by_size.get(d, 0) for d in range(lo, hi + 1)])


def numerator_multi(n: int, k: int, cap: int = NUMERATOR_CAP_DEFAULT) -> SqfPoly:
    """Multigraded numerator: each size-d subset carries ``(-1)**(d-k)`` for d >= k."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n > cap:
        raise ValueError(f"n={n} exceeds the configured cap {cap} (memory grows like 2**n)")
    poly = SqfPoly(n)
    for mask in range(1, 1 << n):
        d = popcount(mask)
        if d >= k:
            poly.terms[mask] = -1 if (d - k) % 2 else 1
    return poly


@dataclass
class Matching:
    """Injection from the size-u level into the size-(u-1) level.

    ``pairs[S] = S minus one member``; images are pairwise distinct and the
    domain covers the whole level.
    """

    n: int
    u: int
    pairs: Dict[int, int]
    strategy: str

    def validate(self) -> None:
        expected = level_masks(self.n, self.u)
        if set(self.pairs) != set(expected):
            raise InjectionError(f"matching domain does not cover level {self.u}")
        seen = set()
        for src, dst in self.pairs.items():
            if dst & ~src or popcount(dst) != self.u - 1:
                raise InjectionError(
                    f"image {elements(dst)} is not a one-step divisor of {elements(src)}"
                )
            if dst in seen:
                raise InjectionError(f"image {elements(dst)} used twice")
            seen.add(dst)


def _inject_lex_greedy(n: int, u: int) -> Dict[int, int]:
    used = set()
    pairs: Dict[int, int] = {}
    for subset in combinations(range(1, n + 1), u):
        image = None
        for divisor in combinations(subset, u - 1):
            m = mask_of(divisor)
            if m not in used:
                image = m
                break
        if image is None:
            raise InjectionError(
                f"lex_greedy stalled at {subset} (n={n}, u={u}): every divisor already used"
            )
        used.add(image)
        pairs[mask_of(subset)] = image
    return pairs


def _scd_predecessor(n: int, mask: int) -> int:
    # Bracket matching: members open, non-members close; the chain moves down
    # by dropping the leftmost unmatched member.
    stack: List[int] = []
    for i in range(1, n + 1):
        if mask >> (i - 1) & 1:
            stack.append(i)
        elif stack:
            stack.pop()
    if not stack:
        raise InjectionError(f"no unmatched member in {elements(mask)}; level too low")
    return mask & ~(1 << (stack[0] - 1))


def _inject_scd(n: int, u: int) -> Dict[int, int]:
    return {m: _scd_predecessor(n, m) for m in level_masks(n, u)}


def _inject_max_matching(n: int, u: int) -> Dict[int, int]:
    """Hopcroft-Karp maximum matching on the one-step divisibility graph."""
    left = level_masks(n, u)
    adjacency = {
        src: [src & ~(1 << b) for b in range(n) if src >> b & 1] for src in left
    }
    INF = float("inf")
    match_left: Dict[int, int] = {}
    match_right: Dict[int, int] = {}
    dist: Dict[int, float] = {}

    def bfs() -> bool:
        queue = []
        for src in left:
            if src not in match_left:
                dist[src] = 0
                queue.append(src)
            else:
                dist[src] = INF
        found = False
        head = 0
        while head < len(queue):
            src = queue[head]
            head += 1
            for dst in adjacency[src]:
                nxt = match_right.get(dst)
                if nxt is None:
                    found = True
                elif dist[nxt] == INF:
                    dist[nxt] = dist[src] + 1
                    queue.append(nxt)
        return found

    def dfs(src: int) -> bool:
        for dst in adjacency[src]:
            nxt = match_right.get(dst)
            if nxt is None or (dist[nxt] == dist[src] + 1 and dfs(nxt)):
                match_left[src] = dst
                match_right[dst] = src
                return True
        dist[src] = INF
        return False

    while bfs():
        for src in left:
            if src not in match_left:
                dfs(src)
    if len(match_left) != len(left):
        raise InjectionError(
            f"maximum matching is not perfect on the size-{u} level (n={n}): "
            f"{len(match_left)} of {len(left)} matched"
        )
    return match_left


def level_injection(n: int, u: int, strategy: str = SCD) -> Matching:
    """Total injection from the size-u level to the size-(u-1) level.

    Requires ``u > n/2`` strictly; at ``u <= n/2`` the levels are too large
    below and no such injection exists (for odd n this excludes
    ``u = (n-1)/2`` even though the construction is sometimes quoted with a
    floor there).  ``lex_greedy`` walks the level lexicographically and may
    stall, which raises InjectionError; ``scd`` (chain predecessor) and
    ``max_matching`` always succeed in-domain.
    """
    if not 1 <= u <= n:
        raise ValueError(f"need 1 <= u <= n, got u={u}, n={n}")
    if 2 * u <= n:
        raise ValueError(f"level injection requires u > n/2, got u={u}, n={n}")
    if strategy == LEX_GREEDY:
        pairs = _inject_lex_greedy(n, u)
    elif strategy == SCD:
        pairs = _inject_scd(n, u)
    elif strategy == MAX_MATCHING:
        pairs = _inject_max_matching(n, u)
    else:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    matching = Matching(n, u, pairs, strategy)
    matching.validate()
    return matching


@dataclass(frozen=True)
class HilbertPiece:
    """One summand: shift subset F plus the free variables (all but `removed`)."""

    shift: int
    removed: Optional[int] = None

    def free_count(self, n: int) -> int:
        return n if self.removed is None else n - 1

    def covers_support(self, support: int) -> bool:
        """True when some multidegree with this squarefree support lies in the piece."""
        if self.shift & ~support:
            return False
        return self.removed is None or not support >> (self.removed - 1) & 1


@dataclass
class Decomposition:
    n: int
    k: int
    strategy: str
    pieces: Tuple[HilbertPiece, ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "strategy": self.strategy,
            "pieces": [
                {"shift": list(elements(p.shift)), "removed": p.removed}
                for p in self.pieces
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "Decomposition":
        pieces = tuple(
            HilbertPiece(mask_of(entry["shift"]), entry.get("removed"))
            for entry in data["pieces"]
        )
        return Decomposition(data["n"], data["k"], data.get("strategy", "unknown"), pieces)


def _injection_with_fallback(n: int, u: int, strategy: str) -> Matching:
    try:
        return level_injection(n, u, strategy)
    except InjectionError as exc:
        if strategy != LEX_GREEDY:
            raise
        log.warning("lex_greedy failed at level %d (n=%d): %s; falling back to max_matching", u, n, exc)
        return level_injection(n, u, MAX_MATCHING)


def build_upper_decomposition(n: int, k: int, strategy: str = SCD) -> Decomposition:
    """Hilbert decomposition of the upper-range numerator, ``floor(n/2) <= k < n``.

    Level by level: every size-(k+j) subset with j even yields a piece; if
    the subset is the image of a size-(k+j+1) subset under that level's
    injection, the extra member is recorded as the removed variable, so the
    piece contributes ``T^F - T^(F+p)`` and the odd level above is consumed
    exactly once.
    """
    if not n // 2 <= k < n:
        raise ValueError(f"need floor(n/2) <= k < n, got k={k}, n={n}")
    pieces: List[HilbertPiece] = []
    for level in range(k, n + 1, 2):
        image_extra: Dict[int, int] = {}
        if level + 1 <= n:
            matching = _injection_with_fallback(n, level + 1, strategy)
            for src, dst in matching.pairs.items():
                image_extra[dst] = (src & ~dst).bit_length()  # the dropped variable
        for mask in level_masks(n, level):
            pieces.append(HilbertPiece(mask, image_extra.get(mask)))
    return Decomposition(n, k, strategy, tuple(pieces))


@dataclass
class VerificationReport:
    accepted: bool
    detail: str = ""
    witness_subset: Optional[int] = None
    witness_multidegree: Optional[Tuple[int, ...]] = None


SPOT_CHECK_SEED = 2024
SPOT_CHECK_SAMPLES = 128


def _spot_check_multidegrees(n: int) -> List[Tuple[int, ...]]:
    rng = random.Random(SPOT_CHECK_SEED)
    samples = [tuple(0 for _ in range(n)), tuple(1 for _ in range(n)), tuple(2 for _ in range(n))]
    for _ in range(SPOT_CHECK_SAMPLES):
        samples.append(tuple(rng.randrange(3) for _ in range(n)))
    return samples


def verify_hilbert_decomposition(dec: Decomposition) -> VerificationReport:
    """Exact identity check of a decomposition against the multigraded numerator.

    The piece sum ``sum_i (T^F_i - [removed] T^(F_i + p_i))`` must equal the
    numerator as a squarefree polynomial, term for term.  A sampled
    Hilbert-function check (values counted per multidegree in {0,1,2}^n)
    runs on top as additional defence.
    """
    n, k = dec.n, dec.k
    total = SqfPoly(n)
    for piece in dec.pieces:
        if piece.removed is not None:
            bit = 1 << (piece.removed - 1)
            if piece.shift & bit:
                return VerificationReport(
                    False,
                    detail=f"removed variable {piece.removed} lies inside the shift",
                    witness_subset=piece.shift,
                )
            total.add_term(piece.shift | bit, -1)
        total.add_term(piece.shift, 1)
    expected = numerator_multi(n, k)
    diff = total.first_difference(expected)
    if diff is not None:
        return VerificationReport(
            False,
            detail=(
                f"coefficient mismatch at subset {elements(diff)}: "
                f"got {total.coefficient(diff)}, expected {expected.coefficient(diff)}"
            ),
            witness_subset=diff,
        )
    for a in _spot_check_multidegrees(n):
        support = mask_of(i + 1 for i, v in enumerate(a) if v)
        count = sum(1 for p in dec.pieces if p.covers_support(support))
        size = popcount(support)
        want = binomial(size - 1, k - 1) if size >= 1 else 0
        if count != want:
            return VerificationReport(
                False,
                detail=f"Hilbert function mismatch at multidegree {a}: got {count}, expected {want}",
                witness_multidegree=a,
            )
    return VerificationReport(True, detail="identity and sampled Hilbert function agree")


@dataclass
class UpperDepthCertificate:
    n: int
    k: int
    value: int
    decomposition: Decomposition
    verification: VerificationReport
    min_free_count: int
    nonfree_witness_subset: int
    nonfree_witness_coeff: int


def hdepth_multi_upper(n: int, k: int, strategy: str = SCD) -> UpperDepthCertificate:
    """Multigraded Hilbert depth ``n-1`` on the upper range, with both certificates.

    The verified decomposition gives depth >= n-1 (every piece keeps at least
    n-1 free variables); a negative numerator coefficient shows the module is
    not free, so n is unreachable.
    """
    dec = build_upper_decomposition(n, k, strategy)
    report = verify_hilbert_decomposition(dec)
    if not report.accepted:
        raise InjectionError(f"decomposition for (n,k)=({n},{k}) failed verification: {report.detail}")
    min_free = min(p.free_count(n) for p in dec.pieces)
    witness = mask_of(range(1, k + 2))  # size k+1, coefficient -1
    numer = numerator_multi(n, k)
    coeff = numer.coefficient(witness)
    if coeff >= 0:
        raise RuntimeError(f"expected a negative coefficient at {elements(witness)}")
    return UpperDepthCertificate(n, k, n - 1, dec, report, min_free, witness, coeff)
