"""Koszul-complex elements, linear-independence certificates, and Stanley upgrades.

A generator ``w_G`` is the boundary of the exterior basis element indexed by
the k-subset G; its expansion has one term ``(-1)**(t+1) X_{g_t}`` per member.
Upgrading a Hilbert decomposition to a Stanley decomposition reduces, one
squarefree multidegree at a time, to the linear independence over the ring of
the generator families contributing there.  Independence is certified by the
union-chain order when one exists and decided by exact rank over the function
field otherwise.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .multigraded import (
    Decomposition,
    elements,
    mask_of,
    popcount,
    verify_hilbert_decomposition,
)

Monomial = Tuple[int, ...]  # exponent vector, length n


class KoszulElem:
    """Free-module element: (monomial exponents, index subset mask) -> coefficient."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[Tuple[Monomial, int], int]] = None):
        self.n = n
        self.terms: Dict[Tuple[Monomial, int], int] = {}
        if terms:
            for key, c in terms.items():
                self.add_term(key, c)

    def add_term(self, key: Tuple[Monomial, int], c: int) -> None:
        if c == 0:
            return
        new = self.terms.get(key, 0) + c
        if new == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, KoszulElem) and self.n == other.n and self.terms == other.terms


def _unit_exps(n: int, i: int) -> Monomial:
    return tuple(1 if j == i - 1 else 0 for j in range(n))


def _mul_exps(a: Monomial, i: int) -> Monomial:
    return tuple(v + 1 if j == i - 1 else v for j, v in enumerate(a))


def boundary(elem: KoszulElem) -> KoszulElem:
    """Koszul differential: e_H -> sum_t (-1)**(t+1) X_{h_t} e_{H minus h_t}."""
    out = KoszulElem(elem.n)
    for (exps, mask), c in elem.terms.items():
        for t, h in enumerate(elements(mask), start=1):
            sign = 1 if t % 2 else -1
            out.add_term((_mul_exps(exps, h), mask & ~(1 << (h - 1))), c * sign)
    return out


def koszul_generator(members: Iterable[int], n: int) -> KoszulElem:
    """``w_G``: the signed expansion of the boundary of e_G."""
    mask = mask_of(members)
    k = popcount(mask)
    if k < 1:
        raise ValueError("generator subset must be nonempty")
    if mask >> n:
        raise ValueError(f"subset {elements(mask)} does not fit in n={n} variables")
    start = KoszulElem(n, {(tuple(0 for _ in range(n)), mask): 1})
    return boundary(start)


def boundary_squared_zero(n: int, k: int) -> bool:
    """Check d(d(e_S)) = 0 for every size-k subset S."""
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    for c in combinations(range(1, n + 1), k):
        if not boundary(koszul_generator(c, n)).is_zero():
            return False
    return True


def union_chain_criterion(gens: Sequence[Iterable[int]]) -> Optional[List[int]]:
    """Ordering of the family with strictly growing running unions, if one exists.

    Returns the witnessing order as indices into ``gens`` (certifying linear
    independence over the ring), or None.  Backtracking search; a branch dies
    as soon as any unplaced subset is already inside the running union, since
    it could never enlarge it later.
    """
    masks = [mask_of(g) for g in gens]
    if not masks:
        raise ValueError("empty family")
    count = len(masks)
    order: List[int] = []
    used = [False] * count
    dead: set = set()

    def recurse(union: int, chosen: int) -> bool:
        if len(order) == count:
            return True
        if chosen in dead:
            return False
        for i in range(count):
            if not used[i] and not masks[i] & ~union:
                dead.add(chosen)
                return False
        for i in range(count):
            if used[i]:
                continue
            used[i] = True
            order.append(i)
            if recurse(union | masks[i], chosen | (1 << i)):
                return True
            order.pop()
            used[i] = False
        dead.add(chosen)
        return False

    if recurse(0, 0):
        return order
    return None


# --- exact rank over the function field -----------------------------------

Poly = Dict[Monomial, int]  # multivariate integer polynomial, sparse


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(key, 0) + ca * cb
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _poly_sub(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _poly_divexact(a: Poly, d: Poly) -> Poly:
    """Exact division; raises if not divisible (never happens for Bareiss steps)."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    lead_d = max(d)
    cd = d[lead_d]
    rem = dict(a)
    quo: Poly = {}
    while rem:
        lead_r = max(rem)
        exps = tuple(x - y for x, y in zip(lead_r, lead_d))
        cr = rem[lead_r]
        if any(e < 0 for e in exps) or cr % cd:
            raise ArithmeticError("inexact polynomial division")
        c = cr // cd
        quo[exps] = quo.get(exps, 0) + c
        rem = _poly_sub(rem, _poly_mul({exps: c}, d))
    return quo


def _fraction_free_rank(matrix: List[List[Poly]]) -> int:
    """Bareiss fraction-free elimination with column pivoting; returns the rank."""
    if not matrix:
        return 0
    rows = len(matrix)
    cols = len(matrix[0])
    m = [row[:] for row in matrix]
    rank = 0
    arity = next((len(e) for row in m for cell in row for e in cell), 0)
    prev: Poly = {tuple(0 for _ in range(arity)): 1}
    col = 0
    while rank < rows and col < cols:
        pivot_row = next((i for i in range(rank, rows) if m[i][col]), None)
        if pivot_row is None:
            col += 1
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        piv = m[rank][col]
        for i in range(rank + 1, rows):
            head = m[i][col]
            for j in range(col, cols):
                value = _poly_sub(_poly_mul(piv, m[i][j]), _poly_mul(head, m[rank][j]))
                m[i][j] = _poly_divexact(value, prev) if value else {}
        prev = piv
        rank += 1
        col += 1
    return rank


def _integer_rank(matrix: List[List[int]]) -> int:
    """Fraction-free integer elimination rank."""
    if not matrix:
        return 0
    rows = len(matrix)
    cols = len(matrix[0])
    m = [row[:] for row in matrix]
    rank = 0
    prev = 1
    col = 0
    while rank < rows and col < cols:
        pivot_row = next((i for i in range(rank, rows) if m[i][col]), None)
        if pivot_row is None:
            col += 1
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        piv = m[rank][col]
        for i in range(rank + 1, rows):
            head = m[i][col]
            for j in range(col, cols):
                m[i][j] = (piv * m[i][j] - head * m[rank][j]) // prev
        prev = piv
        rank += 1
        col += 1
    return rank


_SPECIALIZATION_SEED = 0xC0FFEE
_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151,
)


def _generator_matrix(gens: Sequence[Iterable[int]], n: int) -> Tuple[List[List[Poly]], List[int]]:
    masks = [mask_of(g) for g in gens]
    col_masks = sorted({m & ~(1 << (h - 1)) for m in masks for h in elements(m)})
    col_index = {msk: i for i, msk in enumerate(col_masks)}
    matrix: List[List[Poly]] = []
    for m in masks:
        row: List[Poly] = [{} for _ in col_masks]
        for t, h in enumerate(elements(m), start=1):
            sign = 1 if t % 2 else -1
            row[col_index[m & ~(1 << (h - 1))]] = {_unit_exps(n, h): sign}
        matrix.append(row)
    return matrix, col_masks


def generic_rank(gens: Sequence[Iterable[int]], n: int) -> int:
    """Rank over the fraction field of the family of generators ``w_G``.

    A randomized integer specialization (distinct primes per variable) gives
    a certified lower bound; when it is already full the answer is settled.
    Otherwise the rank is computed exactly by fraction-free elimination with
    polynomial entries.
    """
    if not gens:
        raise ValueError("empty family")
    matrix, _ = _generator_matrix(gens, n)
    rng = random.Random(_SPECIALIZATION_SEED)
    primes = rng.sample(_SMALL_PRIMES, n)
    spec_rows = []
    for row in matrix:
        spec_row = []
        for cell in row:
            v = 0
            for exps, c in cell.items():
                term = c
                for var, e in enumerate(exps):
                    term *= primes[var] ** e
                v += term
            spec_row.append(v)
        spec_rows.append(spec_row)
    spec_rank = _integer_rank(spec_rows)
    if spec_rank == len(gens):
        return spec_rank
    exact = _fraction_free_rank(matrix)
    if exact < spec_rank:
        raise RuntimeError("specialization rank exceeded exact rank; elimination is broken")
    return exact


def family_is_independent(gens: Sequence[Iterable[int]], n: int) -> bool:
    """Union-chain certificate first, exact rank as the decisive fallback."""
    if len(gens) <= 1:
        return True
    if union_chain_criterion(gens) is not None:
        return True
    return generic_rank(gens, n) == len(gens)


# --- hooks and Stanley verification ----------------------------------------


@dataclass(frozen=True)
class Hook:
    """Monomial times generator, ``mu * w_G``, attached to one piece."""

    mu: Monomial
    generator: int  # mask


class HookAssignment:
    """Hooks per piece, aligned with a decomposition's piece order."""

    def __init__(self, hooks: Sequence[Hook]):
        self.hooks = tuple(hooks)

    def __len__(self) -> int:
        return len(self.hooks)

    @staticmethod
    def own_generators(dec: Decomposition) -> "HookAssignment":
        """Hook every piece by its own shift; valid only when every shift has size k."""
        hooks = []
        zero = tuple(0 for _ in range(dec.n))
        for p in dec.pieces:
            hooks.append(Hook(zero, p.shift))
        return HookAssignment(hooks)

    def to_json_list(self, dec: Decomposition) -> list:
        return [
            {
                "shift": list(elements(p.shift)),
                "mu": list(h.mu),
                "generator": list(elements(h.generator)),
            }
            for p, h in zip(dec.pieces, self.hooks)
        ]

    @staticmethod
    def from_json_list(data: list, dec: Decomposition) -> "HookAssignment":
        by_shift = {}
        for entry in data:
            by_shift[mask_of(entry["shift"])] = Hook(
                tuple(entry["mu"]), mask_of(entry["generator"])
            )
        hooks = []
        for p in dec.pieces:
            if p.shift not in by_shift:
                raise ValueError(f"no hook provided for piece {elements(p.shift)}")
            hooks.append(by_shift[p.shift])
        return HookAssignment(hooks)


@dataclass
class StanleyReport:
    accepted: bool
    certified_depth: Optional[int] = None
    failing_degree: Optional[int] = None
    failing_generators: Optional[Tuple[int, ...]] = None
    hilbert_ok: bool = True
    detail: str = ""


def _check_hook_degrees(dec: Decomposition, hooks: HookAssignment) -> None:
    if len(hooks) != len(dec.pieces):
        raise ValueError("hook count does not match piece count")
    for piece, hook in zip(dec.pieces, hooks.hooks):
        if popcount(hook.generator) != dec.k:
            raise ValueError(
                f"hook generator {elements(hook.generator)} has size "
                f"{popcount(hook.generator)}, expected {dec.k}"
            )
        if len(hook.mu) != dec.n or any(e < 0 for e in hook.mu):
            raise ValueError(f"hook monomial {hook.mu} is not an exponent vector over n={dec.n}")
        degree = list(hook.mu)
        for i in elements(hook.generator):
            degree[i - 1] += 1
        want = [1 if piece.shift >> i & 1 else 0 for i in range(dec.n)]
        if degree != want:
            raise ValueError(
                f"hook {hook.mu} * w_{elements(hook.generator)} has the wrong degree "
                f"for piece {elements(piece.shift)}"
            )


def verify_stanley(dec: Decomposition, hooks: HookAssignment) -> StanleyReport:
    """Decide whether the hooked decomposition is a Stanley decomposition.

    Re-verifies the Hilbert identity, then walks every squarefree multidegree
    S: the generators of the pieces whose cone meets S must be linearly
    independent over the ring.  Hooks are squarefree, so the squarefree
    degrees decide all multidegrees.  On acceptance the certified depth is
    the least free-variable count over the pieces.
    """
    hilbert = verify_hilbert_decomposition(dec)
    if not hilbert.accepted:
        return StanleyReport(False, hilbert_ok=False, detail=f"Hilbert identity failed: {hilbert.detail}")
    _check_hook_degrees(dec, hooks)
    n = dec.n
    contributors = list(zip(dec.pieces, hooks.hooks))
    for support in range(1, 1 << n):
        family = [h.generator for p, h in contributors if p.covers_support(support)]
        if len(family) <= 1:
            continue
        if not family_is_independent([elements(g) for g in family], n):
            return StanleyReport(
                False,
                failing_degree=support,
                failing_generators=tuple(family),
                detail=(
                    f"generators {[elements(g) for g in family]} are linearly dependent "
                    f"at multidegree {elements(support)}"
                ),
            )
    depth = min(p.free_count(n) for p in dec.pieces)
    return StanleyReport(True, certified_depth=depth, detail="all squarefree degrees independent")


@dataclass
class HookSearchResult:
    status: str  # "found" | "exhausted" | "timeout"
    assignment: Optional[HookAssignment] = None
    report: Optional[StanleyReport] = None
    elapsed: float = 0.0
    nodes: int = 0


def search_hooks(dec: Decomposition, budget: float = 10.0) -> HookSearchResult:
    """Backtracking search for a hook assignment accepted by `verify_stanley`.

    Deterministic: pieces are processed smallest shift first (size, then
    mask), candidate generators in lexicographic order.  After each tentative
    hook the families at the multidegrees that piece meets are re-tested
    (union-chain first, exact rank when that stalls); dependent families
    prune the branch.  Stops with status "timeout" once the time budget is
    exhausted.
    """
    hilbert = verify_hilbert_decomposition(dec)
    if not hilbert.accepted:
        raise ValueError(f"not a Hilbert decomposition: {hilbert.detail}")
    n, k = dec.n, dec.k
    order = sorted(range(len(dec.pieces)), key=lambda i: (popcount(dec.pieces[i].shift), dec.pieces[i].shift))
    met_degrees: List[List[int]] = []
    for i in order:
        piece = dec.pieces[i]
        met = [s for s in range(1, 1 << n) if piece.covers_support(s)]
        met_degrees.append(met)
    candidates: List[List[int]] = []
    for i in order:
        shift_members = elements(dec.pieces[i].shift)
        candidates.append([mask_of(c) for c in combinations(shift_members, k)])
    families: Dict[int, List[int]] = {}
    chosen: List[Optional[int]] = [None] * len(order)
    started = time.monotonic()
    deadline = started + budget
    nodes = 0

    def families_ok(degrees: List[int]) -> bool:
        for s in degrees:
            fam = families.get(s)
            if fam and len(fam) > 1:
                if not family_is_independent([elements(g) for g in fam], n):
                    return False
        return True

    def recurse(pos: int) -> Optional[str]:
        nonlocal nodes
        if time.monotonic() > deadline:
            return "timeout"
        if pos == len(order):
            return "found"
        for gen in candidates[pos]:
            nodes += 1
            chosen[pos] = gen
            for s in met_degrees[pos]:
                families.setdefault(s, []).append(gen)
            if families_ok(met_degrees[pos]):
                outcome = recurse(pos + 1)
                if outcome != "dead":
                    return outcome
            for s in met_degrees[pos]:
                families[s].pop()
            chosen[pos] = None
        return "dead"

    outcome = recurse(0)
    elapsed = time.monotonic() - started
    if outcome == "found":
        zero = tuple(0 for _ in range(n))
        hooks: List[Hook] = [Hook(zero, 0)] * len(dec.pieces)
        for slot, i in enumerate(order):
            gen = chosen[slot]
            mu = tuple(
                1 if (dec.pieces[i].shift & ~gen) >> b & 1 else 0 for b in range(n)
            )
            hooks[i] = Hook(mu, gen)
        assignment = HookAssignment(hooks)
        report = verify_stanley(dec, assignment)
        status = "found" if report.accepted else "exhausted"
        return HookSearchResult(status, assignment if report.accepted else None, report, elapsed, nodes)
    if outcome == "timeout":
        return HookSearchResult("timeout", None, None, elapsed, nodes)
    return HookSearchResult("exhausted", None, None, elapsed, nodes)
