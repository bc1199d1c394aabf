"""Exact counts of the constrained admixed-array families.

``count_a1`` and ``count_a2`` are closed-form products.  ``count_a12``
sums, over the feasible set of ancestry column-sum pairs, an exact binary
matrix count times a per-locus dosage weight; the sum is parallelized
over the first-coordinate pairs with per-worker memo tables.  A brute
force sweep over all 2^(4NP) arrays serves as the independent oracle for
small instances.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, NamedTuple

import numpy as np

from .bincount import BigCount, count_binary_matrices
from .margins import MarginSpec, validate

BRUTE_FORCE_MAX_CELLS = 24
DEFAULT_FEASIBLE_CAP = 10**8


class FeasiblePair(NamedTuple):
    """Candidate column sums (v1, v2) for the two haplotype halves of A."""

    v1: tuple
    v2: tuple


class FeasibleSetTooLarge(ValueError):
    """Explicit feasible-set summation refused; use the product form."""


def count_a1(spec: MarginSpec) -> BigCount:
    """|A1| = (prod_n C(2P, a_n)) * 2^(2NP): X free, each row of A free given its tally."""
    validate(spec)
    total = math.prod(math.comb(2 * spec.P, an) for an in spec.a)
    return BigCount(total << (2 * spec.N * spec.P))


def count_a2(spec: MarginSpec) -> BigCount:
    """|A2| via the per-locus product form."""
    validate(spec)
    N = spec.N
    total = 1
    for p0, p1 in zip(spec.phi0, spec.phi1):
        s = p0 + p1
        total *= math.comb(2 * N, s) * math.comb(s, p1) << (2 * N - s)
    return BigCount(total)


def feasible_set_size(spec: MarginSpec) -> BigCount:
    """Number of feasible column-sum pairs, per locus: sum over the allowed
    pair total of the number of splits bounded by N."""
    validate(spec)
    N = spec.N
    total = 1
    for p0, p1 in zip(spec.phi0, spec.phi1):
        total *= sum(min(l, 2 * N - l) + 1 for l in range(p1, 2 * N - p0 + 1))
    return BigCount(total)


def enumerate_feasible(spec: MarginSpec) -> Iterator[FeasiblePair]:
    """Yield every feasible pair exactly once, lexicographic in (v1, v2)."""
    validate(spec)
    N, P = spec.N, spec.P

    def rec_v2(p, v1, prefix):
        if p == P:
            yield FeasiblePair(v1, tuple(prefix))
            return
        lo = max(0, spec.phi1[p] - v1[p])
        hi = min(N, 2 * N - spec.phi0[p] - v1[p])
        for v in range(lo, hi + 1):
            prefix.append(v)
            yield from rec_v2(p + 1, v1, prefix)
            prefix.pop()

    # v1 entries are only constrained jointly with v2; prune v1 prefixes that
    # leave no admissible v2 entry at some locus.
    def rec(p, v1_prefix):
        if p == P:
            yield from rec_v2(0, tuple(v1_prefix), [])
            return
        for v in range(0, N + 1):
            if max(0, spec.phi1[p] - v) > min(N, 2 * N - spec.phi0[p] - v):
                continue
            v1_prefix.append(v)
            yield from rec(p + 1, v1_prefix)
            v1_prefix.pop()

    yield from rec(0, [])


def count_a2_via_feasible(spec: MarginSpec, cap: int = DEFAULT_FEASIBLE_CAP) -> BigCount:
    """Evaluate |A2| by explicit summation over the feasible set.

    Cross-check oracle for the product form; refuses instances whose
    feasible set exceeds ``cap`` elements.
    """
    validate(spec)
    if int(feasible_set_size(spec)) > cap:
        raise FeasibleSetTooLarge(
            f"feasible set larger than cap {cap}; use the product form count_a2"
        )
    N = spec.N
    total = 0
    for v1, v2 in enumerate_feasible(spec):
        term = 1
        for p, (s1, s2) in enumerate(zip(v1, v2)):
            s = s1 + s2
            term *= (
                math.comb(N, s1)
                * math.comb(N, s2)
                * math.comb(s, spec.phi1[p])
                * math.comb(2 * N - s, spec.phi0[p])
            )
        total += term
    return BigCount(total)


def _first_pairs(spec: MarginSpec) -> list:
    """All admissible (v1, v2) values at the first locus."""
    N = spec.N
    pairs = []
    for s in range(spec.phi1[0], 2 * N - spec.phi0[0] + 1):
        for v1 in range(max(0, s - N), min(N, s) + 1):
            pairs.append((v1, s - v1))
    return pairs


def _sum_over_first_pairs(args) -> int:
    """Worker body: weighted sum over all feasible pairs extending the given
    first-locus pairs.  Memo tables are private to this call, grouped by
    L = max column-sum entry + 2."""
    N, P, a, phi0, phi1, first_pairs = args
    rows = sorted(a, reverse=True)
    S = sum(a)
    # binomial weight table reused across feasible pairs
    wtab = [[math.comb(n, k) for k in range(n + 1)] for n in range(2 * N + 1)]
    smin = [phi1[p] for p in range(P)]
    smax = [2 * N - phi0[p] for p in range(P)]
    # suffix bounds on the remaining locus totals, for early pruning
    rest_min = [0] * (P + 1)
    rest_max = [0] * (P + 1)
    for p in range(P - 1, -1, -1):
        rest_min[p] = rest_min[p + 1] + smin[p]
        rest_max[p] = rest_max[p + 1] + smax[p]
    memos: dict = {}
    total = 0

    def weight(v1, v2):
        w = 1
        for p in range(P):
            s = v1[p] + v2[p]
            w *= wtab[s][phi1[p]] * wtab[2 * N - s][phi0[p]]
        return w

    def dfs(p, v1, v2, tally):
        nonlocal total
        if p == P:
            if tally != S:
                return
            L = max(max(v1), max(v2)) + 2
            memo = memos.setdefault(L, {})
            cnt = count_binary_matrices(rows, v1 + v2, memo=memo)
            total += int(cnt) * weight(v1, v2)
            return
        lo = max(smin[p], S - tally - rest_max[p + 1])
        hi = min(smax[p], S - tally - rest_min[p + 1])
        for s in range(lo, hi + 1):
            for x in range(max(0, s - N), min(N, s) + 1):
                dfs(p + 1, v1 + [x], v2 + [s - x], tally + s)

    for v1_first, v2_first in first_pairs:
        s1 = v1_first + v2_first
        if not (rest_min[1] <= S - s1 <= rest_max[1]):
            continue
        dfs(1, [v1_first], [v2_first], s1)
    return total


def count_a12(spec: MarginSpec, workers: int = 1) -> BigCount:
    """Exact |A12|: weighted sum of binary matrix counts over the feasible set.

    Work is partitioned round-robin over first-locus pairs; results are
    identical for any worker count (exact integer addition commutes).
    """
    validate(spec)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    pairs = _first_pairs(spec)
    if not pairs:
        return BigCount(0)
    base = (spec.N, spec.P, tuple(spec.a), tuple(spec.phi0), tuple(spec.phi1))
    if workers == 1 or len(pairs) == 1:
        return BigCount(_sum_over_first_pairs(base + (pairs,)))
    chunks = [pairs[w::workers] for w in range(workers)]
    chunks = [ch for ch in chunks if ch]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        partials = list(pool.map(_sum_over_first_pairs, [base + (ch,) for ch in chunks]))
    return BigCount(sum(partials))


def brute_force_count(spec: MarginSpec, family: str) -> BigCount:
    """Independent oracle: sweep all 2^(4NP) arrays and count exact matches.

    ``family`` is one of "A1", "A2", "A12".  Refuses 4NP > 24 cells.
    """
    validate(spec)
    family = family.upper()
    if family not in ("A1", "A2", "A12"):
        raise ValueError(f"unknown family {family!r}")
    N, P = spec.N, spec.P
    cells = 2 * N * P
    if 2 * cells > BRUTE_FORCE_MAX_CELLS:
        raise ValueError(
            f"brute force limited to 4NP <= {BRUTE_FORCE_MAX_CELLS}, got {2 * cells}"
        )
    n_mats = 1 << cells
    # all binary matrices as a (n_mats, N, 2P) bit table
    idx = np.arange(n_mats, dtype=np.uint32)
    bits = ((idx[:, None] >> np.arange(cells, dtype=np.uint32)) & 1).astype(np.int8)
    mats = bits.reshape(n_mats, N, 2 * P)

    a = np.array(spec.a)
    phi0 = np.array(spec.phi0)
    phi1 = np.array(spec.phi1)
    want_a1 = family in ("A1", "A12")
    want_a2 = family in ("A2", "A12")

    tallies = mats.sum(axis=2)  # row tallies of every candidate A
    a_ok = (tallies == a).all(axis=1)

    total = 0
    for ai in range(n_mats):
        if want_a1 and not a_ok[ai]:
            continue
        if not want_a2:
            total += n_mats
            continue
        A = mats[ai]
        Al, Ar = A[:, :P], A[:, P:]
        got1 = (mats[:, :, :P] * Al + mats[:, :, P:] * Ar).sum(axis=1)
        got0 = (mats[:, :, :P] * (1 - Al) + mats[:, :, P:] * (1 - Ar)).sum(axis=1)
        match = ((got1 == phi1) & (got0 == phi0)).all(axis=1)
        total += int(match.sum())
    return BigCount(total)
