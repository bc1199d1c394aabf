"""Exact counting of binary matrices with prescribed row and column sums.

The count is computed by a memoized dynamic program over rows: after
placing a row, the state is the conjugate tally of the remaining column
demands (how many columns still need 0, 1, 2, ... more ones).  Two
subproblems with the same remaining-row suffix and the same conjugate
tally have identical counts, which is what makes the memoization pay off.
Infeasible branches are pruned with the Gale-Ryser dominance condition.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence


def log2_int(n: int) -> float:
    """Base-2 logarithm of a non-negative integer, exact to ~1 ulp.

    Works for integers of any size: uses the bit length plus a 53-bit
    leading mantissa window, never a lossy full conversion to float.
    """
    if n < 0:
        raise ValueError("log2_int requires a non-negative integer")
    if n == 0:
        return float("-inf")
    b = n.bit_length()
    if b <= 53:
        return math.log2(n)
    shift = b - 53
    return math.log2(n >> shift) + shift


class BigCount:
    """Arbitrary-precision non-negative count with an exact log2 accessor."""

    __slots__ = ("value",)

    def __init__(self, value: int):
        value = int(value)
        if value < 0:
            raise ValueError(f"count cannot be negative: {value}")
        self.value = value

    def log2(self) -> float:
        return log2_int(self.value)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, BigCount):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __le__(self, other) -> bool:
        return self.value <= int(other)

    def __lt__(self, other) -> bool:
        return self.value < int(other)

    def __add__(self, other) -> "BigCount":
        return BigCount(self.value + int(other))

    def __mul__(self, other) -> "BigCount":
        return BigCount(self.value * int(other))

    def __repr__(self) -> str:
        return f"BigCount({self.value})"

    def __str__(self) -> str:
        return str(self.value)


def conjugate(c: Sequence[int], max_val: int) -> tuple:
    """counts[v] = number of entries of c equal to v, for v in 0..max_val."""
    counts = [0] * (max_val + 1)
    for cj in c:
        if not 0 <= cj <= max_val:
            raise ValueError(f"entry {cj} outside [0, {max_val}]")
        counts[cj] += 1
    return tuple(counts)


def gale_ryser_feasible(r: Sequence[int], c: Sequence[int]) -> bool:
    """True iff a binary matrix with row sums r and column sums c exists."""
    r = [int(v) for v in r]
    c = [int(v) for v in c]
    if any(v < 0 for v in r) or any(v < 0 for v in c):
        return False
    if any(v > len(c) for v in r) or any(v > len(r) for v in c):
        return False
    if sum(r) != sum(c):
        return False
    rs = sorted(r, reverse=True)
    # conj[k] = number of columns with demand > k  (conjugate partition of c)
    counts = conjugate(c, len(r)) if r else ()
    return _dominance_ok(rs, counts)


def _dominance_ok(rows_desc, counts) -> bool:
    """Gale-Ryser dominance: prefix sums of rows never exceed those of c*."""
    # c*_k = number of columns with demand >= k
    tail = 0
    cstar = []
    for v in range(len(counts) - 1, 0, -1):
        tail += counts[v]
        cstar.append(tail)
    cstar.reverse()  # cstar[k-1] = #{j : c_j >= k}
    prefix_r = 0
    prefix_c = 0
    for k, rk in enumerate(rows_desc):
        prefix_r += rk
        prefix_c += cstar[k] if k < len(cstar) else 0
        if prefix_r > prefix_c:
            return False
    return True


def _trim(counts: list) -> tuple:
    """Drop trailing zero classes so equivalent states share a memo key."""
    end = len(counts)
    while end > 1 and counts[end - 1] == 0:
        end -= 1
    return tuple(counts[:end])


def count_binary_matrices(
    r: Sequence[int],
    c: Sequence[int],
    memo: Optional[dict] = None,
    memo_cap: Optional[int] = None,
) -> BigCount:
    """Exact number of binary matrices with row sums r and column sums c.

    ``memo`` may be supplied to share work across calls with the same
    multiset of row sums (the caller is responsible for that precondition;
    a fresh table is used otherwise).  ``memo_cap`` bounds the table size;
    once full, further states are recomputed instead of stored.
    """
    r = [int(v) for v in r]
    c = [int(v) for v in c]
    if any(v < 0 for v in r) or any(v < 0 for v in c):
        raise ValueError("row and column sums must be non-negative")
    if not gale_ryser_feasible(r, c):
        return BigCount(0)
    if not r or not c:
        # feasible with empty dimension means all demands are zero
        return BigCount(1)
    rows = sorted(r, reverse=True)
    counts = _trim(list(conjugate(c, max(max(c), 0))))
    if memo is None:
        memo = {}
    result = _count_rec(tuple(rows), 0, counts, memo, memo_cap)
    return BigCount(result)


def _count_rec(rows: tuple, i: int, counts: tuple, memo: dict, memo_cap) -> int:
    n_remaining = len(rows) - i
    if n_remaining == 0:
        return 1 if all(v == 0 for idx, v in enumerate(counts) if idx > 0) else 0
    if not _dominance_ok(rows[i:], counts):
        return 0
    key = (n_remaining, counts)
    hit = memo.get(key)
    if hit is not None:
        return hit
    target = rows[i]
    total = 0
    maxv = len(counts) - 1
    # distribute `target` ones over demand classes v = 1..maxv
    for placement, ways in _placements(counts, maxv, target):
        new_counts = list(counts)
        for v, k in placement:
            new_counts[v] -= k
            new_counts[v - 1] += k
        total += ways * _count_rec(rows, i + 1, _trim(new_counts), memo, memo_cap)
    if memo_cap is None or len(memo) < memo_cap:
        memo[key] = total
    return total


def _placements(counts, v, remaining):
    """Yield (placement, ways) choices of k_v ones per demand class.

    placement is a list of (class, k) with k >= 1; ways is the product of
    binomial(counts[class], k) over the placement.
    """
    if remaining == 0:
        yield [], 1
        return
    if v < 1:
        return
    capacity_below = sum(counts[1:v])
    lo = max(0, remaining - capacity_below)
    hi = min(counts[v], remaining)
    for k in range(lo, hi + 1):
        w = math.comb(counts[v], k)
        for rest, ways in _placements(counts, v - 1, remaining - k):
            yield ([(v, k)] + rest if k else rest), w * ways
