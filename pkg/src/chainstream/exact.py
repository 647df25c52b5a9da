"""Exact reference computations used as ground truth everywhere else.

Four oracles: the quadratic prefix recurrence for minimum chain defect
over an arbitrary strict partial order, patience-sorting LIS, the
row-streaming LCS table, and small-instance brute force.  None of these
aim for speed records; they exist so the randomized and approximate
estimators have something trustworthy to be measured against.
"""
from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Iterator, Sequence

import numpy as np

from .poset import LessFunc, WeightedSequence

BRUTE_FORCE_LIMIT = 20


def exact_min_defect(less: LessFunc, seq: WeightedSequence) -> int:
    """Minimum defect over all chains, by the quadratic prefix recurrence.

    Runs with a virtual start below all elements (prefix value 0) and a
    virtual end above all elements (weight 0).  Quadratic on purpose: only
    the comparison oracle is assumed, so no ordering structure can speed
    up the inner minimum.
    """
    n = len(seq)
    elems = seq.elements
    weights = seq.weights
    # W[t] = total weight of the first t items; s[t] = least weight dropped
    # among chains ending at t, counting only indices < t.
    W = [0] * (n + 1)
    for t in range(1, n + 1):
        W[t] = W[t - 1] + weights[t - 1]
    s = [0] * (n + 1)
    for t in range(1, n + 1):
        e_t = elems[t - 1]
        best = W[t - 1]  # via the virtual start
        for i in range(1, t):
            if less(elems[i - 1], e_t):
                cand = s[i] + W[t - 1] - W[i]
                if cand < best:
                    best = cand
        s[t] = best
    return min(s[i] + W[n] - W[i] for i in range(n + 1))


def exact_lis_length(values: Sequence) -> int:
    """Length of the longest strictly increasing subsequence.

    Patience sorting: tails[k] holds the least possible tail of a strictly
    increasing subsequence of length k+1.
    """
    tails: list = []
    for v in values:
        pos = bisect_left(tails, v)
        if pos == len(tails):
            tails.append(v)
        else:
            tails[pos] = v
    return len(tails)


def _encode_against(y: Sequence, x: Sequence) -> tuple[np.ndarray, np.ndarray]:
    # Symbols are opaque hashables; map them to small ints, with symbols
    # absent from y coded -1 so they can never match.
    codes: dict = {}
    y_codes = np.fromiter(
        (codes.setdefault(s, len(codes)) for s in y), dtype=np.int64, count=len(y)
    )
    x_codes = np.fromiter(
        (codes.get(s, -1) for s in x), dtype=np.int64, count=len(x)
    )
    return y_codes, x_codes


def lcs_prefix_rows(x: Sequence, y: Sequence) -> Iterator[np.ndarray]:
    """Row-streaming LCS table.

    After consuming the i-th symbol of ``x``, yields the row of values
    LCS(x[:i], y[:j]) for j = 0..len(y), using O(len(y)) working space.
    """
    y_codes, x_codes = _encode_against(y, x)
    row = np.zeros(len(y) + 1, dtype=np.int64)
    for c in x_codes:
        new = np.empty_like(row)
        new[0] = 0
        np.maximum(row[1:], row[:-1] + (y_codes == c), out=new[1:])
        np.maximum.accumulate(new, out=new)
        row = new
        yield row


def exact_lcs_length(x: Sequence, y: Sequence) -> int:
    """LCS length of two symbol sequences (any lengths)."""
    row = None
    for row in lcs_prefix_rows(x, y):
        pass
    return int(row[-1]) if row is not None else 0


def exact_edit_distance_indel(x: Sequence, y: Sequence) -> int:
    """Insertion-deletion edit distance n - LCS(x, y) for equal lengths.

    Unequal lengths are rejected rather than silently generalized: the
    estimators built on top of this are calibrated for the equal-length
    setting only.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    return len(x) - exact_lcs_length(x, y)


def brute_force_min_defect(less: LessFunc, seq: WeightedSequence) -> int:
    """Minimum defect by exhaustive enumeration of index subsets.

    Independent of the recurrence: every subset of indices is tested for
    the chain property directly.  Limited to small n.
    """
    n = len(seq)
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_LIMIT}")
    elems = seq.elements
    weights = seq.weights
    arc = [[i < j and less(elems[i], elems[j]) for j in range(n)] for i in range(n)]
    total = seq.total_weight
    best_weight = 0  # the empty chain
    for mask in range(1, 1 << n):
        m = mask
        prev = -1
        chain_w = 0
        ok = True
        while m:
            i = (m & -m).bit_length() - 1
            if prev >= 0 and not arc[prev][i]:
                ok = False
                break
            chain_w += weights[i]
            prev = i
            m &= m - 1
        if ok and chain_w > best_weight:
            best_weight = chain_w
    return total - best_weight


def lcs_backtrack(x: Sequence, y: Sequence) -> tuple[tuple[int, int], ...]:
    """One maximum-length alignment as matched (i, j) index pairs.

    Builds the full quadratic table, so keep inputs small.  The returned
    pairs are strictly increasing in both coordinates and x[i] == y[j]
    for each pair.
    """
    m, n = len(x), len(y)
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if x[i - 1] == y[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    pairs: list[tuple[int, int]] = []
    i, j = m, n
    while i > 0 and j > 0:
        if x[i - 1] == y[j - 1]:
            pairs.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return tuple(pairs)
