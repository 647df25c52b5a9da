"""Seeded instance generators for experiments and tests.

Array kinds produce lists of ints; string kinds produce a pair of
equal-length strings.  Everything is a pure function of (kind, n,
parameters, seed).
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

ARRAY_KINDS = ("random-permutation", "planted-lis", "reverse-sorted")
STRING_KINDS = ("string-pair", "identical-pair", "disjoint-pair")
KINDS = ARRAY_KINDS + STRING_KINDS


def random_permutation(n: int, rng: np.random.Generator) -> list[int]:
    return [int(v) + 1 for v in rng.permutation(n)]


def reverse_sorted(n: int) -> list[int]:
    return list(range(n, 0, -1))


def planted_lis(n: int, beta: float, rng: np.random.Generator) -> list[int]:
    """Permutation of 1..n with an increasing subsequence of length
    ceil(beta * n) planted at random positions; the filler values are
    placed in decreasing order so they contribute no chain of their own.
    """
    if not 0.0 < beta <= 1.0:
        raise ValueError("beta must be in (0, 1]")
    length = math.ceil(beta * n)
    positions = np.sort(rng.choice(n, size=length, replace=False))
    chosen = np.sort(rng.choice(n, size=length, replace=False)) + 1
    out = [0] * n
    for pos, val in zip(positions, chosen):
        out[pos] = int(val)
    filler = sorted(set(range(1, n + 1)) - set(int(v) for v in chosen),
                    reverse=True)
    it = iter(filler)
    for i in range(n):
        if out[i] == 0:
            out[i] = next(it)
    return out


def _spread_symbols(n: int, alphabet: int, k_cap: int,
                    rng: np.random.Generator) -> list[int]:
    # The cap takes precedence over the requested alphabet size: honoring
    # "no symbol more than k_cap times" may need more than `alphabet`
    # distinct symbols.  Sampling positions of a k_cap-fold pool without
    # replacement enforces the cap by construction.
    distinct = max(alphabet, -(-n // k_cap)) if n else alphabet
    pool = np.repeat(np.arange(distinct), k_cap)
    return [int(s) for s in rng.choice(pool, size=n, replace=False)]


def string_pair(n: int, alphabet: int, k_cap: int, rng: np.random.Generator,
                edits: int | None = None) -> tuple[str, str]:
    """A pair (x, y) with no symbol exceeding ``k_cap`` occurrences in y.

    x equals y except at ``edits`` random positions, which are replaced by
    fresh symbols never present in y, so the insertion-deletion distance
    is exactly ``edits``.
    """
    if k_cap < 1:
        raise ValueError("k_cap must be >= 1")
    if alphabet < 1:
        raise ValueError("alphabet must be >= 1")
    y_syms = _spread_symbols(n, alphabet, k_cap, rng)
    if edits is None:
        edits = max(1, n // 10) if n else 0
    if edits > n:
        raise ValueError("edits cannot exceed n")
    x_syms = list(y_syms)
    fresh = max(y_syms, default=-1) + 1
    for pos in rng.choice(n, size=edits, replace=False) if edits else []:
        x_syms[int(pos)] = fresh
        fresh += 1
    return _to_string(x_syms), _to_string(y_syms)


def identical_pair(n: int, alphabet: int,
                   rng: np.random.Generator) -> tuple[str, str]:
    y = _to_string(int(s) for s in rng.integers(0, alphabet, size=n))
    return y, y


def disjoint_pair(n: int, alphabet: int,
                  rng: np.random.Generator) -> tuple[str, str]:
    x = _to_string(int(s) + alphabet for s in rng.integers(0, alphabet, size=n))
    y = _to_string(int(s) for s in rng.integers(0, alphabet, size=n))
    return x, y


def _to_string(symbols) -> str:
    return "".join(chr(s) for s in symbols)


def generate_instance(kind: str, n: int, seed: int, *, beta: float = 0.1,
                      alphabet: int = 26, k_cap: int = 3,
                      edits: int | None = None):
    """Dispatch on ``kind``; deterministic for a fixed seed."""
    if n < 0:
        raise ValueError("n must be >= 0")
    rng = np.random.default_rng(seed)
    if kind == "random-permutation":
        return random_permutation(n, rng)
    if kind == "planted-lis":
        return planted_lis(n, beta, rng)
    if kind == "reverse-sorted":
        return reverse_sorted(n)
    if kind == "string-pair":
        return string_pair(n, alphabet, k_cap, rng, edits=edits)
    if kind == "identical-pair":
        return identical_pair(n, alphabet, rng)
    if kind == "disjoint-pair":
        return disjoint_pair(n, alphabet, rng)
    raise ValueError(f"unknown instance kind {kind!r}")
