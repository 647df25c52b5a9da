"""Randomized asymmetric edit-distance estimator.

The fixed string y is indexed once (random access); the input string x is
streamed.  Every symbol x(i) is expanded into the points (i, j) over the
positions j where it occurs in y, listed by ascending j; chains of these
points under strict dominance are exactly the common subsequences of x
and y.  Running the minimum-defect sketch on that pair stream -- with the
accuracy knob tightened by the worst-case symbol multiplicity k of y --
turns the chain-defect estimate back into an edit-distance estimate via
``est + n - |pairs|``.

The pair stream is never materialized: pairs are pushed as generated, so
the pass over x stays one-way, and only the running pair count is kept.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .poset import PairPoint
from .sketch import PointDefectSketch, SketchParams


@dataclass(frozen=True)
class FixedStringIndex:
    """Occurrence lists of the fixed string: symbol -> ascending positions."""

    occurrences: Mapping[Hashable, tuple[int, ...]]
    n: int
    k: int


def build_index(y: Sequence) -> FixedStringIndex:
    """Index ``y`` by symbol.  ``k`` is the largest occurrence count."""
    occ: dict[Hashable, list[int]] = {}
    for j, sym in enumerate(y):
        occ.setdefault(sym, []).append(j)
    frozen = {sym: tuple(js) for sym, js in occ.items()}
    k = max((len(js) for js in frozen.values()), default=0)
    return FixedStringIndex(occurrences=frozen, n=len(y), k=k)


def emit_pairs(x_symbol: Hashable, i: int,
               index: FixedStringIndex) -> list[PairPoint]:
    """Points (i, j) for every y-position j holding ``x_symbol``,
    ascending in j; empty when the symbol never occurs in y."""
    return [PairPoint(i, j) for j in index.occurrences.get(x_symbol, ())]


@dataclass(frozen=True)
class EditEstimate:
    """Result of one randomized edit-distance run."""

    est: int
    pair_count: int
    est_d: int
    peak_active: int
    fell_back: bool


def estimate_edit_distance(x: Iterable, y: Sequence, *, delta: float,
                           gamma: float, seed: int = 0,
                           enforce_cap: bool = True) -> EditEstimate:
    """Additive ``delta * n`` estimate of the insertion-deletion distance.

    Requires ``len(x) == len(y)``.  ``est_d`` never undershoots the true
    distance; it exceeds truth + delta*n with probability at most gamma.
    Space grows with the symbol multiplicity k of y.
    """
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must be in (0, 1]")
    n = len(y)
    if hasattr(x, "__len__") and len(x) != n:  # type: ignore[arg-type]
        raise ValueError(f"length mismatch: {len(x)} != {n}")

    index = build_index(y)
    k = max(index.k, 1)
    rho = max(n * k, 1)
    params = SketchParams(delta=delta / k, gamma=gamma, rho_bound=rho,
                          seed=seed, n_bound=rho, enforce_cap=enforce_cap)
    sketch = PointDefectSketch(params)

    pair_count = 0
    consumed = 0
    for i, sym in enumerate(x):
        consumed += 1
        if consumed > n:
            raise ValueError(f"length mismatch: x longer than {n}")
        for point in emit_pairs(sym, i, index):
            pair_count += 1
            sketch.push(point.first, point.second)
    if consumed != n:
        raise ValueError(f"length mismatch: {consumed} != {n}")

    est = sketch.finish()
    est_d = max(0, min(n, est + n - pair_count))
    return EditEstimate(est=est, pair_count=pair_count, est_d=est_d,
                        peak_active=sketch.peak_active,
                        fell_back=sketch.fell_back)
