"""Streaming estimator for the distance to monotonicity of an array.

Each array position i with value v becomes the point (i, v); chains of
these points under strict coordinatewise dominance are exactly the
strictly increasing subsequences, so the minimum chain defect is the
distance to monotonicity.  Duplicate values therefore never chain:
(5, 5) has increasing-subsequence length 1 here, matching the strict
convention of :func:`chainstream.exact.exact_lis_length`.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .poset import pair_dominance
from .sketch import MinDefectSketch, PointDefectSketch, SketchParams


@dataclass(frozen=True)
class DmEstimate:
    """Result of one streaming run over an array."""

    dm_estimate: int
    lis_estimate: int
    peak_active: int
    fell_back: bool


def estimate_dm(values: Iterable, n: int | None = None, *, delta: float,
                gamma: float, seed: int = 0,
                enforce_cap: bool = True) -> DmEstimate:
    """One-pass estimate of the distance to monotonicity.

    ``n`` must be supplied when ``values`` has no ``len()`` (true streaming
    input); it sizes the total-weight bound and the space cap.  The result
    never undershoots the true distance; it exceeds (1 + delta) times the
    truth with probability at most gamma.
    """
    if n is None:
        values = values if hasattr(values, "__len__") else list(values)
        n = len(values)  # type: ignore[arg-type]
    n = int(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    params = SketchParams(delta=delta, gamma=gamma, rho_bound=max(n, 1),
                          seed=seed, n_bound=n, enforce_cap=enforce_cap)

    it = iter(values)
    first = next(it, _EMPTY)
    if first is _EMPTY:
        if n != 0:
            raise ValueError(f"expected {n} values, got 0")
        sketch = PointDefectSketch(params)
        count = 0
    elif isinstance(first, numbers.Integral):
        sketch = PointDefectSketch(params, value_dtype=np.int64)
        count = _feed_points(sketch, first, it, n)
    elif isinstance(first, numbers.Real):
        sketch = PointDefectSketch(params, value_dtype=np.float64)
        count = _feed_points(sketch, first, it, n)
    else:
        # Arbitrary totally ordered values go through the oracle sketch.
        sketch = MinDefectSketch(pair_dominance, params)
        sketch.push((1, first))
        count = 1
        for v in it:
            count += 1
            if count > n:
                raise ValueError(f"more values than declared n={n}")
            sketch.push((count, v))
    if count != n:
        raise ValueError(f"expected {n} values, got {count}")

    dm = sketch.finish()
    return DmEstimate(dm_estimate=dm, lis_estimate=n - dm,
                      peak_active=sketch.peak_active,
                      fell_back=sketch.fell_back)


_EMPTY = object()


def _feed_points(sketch: PointDefectSketch, first, rest, n: int) -> int:
    sketch.push(1, first)
    count = 1
    for v in rest:
        count += 1
        if count > n:
            raise ValueError(f"more values than declared n={n}")
        sketch.push(count, v)
    return count
