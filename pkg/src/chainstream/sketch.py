"""One-pass randomized estimator for the minimum chain defect of a stream.

The estimator mirrors the exact prefix recurrence but remembers the
per-position state (element, prefix weight, running estimate) only for a
random, decaying "active set" of positions.  The retention schedule keeps
each position alive with a probability that shrinks as total weight
accumulates past it, which makes the final answer one-sided -- never
below the true minimum defect -- while the active set stays
polylogarithmic with high probability.  A hard space cap backs this up:
if the active set ever outgrows it, the sketch degrades to counting
total weight, which is always a valid one-sided answer.

Two interchangeable implementations are provided.  ``MinDefectSketch``
works over any strict partial order given as an opaque ``less`` oracle.
``PointDefectSketch`` is a vectorized equivalent for 2-D numeric points
under strict coordinatewise dominance, the poset both built-in adapters
reduce to.  Given the same seed and input they make identical random
choices and produce identical results.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .poset import LessFunc

# Survival ratios this close to 1 are treated as exactly 1 so that the
# clamped region stays deterministic under floating-point noise.
_NEAR_ONE = 1.0 - 1e-12


def space_cap(delta: float, gamma: float, rho_bound: int, n_bound: int) -> int:
    """Active-set size above which the sketch abandons estimation.

    Exceeding this is a low-probability event (at most gamma/2) for any
    stream whose length and total weight respect the bounds.
    """
    n = max(int(n_bound), 1)
    rho = max(int(rho_bound), 1)
    return math.ceil(
        2.0 * math.e**2 * math.log(2.0 * rho) * math.log(4.0 * n**3 / gamma) / delta
    )


def _coefficient(t: int, delta: float, gamma: float) -> float:
    # Shared scalar factor of the retention probability at time t.  Both
    # sketch implementations must use this exact value and apply the same
    # "(coef * w) / denom" operation order so seeded runs agree bit-for-bit.
    return (1.0 + delta) / delta * math.log(4.0 * t**3 / gamma)


def retention_prob(i: int, t: int, w_i: int, W_t: int, W_im1: int,
                   delta: float, gamma: float) -> float:
    """Probability that position i is still remembered just after step t.

    Clamps to 1; equals 1 at t == i always.  ``W_t`` is the total weight
    through step t and ``W_im1`` the total weight through step i-1.
    """
    if not 1 <= i <= t:
        raise ValueError("need 1 <= i <= t")
    if W_t <= W_im1:
        raise ValueError("prefix weights must strictly increase over (i-1, t]")
    return min(1.0, _coefficient(t, delta, gamma) * w_i / (W_t - W_im1))


def survival_prob(i: int, t: int, w_i: int, W_t: int, W_tm1: int, W_im1: int,
                  delta: float, gamma: float) -> float:
    """Per-step survival probability of position i at step t > i.

    The ratio of consecutive retention probabilities; 1 at t == i.  Always
    in (0, 1] because retention is non-increasing in t.
    """
    if t < i:
        raise ValueError("need t >= i")
    if t == i:
        return 1.0
    q_t = retention_prob(i, t, w_i, W_t, W_im1, delta, gamma)
    q_tm1 = retention_prob(i, t - 1, w_i, W_tm1, W_im1, delta, gamma)
    p = q_t / q_tm1
    return 1.0 if p > _NEAR_ONE else p


@dataclass(frozen=True)
class SketchParams:
    """Accuracy, confidence, and sizing knobs for a sketch run.

    ``delta`` is the multiplicative slack (output <= (1+delta) * truth with
    probability >= 1-gamma), ``rho_bound`` an upper bound on total stream
    weight.  ``n_bound``, when known, fixes the space cap up front;
    otherwise the cap is recomputed each step from the running length,
    which only loosens it monotonically and never affects one-sidedness.
    ``enforce_cap=False`` disables the fallback entirely (diagnostics only).
    """

    delta: float
    gamma: float
    rho_bound: int
    seed: int = 0
    n_bound: int | None = None
    enforce_cap: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.delta <= 1.0:
            raise ValueError("delta must be in (0, 1]")
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must be in (0, 1)")
        if self.rho_bound < 1:
            raise ValueError("rho_bound must be >= 1")
        if self.n_bound is not None and self.n_bound < 0:
            raise ValueError("n_bound must be >= 0 when given")

    def cap_at(self, t: int) -> int:
        n = self.n_bound if self.n_bound is not None else t
        return space_cap(self.delta, self.gamma, self.rho_bound, n)


@dataclass(frozen=True)
class ActiveRecord:
    """One remembered position: its element, prefix weight, and estimate."""

    index: int
    element: Any
    prefix_weight: int
    weight: int
    estimate: int


class MinDefectSketch:
    """Streaming minimum-defect estimator over an opaque partial order.

    Single-owner: feed items with :meth:`push`, then call :meth:`finish`
    exactly once.  Independent instances may run concurrently; the
    ``less`` oracle must be a pure function.
    """

    def __init__(self, less: LessFunc, params: SketchParams):
        self._less = less
        self.params = params
        self._rng = np.random.default_rng(params.seed)
        # Parallel per-record state, always in increasing index order.
        # The virtual start (index 0, estimate 0, prefix 0) is implicit
        # and never discarded: it keeps the estimate defined for elements
        # below everything remembered.
        self._idx: list[int] = []
        self._elem: list = []
        self._W: list[int] = []
        self._w: list[int] = []
        self._r: list[int] = []
        self._t = 0
        self._total = 0
        self._peak = 1
        self._fallback = False
        self._done = False

    @property
    def t(self) -> int:
        return self._t

    @property
    def total_weight(self) -> int:
        return self._total

    @property
    def peak_active(self) -> int:
        """Maximum active-set size observed; the run's measured space."""
        return self._peak

    @property
    def fell_back(self) -> bool:
        return self._fallback

    @property
    def active_indices(self) -> tuple[int, ...]:
        if self._fallback:
            return ()
        return (0, *self._idx)

    @property
    def active_records(self) -> tuple[ActiveRecord, ...]:
        if self._fallback:
            return ()
        start = ActiveRecord(0, None, 0, 0, 0)
        return (start, *(
            ActiveRecord(i, e, W, w, r)
            for i, e, W, w, r in zip(self._idx, self._elem, self._W, self._w, self._r)
        ))

    def push(self, element: Any, weight: int = 1) -> None:
        """Consume the next stream item."""
        if self._done:
            raise RuntimeError("sketch already finished")
        w = int(weight)
        if w < 1:
            raise ValueError("stream weights must be >= 1")
        t = self._t + 1
        w_prev = self._total
        w_t = w_prev + w
        if w_t > self.params.rho_bound:
            raise ValueError("total stream weight exceeds rho_bound")
        self._t = t
        self._total = w_t
        if self._fallback:
            return

        delta = self.params.delta
        gamma = self.params.gamma
        # Estimate for the new position: cheapest remembered predecessor,
        # the virtual start always qualifying.
        r_t = w_prev
        for pos in range(len(self._idx)):
            if self._less(self._elem[pos], element):
                cand = self._r[pos] + w_prev - self._W[pos]
                if cand < r_t:
                    r_t = cand

        # Independent discard sweep over previously remembered positions
        # (the new position survives its own step with probability 1).
        # One uniform draw per record, in increasing index order.
        m = len(self._idx)
        if m:
            coef_t = _coefficient(t, delta, gamma)
            coef_tm1 = _coefficient(t - 1, delta, gamma)
            draws = self._rng.random(m)
            kept = []
            for pos in range(m):
                w_im1 = self._W[pos] - self._w[pos]
                q_t = min(1.0, coef_t * self._w[pos] / (w_t - w_im1))
                q_tm1 = min(1.0, coef_tm1 * self._w[pos] / (w_prev - w_im1))
                p = q_t / q_tm1
                if p > _NEAR_ONE or draws[pos] < p:
                    kept.append(pos)
            if len(kept) < m:
                self._idx = [self._idx[p] for p in kept]
                self._elem = [self._elem[p] for p in kept]
                self._W = [self._W[p] for p in kept]
                self._w = [self._w[p] for p in kept]
                self._r = [self._r[p] for p in kept]

        self._idx.append(t)
        self._elem.append(element)
        self._W.append(w_t)
        self._w.append(w)
        self._r.append(r_t)

        active = len(self._idx) + 1
        if active > self._peak:
            self._peak = active
        if self.params.enforce_cap and active > self.params.cap_at(t):
            self._fallback = True
            self._idx, self._elem, self._W, self._w, self._r = [], [], [], [], []

    def finish(self) -> int:
        """Final update with a virtual top element; returns the estimate.

        Always >= the true minimum defect.  After a fallback, returns the
        total stream weight, which satisfies the same lower bound.
        """
        if self._done:
            raise RuntimeError("sketch already finished")
        self._done = True
        if self._fallback:
            return self._total
        total = self._total
        r = total  # via the virtual start
        for pos in range(len(self._idx)):
            cand = self._r[pos] + total - self._W[pos]
            if cand < r:
                r = cand
        return r


class PointDefectSketch:
    """Vectorized :class:`MinDefectSketch` for 2-D points under strict
    coordinatewise dominance.

    Coordinates are stored in numpy arrays (int64 by default, float64 for
    non-integer values), so pushes cost a handful of array operations on
    the active set instead of one oracle call per remembered record.
    """

    def __init__(self, params: SketchParams, value_dtype=np.int64):
        self.params = params
        self._rng = np.random.default_rng(params.seed)
        self._idx = np.empty(0, dtype=np.int64)
        self._a = np.empty(0, dtype=value_dtype)
        self._b = np.empty(0, dtype=value_dtype)
        self._W = np.empty(0, dtype=np.int64)
        self._w = np.empty(0, dtype=np.int64)
        self._r = np.empty(0, dtype=np.int64)
        self._t = 0
        self._total = 0
        self._peak = 1
        self._fallback = False
        self._done = False

    @property
    def t(self) -> int:
        return self._t

    @property
    def total_weight(self) -> int:
        return self._total

    @property
    def peak_active(self) -> int:
        return self._peak

    @property
    def fell_back(self) -> bool:
        return self._fallback

    @property
    def active_indices(self) -> tuple[int, ...]:
        if self._fallback:
            return ()
        return (0, *(int(i) for i in self._idx))

    def push(self, first, second, weight: int = 1) -> None:
        """Consume the next point of the stream."""
        if self._done:
            raise RuntimeError("sketch already finished")
        w = int(weight)
        if w < 1:
            raise ValueError("stream weights must be >= 1")
        t = self._t + 1
        w_prev = self._total
        w_t = w_prev + w
        if w_t > self.params.rho_bound:
            raise ValueError("total stream weight exceeds rho_bound")
        self._t = t
        self._total = w_t
        if self._fallback:
            return

        delta = self.params.delta
        gamma = self.params.gamma
        r_t = w_prev
        mask = (self._a < first) & (self._b < second)
        if mask.any():
            best = int((self._r[mask] + (w_prev - self._W[mask])).min())
            if best < r_t:
                r_t = best

        m = len(self._idx)
        if m:
            coef_t = _coefficient(t, delta, gamma)
            coef_tm1 = _coefficient(t - 1, delta, gamma)
            w_im1 = self._W - self._w
            q_t = np.minimum(1.0, coef_t * self._w / (w_t - w_im1))
            q_tm1 = np.minimum(1.0, coef_tm1 * self._w / (w_prev - w_im1))
            p = q_t / q_tm1
            keep = (p > _NEAR_ONE) | (self._rng.random(m) < p)
            if not keep.all():
                self._idx = self._idx[keep]
                self._a = self._a[keep]
                self._b = self._b[keep]
                self._W = self._W[keep]
                self._w = self._w[keep]
                self._r = self._r[keep]

        self._idx = np.append(self._idx, t)
        self._a = np.append(self._a, first)
        self._b = np.append(self._b, second)
        self._W = np.append(self._W, w_t)
        self._w = np.append(self._w, w)
        self._r = np.append(self._r, r_t)

        active = len(self._idx) + 1
        if active > self._peak:
            self._peak = active
        if self.params.enforce_cap and active > self.params.cap_at(t):
            self._fallback = True
            empty = np.empty(0, dtype=np.int64)
            self._idx, self._W, self._w, self._r = empty, empty, empty, empty
            self._a = self._a[:0]
            self._b = self._b[:0]

    def finish(self) -> int:
        if self._done:
            raise RuntimeError("sketch already finished")
        self._done = True
        if self._fallback:
            return self._total
        r = self._total
        if len(self._idx):
            best = int((self._r + (self._total - self._W)).min())
            if best < r:
                r = best
        return r
