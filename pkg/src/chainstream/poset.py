"""Partial orders, weighted sequences, chains, and defects.

Shared vocabulary for every estimator in the package: streams of elements
from a partially ordered set, each element carrying a positive integer
weight; a chain is an index-increasing subsequence whose elements strictly
increase under the order; the defect of a chain is the total weight of
everything it leaves out.

Indices are 0-based throughout.  The order relation is supplied as a plain
callable ``less(a, b) -> bool`` and must be a strict partial order
(irreflexive, asymmetric, transitive).  Preorders with distinct-but-equal
elements are not supported.  Incomparable elements simply never form an
arc; no tie-breaking happens at this layer.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, NamedTuple, Sequence

LessFunc = Callable[[Any, Any], bool]

# Total stream weight must stay addressable in one 64-bit cell.
MAX_TOTAL_WEIGHT = 2**64 - 1


def natural_less(a: Any, b: Any) -> bool:
    """Strict total order on any values supporting ``<``."""
    return a < b


class PairPoint(NamedTuple):
    """A 2-D point, ordered by strict coordinatewise dominance.

    Serves both reductions: arrays map position i with value v to
    ``PairPoint(i, v)``; string pairs map a match of x(i) at y-position j
    to ``PairPoint(i, j)``.
    """

    first: int
    second: int


def pair_dominance(a: Sequence, b: Sequence) -> bool:
    """True iff ``a`` is strictly below ``b`` in both coordinates."""
    return a[0] < b[0] and a[1] < b[1]


@dataclass(frozen=True)
class WeightedSequence:
    """A finite stream of poset elements with positive integer weights.

    Zero weights are rejected at ingestion: the retention schedule of the
    streaming estimator is undefined for interior zero-weight items, and
    every adapter in this package uses unit weights anyway.
    """

    elements: tuple
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.elements) != len(self.weights):
            raise ValueError("elements and weights must have equal length")
        if any(w < 1 for w in self.weights):
            raise ValueError("all stream weights must be >= 1")
        if sum(self.weights) > MAX_TOTAL_WEIGHT:
            raise ValueError("total weight exceeds 64-bit range")

    @classmethod
    def unit(cls, elements: Iterable) -> "WeightedSequence":
        """Wrap ``elements`` with unit weights."""
        elems = tuple(elements)
        return cls(elems, (1,) * len(elems))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)


class ChainPath(NamedTuple):
    """A validated chain: strictly increasing indices forming arcs."""

    indices: tuple[int, ...]

    @classmethod
    def checked(cls, less: LessFunc, seq: WeightedSequence,
                indices: Iterable[int]) -> "ChainPath":
        idx = tuple(int(i) for i in indices)
        if not is_chain(less, seq, idx):
            raise ValueError(f"indices {idx} do not form a chain")
        return cls(idx)


def is_chain(less: LessFunc, seq: WeightedSequence,
             indices: Iterable[int]) -> bool:
    """True iff ``indices`` strictly increase, are in range, and each
    consecutive element pair satisfies the order.  Malformed input
    returns False rather than raising."""
    prev = None
    try:
        for i in indices:
            i = int(i)
            if not 0 <= i < len(seq):
                return False
            if prev is not None:
                if i <= prev or not less(seq.elements[prev], seq.elements[i]):
                    return False
            prev = i
    except (TypeError, ValueError):
        return False
    return True


def defect_of(less: LessFunc, seq: WeightedSequence,
              path: ChainPath | Iterable[int]) -> int:
    """Total weight of the indices *not* on ``path``.

    The empty chain has defect equal to the full stream weight.  Raises
    ``ValueError`` for out-of-range indices or a non-chain.
    """
    indices = tuple(path.indices if isinstance(path, ChainPath) else path)
    if not is_chain(less, seq, indices):
        raise ValueError(f"indices {indices} do not form a chain")
    return seq.total_weight - sum(seq.weights[i] for i in indices)
