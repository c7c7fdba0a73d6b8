"""Core model: problem instances, capped count feedback, and feedback vectors.

A problem instance is a universe [1..n] (n a power of two), a hidden
multiset over that universe, and a fixed ordered sequence of queries.
Each query is a set of element indices.  The only channel from the
hidden multiset to a decoder is the feedback vector: for every query,
the multiplicity-weighted intersection count capped at ``alpha``.
Plain hidden sets are multisets with every multiplicity equal to one.

All values here are immutable; every operation is a pure function.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

Query = frozenset[int]
Multiset = dict[int, int]
FeedbackVector = tuple[int, ...]


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def next_power_of_two(x: int) -> int:
    if x < 1:
        raise ValueError(f"expected a positive integer, got {x}")
    return 1 << (x - 1).bit_length()


@dataclass(frozen=True)
class Params:
    """Instance parameters: universe size, hidden-set capacity, feedback cap.

    ``n`` must be a power of two; non-conforming universes are rejected
    rather than padded.  ``alpha`` >= 2 is required by the deterministic
    decoder; ``alpha`` >= 1 is enough everywhere else, and alpha > k is
    accepted (the cap then never binds, i.e. full count feedback).
    """

    n: int
    k: int
    alpha: int

    def __post_init__(self) -> None:
        if self.n < 2 or not is_power_of_two(self.n):
            raise ValueError(f"universe size must be a power of two >= 2, got {self.n}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"capacity k must satisfy 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.alpha < 1:
            raise ValueError(f"feedback cap must be >= 1, got {self.alpha}")


def as_multiset(hidden: Iterable[int] | Mapping[int, int], n: int | None = None) -> Multiset:
    """Normalize a hidden set description into an element -> multiplicity dict.

    Accepts an iterable of elements (multiplicity one each, duplicates
    accumulate) or a mapping with positive multiplicities.  With ``n``
    given, indices are range-checked against [1..n].
    """
    counts: Multiset = {}
    if isinstance(hidden, Mapping):
        for v, m in hidden.items():
            if m < 1:
                raise ValueError(f"multiplicity of element {v} must be >= 1, got {m}")
            counts[int(v)] = counts.get(int(v), 0) + int(m)
    else:
        for v in hidden:
            counts[int(v)] = counts.get(int(v), 0) + 1
    if n is not None:
        for v in counts:
            if not 1 <= v <= n:
                raise ValueError(f"element {v} outside universe [1..{n}]")
    return counts


def multiset_total(hidden: Mapping[int, int]) -> int:
    """Sum of multiplicities (the total weight of the hidden multiset)."""
    return sum(hidden.values())


def capped_feedback(query: Query, hidden: Iterable[int] | Mapping[int, int], alpha: int) -> int:
    """min(weighted |query ∩ hidden|, alpha) -- the single-query feedback value."""
    if alpha < 1:
        raise ValueError(f"feedback cap must be >= 1, got {alpha}")
    counts = as_multiset(hidden)
    weight = sum(m for v, m in counts.items() if v in query)
    return min(weight, alpha)


def feedback_vector(
    queries: Iterable[Query], hidden: Iterable[int] | Mapping[int, int], alpha: int
) -> FeedbackVector:
    """Feedback values of every query against one hidden multiset, in order."""
    if alpha < 1:
        raise ValueError(f"feedback cap must be >= 1, got {alpha}")
    counts = as_multiset(hidden)
    out = []
    for q in queries:
        weight = sum(m for v, m in counts.items() if v in q)
        out.append(min(weight, alpha))
    return tuple(out)


def distinguishes(
    queries: Iterable[Query],
    k1: Iterable[int] | Mapping[int, int],
    k2: Iterable[int] | Mapping[int, int],
    alpha: int,
) -> bool:
    """True iff the two hidden multisets produce different feedback vectors."""
    c1 = as_multiset(k1)
    c2 = as_multiset(k2)
    if c1 == c2:
        raise ValueError("identical sets")
    qs = tuple(queries)
    return feedback_vector(qs, c1, alpha) != feedback_vector(qs, c2, alpha)
