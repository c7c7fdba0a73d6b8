"""Query-count lower bound and adversarial consistency checks.

The closed-form lower bound for capacity k and cap alpha has two parts:
min((k/alpha)^2, n/alpha) holds for *any* feedback capped at alpha, and
k*log2(n/k)/log2(alpha) is the information-theoretic term for the
counting feedback itself; at alpha = 1 the feedback is binary
(two values per position) and the denominator is taken as 1.
Constants hidden by the asymptotics are not reproduced; the bound is
evaluated directly and callers compare measured lengths against it.

`find_unjammed_violation` is the executable form of the jamming
argument: a solvable query system must give every element x of every
candidate set K at least one query containing x whose intersection with
K has at most alpha+1 elements; otherwise K and K \\ {x} produce
identical feedback under some cap-alpha function.  `verify_uniqueness`
is the definition of solvability itself, checked exhaustively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, log2

from .model import Query
from .ssui import BudgetError


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    alpha: int
    lb_capped_general: float
    lb_info: float
    lb_total: float
    measured_m: int | None = None

    @property
    def ratio(self) -> float | None:
        if self.measured_m is None or self.lb_total == 0:
            return None
        return self.measured_m / self.lb_total


def lower_bound(n: int, k: int, alpha: int, measured_m: int | None = None) -> BoundReport:
    """Evaluate the lower-bound expression, optionally against a measured length."""
    if k > n:
        raise ValueError(f"capacity k={k} exceeds universe size n={n}")
    if k < 1 or alpha < 1:
        raise ValueError("k and alpha must be positive")
    general = min((k / alpha) ** 2, n / alpha)
    denom = log2(alpha) if alpha >= 2 else 1.0
    info = k * log2(n / k) / denom
    return BoundReport(n, k, alpha, general, info, general + info, measured_m)


def sets_up_to(n: int, k: int) -> int:
    """Number of hidden-set candidates: all subsets of [1..n] with at most k elements."""
    return sum(comb(n, j) for j in range(k + 1))


def counting_bound_holds(n: int, k: int, alpha: int, m: int) -> bool:
    """Feedback positions carry alpha+1 values, so solvability needs (alpha+1)^m >= #sets."""
    return (alpha + 1) ** m >= sets_up_to(n, k)


def _query_masks(queries: tuple[Query, ...]) -> list[int]:
    return [sum(1 << (v - 1) for v in s) for s in queries]


def find_unjammed_violation(
    queries: tuple[Query, ...],
    n: int,
    k: int,
    alpha: int,
    budget: int = 10_000_000,
) -> tuple[frozenset[int], int] | None:
    """First (K, x) with every query containing x over-full on K, or None.

    A returned witness means K and K \\ {x} are indistinguishable under
    some feedback capped at alpha, so the query system cannot be
    solvable.  None over all |K| <= k is the necessary condition the
    jamming argument demands of every correct code.
    """
    if sets_up_to(n, k) > budget:
        raise BudgetError("instance too large for exhaustive oracle")
    masks = _query_masks(queries)
    incidence: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for idx, m in enumerate(masks):
        bits = m
        while bits:
            low = bits & -bits
            incidence[low.bit_length()].append(idx)
            bits ^= low
    for size in range(1, k + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            k_mask = sum(1 << (v - 1) for v in combo)
            for x in combo:
                if not any(
                    (masks[idx] & k_mask).bit_count() <= alpha + 1 for idx in incidence[x]
                ):
                    return frozenset(combo), x
    return None


def verify_uniqueness(
    queries: tuple[Query, ...],
    n: int,
    k: int,
    alpha: int,
    budget: int = 10_000_000,
) -> bool:
    """True iff the feedback vectors of all sets with |K| <= k are pairwise distinct."""
    if sets_up_to(n, k) > budget:
        raise BudgetError("instance too large for exhaustive oracle")
    masks = _query_masks(queries)
    incidence: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for idx, m in enumerate(masks):
        bits = m
        while bits:
            low = bits & -bits
            incidence[low.bit_length()].append(idx)
            bits ^= low
    # Nonzero positions characterize a vector (all others read 0), so sets are
    # compared through their sparse capped profiles instead of full m-tuples.
    seen: set[tuple[tuple[int, int], ...]] = set()
    counts = [0] * len(queries)
    for size in range(k + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            touched: list[int] = []
            for v in combo:
                for idx in incidence[v]:
                    if counts[idx] == 0:
                        touched.append(idx)
                    counts[idx] += 1
            touched.sort()
            profile = tuple((idx, min(counts[idx], alpha)) for idx in touched)
            for idx in touched:
                counts[idx] = 0
            if profile in seen:
                return False
            seen.add(profile)
    return True
