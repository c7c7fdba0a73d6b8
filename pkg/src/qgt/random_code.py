"""Seeded random query systems certifying distinguishability, with claim checks.

The construction draws t1 queries with per-element inclusion probability
alpha/(6n) and t2 more with probability min(1/(6k), alpha/(6n)), where

    t1 = ceil((8n/alpha) * (ln(n*e) + 4))
    t2 = ceil(k * (ln(n*e) + 4))

When t1 + t2 >= n the n singleton queries are shorter and are used
instead (each claim below then holds outright), so the output length is
always min(t1 + t2, n).

Three claims certify a draw: (1) every query has at most alpha
elements, (2) every nonempty K with |K| <= min(k, n/alpha) meets some
first-part query in exactly one element, (3) every K with
n/alpha < |K| <= k meets some second-part query in exactly one element.
A verified code distinguishes any two multisets of at most k elements
via their symmetric difference.  At small n the union bounds backing
the claims are loose, so verification is the source of truth and
callers retry seeds until it passes.

The natural logarithm in t1/t2 is evaluated in floating point and then
rounded up.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import ceil, comb, e, log

from .model import Query
from .ssui import BudgetError


@dataclass(frozen=True)
class RandomCodeParams:
    n: int
    k: int
    alpha: int
    seed: int

    @property
    def t1(self) -> int:
        return ceil((8 * self.n / self.alpha) * (log(self.n * e) + 4))

    @property
    def t2(self) -> int:
        return ceil(self.k * (log(self.n * e) + 4))

    @property
    def p1(self) -> float:
        return self.alpha / (6 * self.n)

    @property
    def p2(self) -> float:
        return min(1 / (6 * self.k), self.alpha / (6 * self.n))

    @property
    def fallback(self) -> bool:
        return self.t1 + self.t2 >= self.n


@dataclass(frozen=True)
class RandomCode:
    queries: tuple[Query, ...]
    n: int
    k: int
    alpha: int
    seed: int
    t1: int  # length of the first part (equals len(queries) on fallback)
    t2: int
    fallback: bool


def build_random_code(n: int, k: int, alpha: int, seed: int = 0) -> RandomCode:
    if n < 2:
        raise ValueError(f"universe size must be >= 2, got {n}")
    if not 1 <= k <= n:
        raise ValueError(f"capacity k must satisfy 1 <= k <= n, got {k}")
    if alpha < 1:
        raise ValueError(f"feedback cap must be >= 1, got {alpha}")
    params = RandomCodeParams(n, k, alpha, seed)
    if params.fallback:
        queries = tuple(frozenset((v,)) for v in range(1, n + 1))
        return RandomCode(queries, n, k, alpha, seed, len(queries), 0, True)
    rng = random.Random(seed)
    queries_list: list[Query] = []
    for probability, count in ((params.p1, params.t1), (params.p2, params.t2)):
        for _ in range(count):
            queries_list.append(
                frozenset(v for v in range(1, n + 1) if rng.random() < probability)
            )
    return RandomCode(tuple(queries_list), n, k, alpha, seed, params.t1, params.t2, False)


def params_for(n: int, k: int, alpha: int) -> RandomCodeParams:
    return RandomCodeParams(n, k, alpha, 0)


@dataclass(frozen=True)
class ClaimReport:
    claim1: bool
    claim2: bool
    claim3: bool
    witness1: Query | None = None
    witness2: frozenset[int] | None = None
    witness3: frozenset[int] | None = None

    @property
    def passed(self) -> bool:
        return self.claim1 and self.claim2 and self.claim3

    def lines(self) -> list[str]:
        out = []
        for name, ok, witness in (
            ("claim1 (all queries have <= alpha elements)", self.claim1, self.witness1),
            ("claim2 (small sets hit exactly once by part 1)", self.claim2, self.witness2),
            ("claim3 (large sets hit exactly once by part 2)", self.claim3, self.witness3),
        ):
            line = f"{name}: {'pass' if ok else 'FAIL'}"
            if witness is not None:
                line += f"  witness={sorted(witness)}"
            out.append(line)
        return out


def _hit_exactly_once(
    lo: int, hi: int, incidence: dict[int, list[int]], combo: tuple[int, ...]
) -> bool:
    """Does some query with index in [lo, hi) meet the set in exactly one element?"""
    counts: dict[int, int] = {}
    for v in combo:
        for idx in incidence[v]:
            counts[idx] = counts.get(idx, 0) + 1
    return any(c == 1 and lo <= idx < hi for idx, c in counts.items())


def verify_claims(
    code: RandomCode,
    mode: str = "exhaustive",
    budget: int = 10_000_000,
    trials: int = 1000,
    seed: int = 0,
) -> ClaimReport:
    """Check the three claims; exhaustive over all candidate sets or over sampled ones.

    On the singleton fallback the two parts coincide with the whole code,
    matching the fact that singletons hit every set exactly once.
    """
    n, k, alpha = code.n, code.k, code.alpha
    claim1 = True
    witness1 = None
    for s in code.queries:
        if len(s) > alpha:
            claim1 = False
            witness1 = s
            break
    incidence: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for idx, s in enumerate(code.queries):
        for v in s:
            incidence[v].append(idx)
    if code.fallback:
        part1 = (0, len(code.queries))
        part2 = part1
    else:
        part1 = (0, code.t1)
        part2 = (code.t1, code.t1 + code.t2)
    small_limit = min(k, n // alpha)
    claim2, witness2 = True, None
    claim3, witness3 = True, None
    if mode == "exhaustive":
        if sum(comb(n, j) for j in range(1, k + 1)) > budget:
            raise BudgetError("instance too large for exhaustive oracle")
        for size in range(1, k + 1):
            lo, hi = part1 if size <= small_limit else part2
            for combo in itertools.combinations(range(1, n + 1), size):
                if not _hit_exactly_once(lo, hi, incidence, combo):
                    if size <= small_limit:
                        claim2, witness2 = False, frozenset(combo)
                    else:
                        claim3, witness3 = False, frozenset(combo)
                    break
            if not (claim2 and claim3):
                break
    elif mode == "sampled":
        rng = random.Random(seed)
        population = list(range(1, n + 1))
        for _ in range(trials):
            size = rng.randint(1, k)
            combo = tuple(rng.sample(population, size))
            lo, hi = part1 if size <= small_limit else part2
            if not _hit_exactly_once(lo, hi, incidence, combo):
                if size <= small_limit:
                    claim2, witness2 = False, frozenset(combo)
                else:
                    claim3, witness3 = False, frozenset(combo)
                break
    else:
        raise ValueError(f"unknown verification mode {mode!r}")
    return ClaimReport(claim1, claim2, claim3, witness1, witness2, witness3)


def find_verified_code(
    n: int,
    k: int,
    alpha: int,
    start_seed: int = 0,
    max_tries: int = 50,
    mode: str = "exhaustive",
    budget: int = 10_000_000,
    trials: int = 1000,
) -> tuple[RandomCode, ClaimReport, int]:
    """Retry seeds until the claims verify; returns (code, report, attempts used)."""
    for attempt in range(max_tries):
        code = build_random_code(n, k, alpha, start_seed + attempt)
        report = verify_claims(code, mode=mode, budget=budget, trials=trials, seed=start_seed)
        if report.passed:
            return code, report, attempt + 1
    raise ValueError(f"no seed in [{start_seed}, {start_seed + max_tries}) passed the claims")
