"""Exhaustive reference implementations for desk-scale verification.

Every solver in :mod:`minimaxsm.solvers` is cross-checked against these on
small instances.  Oracles refuse inputs that exceed their budget instead of
silently truncating; they are correctness anchors, never fallbacks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .core import Completion, Instance, Matching, restrict_instance


class BudgetExceededError(RuntimeError):
    """The requested enumeration is larger than the oracle budget allows."""


@dataclass(frozen=True)
class OracleBudget:
    max_agents: int = 5
    max_completions: int = 10**6
    max_matchings: int = 10**6


DEFAULT_BUDGET = OracleBudget()


def count_completions(inst: Instance) -> int:
    total = 1
    for tl in itertools.chain(inst.men, inst.women):
        total *= tl.count_linear_orders()
    return total


def _check_completion_budget(inst: Instance, budget: OracleBudget) -> int:
    total = count_completions(inst)
    if total > budget.max_completions:
        raise BudgetExceededError(
            f"{total} completions exceed the budget of {budget.max_completions}"
        )
    return total


def enumerate_completions(
    inst: Instance, budget: OracleBudget = DEFAULT_BUDGET
) -> Iterator[Completion]:
    """All completions, duplicate-free, tier permutations in lexicographic
    order (men first, then women, each ascending by agent index)."""
    _check_completion_budget(inst, budget)
    men_choices = [list(tl.linear_orders()) for tl in inst.men]
    women_choices = [list(tl.linear_orders()) for tl in inst.women]
    for men_orders in itertools.product(*men_choices):
        for women_orders in itertools.product(*women_choices):
            yield Completion(men_orders, women_orders)


def max_bp_over_completions(
    inst: Instance, matching: Matching, budget: OracleBudget = DEFAULT_BUDGET
) -> int:
    """Maximum number of blocking pairs over every completion of ``inst``."""
    _check_completion_budget(inst, budget)
    matching.validate_for(inst.n)
    n = inst.n
    wom_of = [matching.woman_of(m) for m in range(n)]
    man_of = [matching.man_of(w) for w in range(n)]
    men_choices = [[_ranks(o, n) for o in tl.linear_orders()] for tl in inst.men]
    women_choices = [[_ranks(o, n) for o in tl.linear_orders()] for tl in inst.women]
    best = 0
    for men_rank in itertools.product(*men_choices):
        for women_rank in itertools.product(*women_choices):
            count = 0
            for m in range(n):
                mr = men_rank[m]
                pm = wom_of[m]
                for w in range(n):
                    if pm == w:
                        continue
                    if pm is not None and mr[w] > mr[pm]:
                        continue
                    pw = man_of[w]
                    if pw is not None and women_rank[w][m] > women_rank[w][pw]:
                        continue
                    count += 1
            if count > best:
                best = count
    return best


def _ranks(order: tuple[int, ...], n: int) -> tuple[int, ...]:
    out = [0] * n
    for r, x in enumerate(order):
        out[x] = r
    return tuple(out)


def min_super_bp(
    inst: Instance, budget: OracleBudget = DEFAULT_BUDGET
) -> tuple[int, Matching]:
    """Minimum super-blocking-pair count over all perfect matchings, together
    with the lexicographically least matching attaining it."""
    n = inst.n
    if n > budget.max_agents:
        raise BudgetExceededError(
            f"n={n} exceeds the oracle budget of {budget.max_agents} agents per side"
        )
    if math.factorial(n) > budget.max_matchings:
        raise BudgetExceededError(
            f"{n}! matchings exceed the budget of {budget.max_matchings}"
        )
    mrank, wrank = inst.men_rank, inst.women_rank
    best_count = n * n + 1
    best_perm: tuple[int, ...] | None = None
    for perm in itertools.permutations(range(n)):
        man_of = [0] * n
        for m, w in enumerate(perm):
            man_of[w] = m
        count = 0
        for m in range(n):
            mr = mrank[m]
            pm = perm[m]
            for w in range(n):
                if w == pm:
                    continue
                if mr[w] > mr[pm]:
                    continue
                if wrank[w][m] > wrank[w][man_of[w]]:
                    continue
                count += 1
        if count < best_count:
            best_count = count
            best_perm = perm
    assert best_perm is not None
    return best_count, Matching(enumerate(best_perm))


def min_delete(
    inst: Instance, budget: OracleBudget = DEFAULT_BUDGET
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Smallest agent set whose removal leaves a perfect super-stable
    sub-market, as (deleted men, deleted women).

    Only balanced deletions are enumerated: the remaining matching must be
    perfect, which forces equally many deletions on both sides.  Subsets are
    tried in increasing size, lexicographically, so the reported optimum is
    deterministic.
    """
    from .solvers import super_stable_solve

    n = inst.n
    if n > budget.max_agents:
        raise BudgetExceededError(
            f"n={n} exceeds the oracle budget of {budget.max_agents} agents per side"
        )
    everyone = range(n)
    for half in range(n + 1):
        for del_men in itertools.combinations(everyone, half):
            keep_men = [m for m in everyone if m not in del_men]
            for del_women in itertools.combinations(everyone, half):
                keep_women = [w for w in everyone if w not in del_women]
                if not keep_men:
                    return del_men, del_women
                sub, _, _ = restrict_instance(inst, keep_men, keep_women)
                if super_stable_solve(sub) is not None:
                    return del_men, del_women
    raise AssertionError("total deletion always succeeds")


def max_internal_super_stable_size(
    inst: Instance, allowed_pairs: frozenset[tuple[int, int]] | set[tuple[int, int]]
) -> int:
    """Largest matching drawn from ``allowed_pairs`` that is super-stable on
    the sub-market of its own matched agents.

    Exhaustive search over all matchings inside ``allowed_pairs``; intended
    for desk-scale pipeline verification only.
    """
    n = inst.n
    options: list[list[int]] = [[] for _ in range(n)]
    for m, w in allowed_pairs:
        options[m].append(w)
    for opts in options:
        opts.sort()

    mrank, wrank = inst.men_rank, inst.women_rank
    best = 0

    def has_internal_super_block(
        wom_of: list[int | None], man_of: list[int | None]
    ) -> bool:
        for m in range(n):
            pm = wom_of[m]
            if pm is None:
                continue
            mr = mrank[m]
            for w in range(n):
                pw = man_of[w]
                if pw is None or w == pm:
                    continue
                if mr[w] > mr[pm]:
                    continue
                if wrank[w][m] > wrank[w][pw]:
                    continue
                return True
        return False

    wom_of: list[int | None] = [None] * n
    man_of: list[int | None] = [None] * n

    def search(m: int, size: int) -> None:
        nonlocal best
        if m == n:
            if size > best and not has_internal_super_block(wom_of, man_of):
                best = size
            return
        if size + (n - m) <= best:
            return
        for w in options[m]:
            if man_of[w] is None:
                wom_of[m] = w
                man_of[w] = m
                search(m + 1, size + 1)
                wom_of[m] = None
                man_of[w] = None
        search(m + 1, size)

    search(0, 0)
    return best
