"""Brute-force oracles: enumeration counts, budgets, and mutual consistency."""

import itertools
from fractions import Fraction

import pytest

from minimaxsm import (
    Matching,
    TierList,
    Instance,
    count_super_blocking_pairs,
    enumerate_completions,
    max_bp_over_completions,
    min_delete,
    min_super_bp,
    super_stable_solve,
)
from minimaxsm.oracles import (
    BudgetExceededError,
    OracleBudget,
    count_completions,
    max_internal_super_stable_size,
)
from minimaxsm.generators import gen_fig1, gen_random

from conftest import strict, tiered

BIG = OracleBudget(max_agents=8, max_completions=10**6, max_matchings=10**6)


def test_strict_instance_has_one_completion():
    inst = strict([[0, 1], [1, 0]], [[0, 1], [0, 1]])
    comps = list(enumerate_completions(inst))
    assert len(comps) == 1
    assert comps[0].to_instance() == inst


def test_single_two_tie_has_two_completions():
    inst = tiered(men=[[[0, 1]], [[0], [1]]], women=[[[0], [1]], [[0], [1]]])
    assert count_completions(inst) == 2
    assert len(list(enumerate_completions(inst))) == 2


def test_two_full_ties_n3_give_36_completions():
    order = [[0], [1], [2]]
    men = [[[0, 1, 2]], order, order]
    women = [[[0, 1, 2]], order, order]
    inst = tiered(men=men, women=women)
    assert count_completions(inst) == 36
    comps = list(enumerate_completions(inst))
    assert len(comps) == 36
    assert len(set(comps)) == 36
    assert all(c.refines(inst) for c in comps)


def test_completion_budget_is_enforced():
    full = TierList((tuple(range(4)),))
    inst = Instance([full] * 4, [full] * 4)
    with pytest.raises(BudgetExceededError):
        list(enumerate_completions(inst, OracleBudget(max_completions=1000)))


def test_agent_budget_is_enforced():
    inst = gen_random(6, Fraction(1, 8), seed=3)
    with pytest.raises(BudgetExceededError):
        min_super_bp(inst)
    with pytest.raises(BudgetExceededError):
        min_delete(inst)


def test_max_bp_zero_for_stable_matching_on_strict():
    inst = strict([[0, 1], [0, 1]], [[0, 1], [0, 1]])
    assert max_bp_over_completions(inst, Matching([(0, 0), (1, 1)])) == 0


def test_max_bp_on_fig1_identity_is_one():
    inst = gen_fig1(8, Fraction(1, 4))
    assert max_bp_over_completions(inst, Matching.identity(8), BIG) == 1


def test_max_bp_equals_super_bp_count(mixed_corpus):
    for inst in mixed_corpus[:12]:
        if count_completions(inst) > 4000:
            continue
        for perm in itertools.permutations(range(inst.n)):
            matching = Matching(enumerate(perm))
            assert max_bp_over_completions(inst, matching) == count_super_blocking_pairs(
                inst, matching
            )


def test_min_super_bp_zero_iff_super_stable(mixed_corpus):
    for inst in mixed_corpus:
        count, argmin = min_super_bp(inst)
        assert count == count_super_blocking_pairs(inst, argmin)
        assert (count == 0) == (super_stable_solve(inst) is not None)


def test_min_super_bp_on_fig1_variant():
    # at n=8 the block width is 2, every tie collapses to a singleton and the
    # strict market has a perfect stable matching: the optimum is 0 here
    # (the cascade family needs n >= 12 for real ties; see the exact-solver
    # tests), while the identity matching still has its one blocking pair
    inst = gen_fig1(8, Fraction(1, 4))
    assert inst.is_strict
    count, _ = min_super_bp(inst, BIG)
    assert count == 0
    assert count_super_blocking_pairs(inst, Matching.identity(8)) == 1


def test_min_super_bp_returns_lexicographically_least():
    # every matching of the all-tied 2x2 market has the same block count
    full = TierList(((0, 1),))
    inst = Instance([full] * 2, [full] * 2)
    count, argmin = min_super_bp(inst)
    assert count == 2
    assert argmin == Matching([(0, 0), (1, 1)])


def test_min_delete_empty_when_super_stable():
    inst = strict([[0, 1], [0, 1]], [[0, 1], [0, 1]])
    assert min_delete(inst) == ((), ())


def test_min_delete_finds_single_pair_removal():
    # w1 ties everyone and every man loves her: deleting w1 plus one man
    # leaves a strict, solvable market
    inst = tiered(
        men=[[[0], [1], [2]], [[0], [1], [2]], [[0], [2], [1]]],
        women=[[[0, 1, 2]], [[0], [1], [2]], [[1], [2], [0]]],
    )
    assert super_stable_solve(inst) is None
    deleted_men, deleted_women = min_delete(inst)
    assert len(deleted_men) == 1 and len(deleted_women) == 1


def test_min_delete_half_bounds_min_super_bp(mixed_corpus):
    # a matching with b super-blocking pairs yields a deletion set of 2b agents
    for inst in mixed_corpus[:30]:
        count, _ = min_super_bp(inst)
        deleted_men, deleted_women = min_delete(inst)
        assert count >= (len(deleted_men) + len(deleted_women)) / 2


def test_internal_size_oracle_on_empty_and_full():
    inst = strict([[0, 1], [0, 1]], [[0, 1], [0, 1]])
    assert max_internal_super_stable_size(inst, frozenset()) == 0
    all_pairs = frozenset((m, w) for m in range(2) for w in range(2))
    assert max_internal_super_stable_size(inst, all_pairs) == 2


def test_internal_size_oracle_respects_allowed_pairs():
    inst = strict([[0, 1], [0, 1]], [[0, 1], [0, 1]])
    # only the crossed pairs are allowed; they block each other internally
    crossed = frozenset({(0, 1), (1, 0)})
    assert max_internal_super_stable_size(inst, crossed) == 1
