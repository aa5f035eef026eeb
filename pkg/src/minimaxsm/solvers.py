"""Constructive algorithms: weakly-stable matching via completion, super-stable
matching existence, bounded exact search for the minimum super-blocking-pair
matching, and the deletion pipeline for one-sided bottom-tie preferences.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .core import (
    Completion,
    Instance,
    Matching,
    TierList,
    ValidationError,
    build_witness_completion,
    obvious_blocking_pairs,
    super_blocking_pairs,
    validate_one_sided_top_truncated,
)


class PreconditionError(ValueError):
    """The input violates a solver precondition."""


class DegenerateInstanceError(RuntimeError):
    """A working preference list emptied mid-run; the pipeline cannot continue."""


@dataclass(frozen=True)
class SolveReport:
    """A matching together with its quality certificate.

    The witness completion realises every super-blocking pair as a classical
    blocking pair, so its blocking-pair count equals the super-blocking-pair
    count: no completion can do worse.
    """

    algorithm: str
    matching: Matching
    super_blocking_pairs: tuple[tuple[int, int], ...]
    obvious_blocking_pairs: tuple[tuple[int, int], ...]
    witness_completion: Completion
    deleted_men: tuple[int, ...] | None = None
    deleted_women: tuple[int, ...] | None = None

    @classmethod
    def build(
        cls,
        inst: Instance,
        matching: Matching,
        algorithm: str,
        deleted_men: Iterable[int] | None = None,
        deleted_women: Iterable[int] | None = None,
    ) -> "SolveReport":
        sbps = tuple(super_blocking_pairs(inst, matching))
        obps = tuple(obvious_blocking_pairs(inst, matching))
        witness = build_witness_completion(inst, matching)
        assert len(witness.blocking_pairs(matching)) == len(sbps)
        return cls(
            algorithm=algorithm,
            matching=matching,
            super_blocking_pairs=sbps,
            obvious_blocking_pairs=obps,
            witness_completion=witness,
            deleted_men=None if deleted_men is None else tuple(sorted(deleted_men)),
            deleted_women=None if deleted_women is None else tuple(sorted(deleted_women)),
        )

    @property
    def super_bp_count(self) -> int:
        return len(self.super_blocking_pairs)


# ---------------------------------------------------------------------------
# Weakly-stable matching from an arbitrary completion
# ---------------------------------------------------------------------------

def _complete_orders(tl: TierList, rng: random.Random | None) -> tuple[int, ...]:
    out: list[int] = []
    for tier in tl.tiers:
        members = list(tier)
        if rng is not None:
            rng.shuffle(members)
        out.extend(members)
    return tuple(out)


def _deferred_acceptance(
    men_orders: tuple[tuple[int, ...], ...],
    women_rank: tuple[tuple[int, ...], ...],
) -> Matching:
    """Man-proposing deferred acceptance on strict complete lists."""
    n = len(men_orders)
    nxt = [0] * n
    fiance: list[int | None] = [None] * n
    free = deque(range(n))
    while free:
        m = free.popleft()
        w = men_orders[m][nxt[m]]
        nxt[m] += 1
        p = fiance[w]
        if p is None:
            fiance[w] = m
        elif women_rank[w][m] < women_rank[w][p]:
            fiance[w] = m
            free.append(p)
        else:
            free.append(m)
    return Matching((fiance[w], w) for w in range(n))


def gale_shapley_completion(inst: Instance, seed: int | None = None) -> SolveReport:
    """Fill in the missing comparisons, then run deferred acceptance.

    With ``seed=None`` ties are broken by ascending index; otherwise each tier
    is shuffled with a seeded RNG.  The result is evaluated against the
    original instance; it is weakly stable by construction.
    """
    rng = random.Random(seed) if seed is not None else None
    men_orders = tuple(_complete_orders(tl, rng) for tl in inst.men)
    women_orders = tuple(_complete_orders(tl, rng) for tl in inst.women)
    completion = Completion(men_orders, women_orders)
    matching = _deferred_acceptance(completion.men_orders, completion.women_rank)
    return SolveReport.build(inst, matching, "gs")


# ---------------------------------------------------------------------------
# Super-stable matching
# ---------------------------------------------------------------------------

def super_stable_solve(inst: Instance) -> Matching | None:
    """Find a super-stable matching, or return None when none exists.

    Proposal-with-deletion procedure.  A free man proposes to every woman in
    the current head tier of his list and may hold several provisional
    engagements at once.  A woman accepting a proposal deletes every strictly
    worse entry (displacing any such fiance); a woman whose fiance ties the
    proposer rejects both, deleting both pairs.  Every deletion removes a
    pair that no super-stable matching can contain, so an emptied list proves
    non-existence.  Once no man is free, each man holds exactly one
    engagement (each woman holds at most one, so n men with at least one
    average out to one each) and that matching is returned after a final
    stability check; a failed check likewise proves non-existence.
    """
    n = inst.n
    if n == 0:
        return Matching(())
    work = WorkingInstance(inst)
    wrank = inst.women_rank
    eng_count = [0] * n
    fiance: list[int | None] = [None] * n
    free = deque(range(n))
    while free:
        m = free.popleft()
        if eng_count[m]:
            continue
        tiers = work.men_lists[m]
        if not tiers:
            return None
        for w in list(tiers[0]):
            if not work.contains(m, w):
                continue
            p = fiance[w]
            if p is not None and wrank[w][p] == wrank[w][m]:
                # w cannot rank m against her fiance: neither pair survives.
                work.delete(m, w)
                work.delete(p, w)
                fiance[w] = None
                eng_count[p] -= 1
                if not eng_count[p]:
                    free.append(p)
                continue
            assert p is None or wrank[w][m] < wrank[w][p]
            for m2 in [
                x
                for tier in work.women_lists[w]
                for x in tier
                if wrank[w][x] > wrank[w][m]
            ]:
                work.delete(m2, w)
                if fiance[w] == m2:
                    fiance[w] = None
                    eng_count[m2] -= 1
                    if not eng_count[m2]:
                        free.append(m2)
            fiance[w] = m
            eng_count[m] += 1
        if not eng_count[m]:
            if not work.men_lists[m]:
                return None
            free.append(m)
    pairs = [(fiance[w], w) for w in range(n) if fiance[w] is not None]
    assert len(pairs) == n
    matching = Matching(pairs)
    if super_blocking_pairs(inst, matching):
        return None
    return matching


# ---------------------------------------------------------------------------
# Exact bounded search
# ---------------------------------------------------------------------------

def _demote(inst: Instance, pairs: tuple[tuple[int, int], ...]) -> Instance:
    """Push each pair's two agents to the bottom of each other's list.

    An agent demoting several partners keeps them as one incomparable bottom
    tier; the surviving tier structure is otherwise preserved.
    """
    men_drop: dict[int, set[int]] = {}
    women_drop: dict[int, set[int]] = {}
    for m, w in pairs:
        men_drop.setdefault(m, set()).add(w)
        women_drop.setdefault(w, set()).add(m)

    def rebuilt(tl: TierList, drop: set[int]) -> TierList:
        if not drop:
            return tl
        tiers = [
            kept
            for tier in tl.tiers
            if (kept := tuple(x for x in tier if x not in drop))
        ]
        tiers.append(tuple(sorted(drop)))
        return TierList(tuple(tiers))

    men = tuple(rebuilt(tl, men_drop.get(m, set())) for m, tl in enumerate(inst.men))
    women = tuple(
        rebuilt(tl, women_drop.get(w, set())) for w, tl in enumerate(inst.women)
    )
    return Instance(men, women)


def exact_min_super_bp(inst: Instance, k_max: int | None = None) -> SolveReport | None:
    """Optimal minimum-super-blocking-pair matching by bounded subset search.

    For j = 0, 1, ... try every j-subset of man-woman pairs as the candidate
    blocking set: demote its pairs and test the modified instance for
    super-stability.  The first success is optimal because all smaller sizes
    failed, and the returned matching has at most j super-blocking pairs on
    the original instance.  Returns None when ``k_max`` is exhausted.
    """
    n = inst.n
    if k_max is None:
        k_max = n * n
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    all_pairs = [(m, w) for m in range(n) for w in range(n)]
    for j in range(min(k_max, n * n) + 1):
        for subset in itertools.combinations(all_pairs, j):
            candidate = super_stable_solve(_demote(inst, subset))
            if candidate is not None:
                return SolveReport.build(inst, candidate, "exact")
    return None


# ---------------------------------------------------------------------------
# Working lists with symmetric deletion
# ---------------------------------------------------------------------------

class WorkingInstance:
    """Mutable per-agent tier lists supporting delete(man, woman) on both
    sides at once; emptied tiers are removed.  The originating instance keeps
    the rank matrices, which deletion never changes."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self.n = inst.n
        self.men_lists: list[list[list[int]]] = [
            [list(t) for t in tl.tiers] for tl in inst.men
        ]
        self.women_lists: list[list[list[int]]] = [
            [list(t) for t in tl.tiers] for tl in inst.women
        ]

    def contains(self, man: int, woman: int) -> bool:
        return any(woman in tier for tier in self.men_lists[man])

    def delete(self, man: int, woman: int) -> None:
        self._remove(self.men_lists[man], woman)
        self._remove(self.women_lists[woman], man)

    @staticmethod
    def _remove(tiers: list[list[int]], x: int) -> None:
        for i, tier in enumerate(tiers):
            if x in tier:
                tier.remove(x)
                if not tier:
                    del tiers[i]
                return
        raise KeyError(f"{x} not present")

    def entries(self, side: str, agent: int) -> list[int]:
        tiers = (self.men_lists if side == "men" else self.women_lists)[agent]
        return [x for tier in tiers for x in tier]

    def side_is_strict(self, side: str) -> bool:
        lists = self.men_lists if side == "men" else self.women_lists
        return all(len(tier) == 1 for tiers in lists for tier in tiers)

    def pair_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (m, w) for m in range(self.n) for tier in self.men_lists[m] for w in tier
        )


# ---------------------------------------------------------------------------
# Deletion pipeline for one-sided bottom ties
# ---------------------------------------------------------------------------

def propose_with(work: WorkingInstance, side: str) -> WorkingInstance:
    """One proposal-and-deletion pass from the given side, in place.

    A free agent proposes to the first entry of its list.  An acceptor
    holding a fiance it cannot rank against the proposer rejects the proposer
    (deleting that pair); otherwise it accepts and deletes every strictly
    worse entry.  A final one-pass sweep removes, for each man, any remaining
    men his first woman ties with him, which clears all surviving ties.

    The proposing side must be tie-free: men always are for one-sided
    bottom-tie inputs, and women are once the men's pass has run.
    """
    if side not in ("men", "women"):
        raise ValueError(f"unknown side {side!r}")
    n = work.n
    if not work.side_is_strict(side):
        raise PreconditionError(f"{side} still have ties; cannot propose")
    inst = work.inst
    if side == "men":
        forward, backward = work.men_lists, work.women_lists
        acceptor_rank = inst.women_rank
        orient = lambda a, b: (a, b)
    else:
        forward, backward = work.women_lists, work.men_lists
        acceptor_rank = inst.men_rank
        orient = lambda a, b: (b, a)

    fiancee: list[int | None] = [None] * n
    fiance: list[int | None] = [None] * n
    free = deque(range(n))
    while free:
        a = free.popleft()
        if fiancee[a] is not None:
            continue
        if not forward[a]:
            raise DegenerateInstanceError(
                f"proposing agent {a + 1} on the {side} side ran out of candidates"
            )
        b = forward[a][0][0]
        p = fiance[b]
        if p is not None and acceptor_rank[b][p] == acceptor_rank[b][a]:
            work.delete(*orient(a, b))
            free.append(a)
            continue
        assert p is None or acceptor_rank[b][a] < acceptor_rank[b][p]
        if p is not None:
            fiancee[p] = None
            free.append(p)
        fiance[b] = a
        fiancee[a] = b
        for c in [
            x
            for tier in backward[b]
            for x in tier
            if acceptor_rank[b][x] > acceptor_rank[b][a]
        ]:
            work.delete(*orient(c, b))

    # Tie sweep: a woman's surviving tie can only contain her fiance's
    # tier-mates; one pass removes them all.
    for m in range(n):
        if not work.men_lists[m]:
            raise DegenerateInstanceError(f"man {m + 1} ran out of candidates")
        w = work.men_lists[m][0][0]
        wr = inst.women_rank[w]
        tied = [
            m2
            for tier in work.women_lists[w]
            for m2 in tier
            if m2 != m and wr[m2] == wr[m]
        ]
        for m2 in tied:
            work.delete(m2, w)
    return work


def find_exposed_rotation(work: WorkingInstance) -> list[tuple[int, int]] | None:
    """Locate an exposed rotation in a tie-free working instance.

    Starting from the lowest-index man with at least two entries, repeatedly
    step to the second woman on the current man's list and then to the last
    man on her list; the walk closes into a cycle (m_i, w_i) where w_i is
    first and w_{i+1} second on m_i's list.  Returns None iff every list is a
    singleton.
    """
    n = work.n
    start = None
    for m in range(n):
        entries = work.entries("men", m)
        if not entries:
            raise DegenerateInstanceError(f"man {m + 1} ran out of candidates")
        if len(entries) >= 2:
            start = m
            break
    if start is None:
        return None

    seen: dict[int, int] = {}
    walk: list[int] = []
    m = start
    while m not in seen:
        seen[m] = len(walk)
        walk.append(m)
        entries = work.entries("men", m)
        if len(entries) < 2:
            raise DegenerateInstanceError(
                f"man {m + 1} has a singleton list inside a rotation walk"
            )
        second = entries[1]
        her = work.entries("women", second)
        if not her:
            raise DegenerateInstanceError(f"woman {second + 1} ran out of candidates")
        m = her[-1]
    cycle = walk[seen[m]:]
    rotation = [(mi, work.entries("men", mi)[0]) for mi in cycle]
    for idx, (mi, _) in enumerate(rotation):
        succ_w = work.entries("men", mi)[1]
        assert succ_w == rotation[(idx + 1) % len(rotation)][1]
    return rotation


def eliminate_rotation(work: WorkingInstance, rotation: list[tuple[int, int]]) -> None:
    for m, w in rotation:
        work.delete(m, w)


def min_vertex_cover_bipartite(
    edges: Iterable[tuple[int, int]],
) -> tuple[set[int], set[int]]:
    """Minimum vertex cover of a man-woman graph via maximum matching.

    Augmenting paths are explored in ascending index order, and the cover is
    read off the alternating-reachability set of the resulting matching, so
    the output is deterministic.  Returns (men in cover, women in cover).
    """
    edge_list = sorted(set(edges))
    adj: dict[int, list[int]] = {}
    for m, w in edge_list:
        adj.setdefault(m, []).append(w)
    men = sorted(adj)
    match_w: dict[int, int] = {}
    match_m: dict[int, int] = {}

    def augment(m: int, visited: set[int]) -> bool:
        for w in adj[m]:
            if w in visited:
                continue
            visited.add(w)
            if w not in match_w or augment(match_w[w], visited):
                match_w[w] = m
                match_m[m] = w
                return True
        return False

    for m in men:
        augment(m, set())

    reach_men = {m for m in men if m not in match_m}
    reach_women: set[int] = set()
    frontier = list(reach_men)
    while frontier:
        m = frontier.pop()
        for w in adj[m]:
            if w in reach_women:
                continue
            if match_m.get(m) == w:
                continue
            reach_women.add(w)
            m2 = match_w.get(w)
            if m2 is not None and m2 not in reach_men:
                reach_men.add(m2)
                frontier.append(m2)
    cover_men = set(men) - reach_men
    cover_women = set(reach_women)
    return cover_men, cover_women


Observer = Callable[[str, frozenset[tuple[int, int]]], None]


def min_delete_approx(inst: Instance, observer: Observer | None = None) -> SolveReport:
    """Deletion pipeline for one-sided bottom-tie instances.

    Alternating proposal passes and rotation eliminations shrink the lists
    while preserving the size of the largest internally super-stable matching
    they contain; when no rotation remains every list is a singleton and
    those singletons form a weakly stable matching.  The returned deletion
    set is a minimum vertex cover of the matching's super-blocking-pair
    graph, expanded by the matched partners; it is at most twice the optimal
    deletion set.

    ``observer``, when given, is called with a stage label and the surviving
    pair set after every pipeline step.
    """
    if not validate_one_sided_top_truncated(inst):
        raise PreconditionError(
            "input must have strict men and women with at most one trailing tie"
        )
    work = WorkingInstance(inst)
    if observer:
        observer("start", work.pair_set())
    propose_with(work, "men")
    if observer:
        observer("propose-men", work.pair_set())
    propose_with(work, "women")
    if observer:
        observer("propose-women", work.pair_set())
    while (rotation := find_exposed_rotation(work)) is not None:
        eliminate_rotation(work, rotation)
        if observer:
            observer("rotation", work.pair_set())
        propose_with(work, "men")
        if observer:
            observer("propose-men", work.pair_set())
        propose_with(work, "women")
        if observer:
            observer("propose-women", work.pair_set())

    pairs = []
    for m in range(work.n):
        entries = work.entries("men", m)
        assert len(entries) == 1
        pairs.append((m, entries[0]))
    matching = Matching(pairs)
    for w in range(work.n):
        assert work.entries("women", w) == [matching.man_of(w)]
    assert matching.is_perfect(inst.n)

    bps = super_blocking_pairs(inst, matching)
    cover_men, cover_women = min_vertex_cover_bipartite(bps)
    deleted_men = set(cover_men)
    deleted_women = set(cover_women)
    for m in cover_men:
        deleted_women.add(matching.woman_of(m))
    for w in cover_women:
        deleted_men.add(matching.man_of(w))
    return SolveReport.build(
        inst, matching, "algo1", deleted_men=deleted_men, deleted_women=deleted_women
    )


def assemble_from_deletion(
    inst: Instance,
    deleted_men: Iterable[int],
    deleted_women: Iterable[int],
    partial: Matching,
) -> Matching:
    """Extend a matching on the surviving agents to a perfect matching by
    pairing the deleted men and women in index order."""
    dm = sorted(set(deleted_men))
    dw = sorted(set(deleted_women))
    if len(dm) != len(dw):
        raise ValidationError("deletion set must be balanced across sides")
    partial.validate_for(inst.n)
    for m, w in partial:
        if m in dm or w in dw:
            raise ValidationError("partial matching touches a deleted agent")
    surviving_men = set(range(inst.n)) - set(dm)
    surviving_women = set(range(inst.n)) - set(dw)
    if {m for m, _ in partial} != surviving_men or {
        w for _, w in partial
    } != surviving_women:
        raise ValidationError("partial matching must cover exactly the survivors")
    return Matching(list(partial) + list(zip(dm, dw)))
