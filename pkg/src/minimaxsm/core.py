"""Instance model and stability predicates for stable marriage with ties.

Agents submit preference orders that may leave some alternatives mutually
incomparable.  Incomparability is transitive, so every order is a sequence of
tiers: agents in the same tier are tied, agents in earlier tiers are strictly
preferred.  All indices are 0-based internally; the JSON file formats are
1-based (see :mod:`minimaxsm.files`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class ValidationError(ValueError):
    """An instance, matching, or completion is structurally invalid."""


@dataclass(frozen=True)
class TierList:
    """One agent's preference order over the opposite side, best tier first."""

    tiers: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "tiers", tuple(tuple(sorted(t)) for t in self.tiers)
        )

    @classmethod
    def from_order(cls, order: Iterable[int]) -> "TierList":
        """Strict list: every tier a singleton."""
        return cls(tuple((x,) for x in order))

    def validate(self, n: int, owner: str) -> None:
        seen: list[int] = []
        for tier in self.tiers:
            if not tier:
                raise ValidationError(f"{owner}: empty tier")
            seen.extend(tier)
        if sorted(seen) != list(range(n)):
            raise ValidationError(
                f"{owner}: tiers do not partition 0..{n - 1} (got {sorted(seen)})"
            )

    @property
    def is_strict(self) -> bool:
        return all(len(t) == 1 for t in self.tiers)

    def missing_pairs(self) -> int:
        """Pairwise comparisons the order leaves unspecified."""
        return sum(math.comb(len(t), 2) for t in self.tiers)

    def ranks(self, n: int) -> tuple[int, ...]:
        out = [0] * n
        for r, tier in enumerate(self.tiers):
            for x in tier:
                out[x] = r
        return tuple(out)

    def linear_orders(self) -> Iterator[tuple[int, ...]]:
        """All linear extensions; tier permutations in lexicographic order."""
        perms = [itertools.permutations(t) for t in self.tiers]
        for combo in itertools.product(*perms):
            yield tuple(itertools.chain.from_iterable(combo))

    def count_linear_orders(self) -> int:
        prod = 1
        for t in self.tiers:
            prod *= math.factorial(len(t))
        return prod


def _as_tier_list(raw) -> TierList:
    if isinstance(raw, TierList):
        return raw
    return TierList(tuple(tuple(t) for t in raw))


class Instance:
    """A complete two-sided market: n men and n women with tier-list orders.

    Immutable after construction.  Rank matrices (tier index of every
    opposite-side agent) are precomputed so the predicates below run in
    constant time per pair.
    """

    def __init__(self, men: Sequence, women: Sequence):
        self.men: tuple[TierList, ...] = tuple(_as_tier_list(t) for t in men)
        self.women: tuple[TierList, ...] = tuple(_as_tier_list(t) for t in women)
        if len(self.men) != len(self.women):
            raise ValidationError(
                f"side sizes differ: {len(self.men)} men, {len(self.women)} women"
            )
        n = len(self.men)
        for i, tl in enumerate(self.men):
            tl.validate(n, f"man {i + 1}")
        for i, tl in enumerate(self.women):
            tl.validate(n, f"woman {i + 1}")
        self.n = n
        self.men_rank: tuple[tuple[int, ...], ...] = tuple(
            tl.ranks(n) for tl in self.men
        )
        self.women_rank: tuple[tuple[int, ...], ...] = tuple(
            tl.ranks(n) for tl in self.women
        )
        self._delta: Fraction | None = None

    @property
    def delta(self) -> Fraction:
        if self._delta is None:
            self._delta = compute_delta(self)
        return self._delta

    @property
    def is_strict(self) -> bool:
        return all(tl.is_strict for tl in self.men) and all(
            tl.is_strict for tl in self.women
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Instance)
            and self.men == other.men
            and self.women == other.women
        )

    def __hash__(self) -> int:
        return hash((self.men, self.women))

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, delta={self.delta})"


class Matching:
    """A set of disjoint man-woman pairs; agents may be left unmatched."""

    def __init__(self, pairs: Iterable[tuple[int, int]]):
        norm = sorted({(int(m), int(w)) for m, w in pairs})
        m2w: dict[int, int] = {}
        w2m: dict[int, int] = {}
        for m, w in norm:
            if m < 0 or w < 0:
                raise ValidationError(f"negative agent index in pair ({m}, {w})")
            if m in m2w:
                raise ValidationError(f"man {m + 1} matched twice")
            if w in w2m:
                raise ValidationError(f"woman {w + 1} matched twice")
            m2w[m] = w
            w2m[w] = m
        self.pairs: tuple[tuple[int, int], ...] = tuple(norm)
        self._m2w = m2w
        self._w2m = w2m

    @classmethod
    def identity(cls, n: int) -> "Matching":
        return cls((i, i) for i in range(n))

    def woman_of(self, m: int) -> int | None:
        return self._m2w.get(m)

    def man_of(self, w: int) -> int | None:
        return self._w2m.get(w)

    def is_perfect(self, n: int) -> bool:
        if len(self.pairs) != n:
            return False
        self.validate_for(n)
        return True

    def validate_for(self, n: int) -> None:
        for m, w in self.pairs:
            if m >= n or w >= n:
                raise ValidationError(
                    f"pair ({m + 1}, {w + 1}) references an absent agent (n={n})"
                )

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return self._m2w.get(pair[0]) == pair[1]

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matching) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        return f"Matching({list(self.pairs)})"


class Completion:
    """One strict linear order per agent: a fully specified market."""

    def __init__(self, men_orders: Sequence[Sequence[int]],
                 women_orders: Sequence[Sequence[int]]):
        self.men_orders: tuple[tuple[int, ...], ...] = tuple(
            tuple(o) for o in men_orders
        )
        self.women_orders: tuple[tuple[int, ...], ...] = tuple(
            tuple(o) for o in women_orders
        )
        n = len(self.men_orders)
        if len(self.women_orders) != n:
            raise ValidationError("completion sides differ in size")
        for label, orders in (("man", self.men_orders), ("woman", self.women_orders)):
            for i, order in enumerate(orders):
                if sorted(order) != list(range(n)):
                    raise ValidationError(f"{label} {i + 1}: not a permutation")
        self.n = n
        self.men_rank = tuple(_order_ranks(o) for o in self.men_orders)
        self.women_rank = tuple(_order_ranks(o) for o in self.women_orders)

    def refines(self, inst: Instance) -> bool:
        """True iff every strict comparison of ``inst`` is preserved."""
        if inst.n != self.n:
            return False
        for order, ranks in zip(self.men_orders, inst.men_rank):
            if any(ranks[a] > ranks[b] for a, b in zip(order, order[1:])):
                return False
        for order, ranks in zip(self.women_orders, inst.women_rank):
            if any(ranks[a] > ranks[b] for a, b in zip(order, order[1:])):
                return False
        return True

    def blocking_pairs(self, matching: Matching) -> list[tuple[int, int]]:
        """Classical blocking pairs under these strict orders.

        An unmatched agent prefers every partner to staying single.
        """
        matching.validate_for(self.n)
        out = []
        for m in range(self.n):
            mr = self.men_rank[m]
            pm = matching.woman_of(m)
            for w in range(self.n):
                if pm == w:
                    continue
                if pm is not None and mr[w] > mr[pm]:
                    continue
                pw = matching.man_of(w)
                if pw is not None and self.women_rank[w][m] > self.women_rank[w][pw]:
                    continue
                out.append((m, w))
        return out

    def to_instance(self) -> Instance:
        return Instance(
            tuple(TierList.from_order(o) for o in self.men_orders),
            tuple(TierList.from_order(o) for o in self.women_orders),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Completion)
            and self.men_orders == other.men_orders
            and self.women_orders == other.women_orders
        )

    def __hash__(self) -> int:
        return hash((self.men_orders, self.women_orders))


def _order_ranks(order: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(order)
    for r, x in enumerate(order):
        out[x] = r
    return tuple(out)


# ---------------------------------------------------------------------------
# Missing-information measure
# ---------------------------------------------------------------------------

def compute_delta(inst: Instance) -> Fraction:
    """Average fraction of pairwise comparisons the orders leave unspecified.

    Exact rational arithmetic; 0 iff every order is strict, and at most 1.
    """
    n = inst.n
    total_comparisons = math.comb(n, 2)
    if total_comparisons == 0:
        return Fraction(0)
    missing = sum(tl.missing_pairs() for tl in inst.men) + sum(
        tl.missing_pairs() for tl in inst.women
    )
    return Fraction(missing, 2 * n * total_comparisons)


# ---------------------------------------------------------------------------
# Blocking-pair predicates
#
# Conventions: a matched pair never blocks itself, and an unmatched agent
# strictly (hence also weakly) prefers every partner to staying single.
# ---------------------------------------------------------------------------

def _check_pair_indices(inst: Instance, man: int, woman: int) -> None:
    if not (0 <= man < inst.n and 0 <= woman < inst.n):
        raise ValidationError(
            f"pair ({man + 1}, {woman + 1}) out of range for n={inst.n}"
        )


def is_obvious_blocking_pair(
    inst: Instance, matching: Matching, man: int, woman: int
) -> bool:
    """Both sides strictly prefer each other to their current partners."""
    _check_pair_indices(inst, man, woman)
    if (man, woman) in matching:
        return False
    pm = matching.woman_of(man)
    if pm is not None and inst.men_rank[man][woman] >= inst.men_rank[man][pm]:
        return False
    pw = matching.man_of(woman)
    if pw is not None and inst.women_rank[woman][man] >= inst.women_rank[woman][pw]:
        return False
    return True


def is_super_blocking_pair(
    inst: Instance, matching: Matching, man: int, woman: int
) -> bool:
    """Both sides strictly prefer or are incomparable between the other and
    their current partner."""
    _check_pair_indices(inst, man, woman)
    if (man, woman) in matching:
        return False
    pm = matching.woman_of(man)
    if pm is not None and inst.men_rank[man][woman] > inst.men_rank[man][pm]:
        return False
    pw = matching.man_of(woman)
    if pw is not None and inst.women_rank[woman][man] > inst.women_rank[woman][pw]:
        return False
    return True


def obvious_blocking_pairs(inst: Instance, matching: Matching) -> list[tuple[int, int]]:
    matching.validate_for(inst.n)
    n = inst.n
    wrank = inst.women_rank
    out = []
    for m in range(n):
        mr = inst.men_rank[m]
        pm = matching.woman_of(m)
        for w in range(n):
            if pm == w:
                continue
            if pm is not None and mr[w] >= mr[pm]:
                continue
            pw = matching.man_of(w)
            if pw is not None and wrank[w][m] >= wrank[w][pw]:
                continue
            out.append((m, w))
    return out


def super_blocking_pairs(inst: Instance, matching: Matching) -> list[tuple[int, int]]:
    matching.validate_for(inst.n)
    n = inst.n
    wrank = inst.women_rank
    out = []
    for m in range(n):
        mr = inst.men_rank[m]
        pm = matching.woman_of(m)
        for w in range(n):
            if pm == w:
                continue
            if pm is not None and mr[w] > mr[pm]:
                continue
            pw = matching.man_of(w)
            if pw is not None and wrank[w][m] > wrank[w][pw]:
                continue
            out.append((m, w))
    return out


def count_super_blocking_pairs(inst: Instance, matching: Matching) -> int:
    return len(super_blocking_pairs(inst, matching))


def has_at_least_k_super_blocking_pairs(
    inst: Instance, matching: Matching, k: int
) -> bool:
    """Early-exit counter for large instances where only a threshold matters."""
    if k <= 0:
        return True
    matching.validate_for(inst.n)
    n = inst.n
    wrank = inst.women_rank
    found = 0
    for m in range(n):
        mr = inst.men_rank[m]
        pm = matching.woman_of(m)
        for w in range(n):
            if pm == w:
                continue
            if pm is not None and mr[w] > mr[pm]:
                continue
            pw = matching.man_of(w)
            if pw is not None and wrank[w][m] > wrank[w][pw]:
                continue
            found += 1
            if found >= k:
                return True
    return False


def is_weakly_stable(inst: Instance, matching: Matching) -> bool:
    return not obvious_blocking_pairs(inst, matching)


def is_super_stable(inst: Instance, matching: Matching) -> bool:
    return not super_blocking_pairs(inst, matching)


# ---------------------------------------------------------------------------
# Worst-case completion
# ---------------------------------------------------------------------------

def build_witness_completion(inst: Instance, matching: Matching) -> Completion:
    """A completion under which the matching has exactly as many blocking
    pairs as it has super-blocking pairs under ``inst``.

    For every super-blocking pair, any incomparability with the current
    partner is resolved in favour of the blocking agent; all remaining ties
    are broken by ascending index (the super-blocking partners of an agent
    come first within the partner's tier, then the other tier members, then
    the partner).  Any refinement rule would do: a completion can never block
    on pairs that are not super-blocking.
    """
    sbps = super_blocking_pairs(inst, matching)
    men_block: dict[int, set[int]] = {}
    women_block: dict[int, set[int]] = {}
    for m, w in sbps:
        men_block.setdefault(m, set()).add(w)
        women_block.setdefault(w, set()).add(m)

    def complete(tl: TierList, partner: int | None, blockers: set[int]) -> tuple[int, ...]:
        out: list[int] = []
        for tier in tl.tiers:
            if partner is not None and partner in tier:
                out.extend(x for x in tier if x in blockers)
                out.extend(x for x in tier if x not in blockers and x != partner)
                out.append(partner)
            else:
                out.extend(tier)
        return tuple(out)

    men_orders = tuple(
        complete(inst.men[m], matching.woman_of(m), men_block.get(m, set()))
        for m in range(inst.n)
    )
    women_orders = tuple(
        complete(inst.women[w], matching.man_of(w), women_block.get(w, set()))
        for w in range(inst.n)
    )
    return Completion(men_orders, women_orders)


# ---------------------------------------------------------------------------
# Preference-shape checks and restrictions
# ---------------------------------------------------------------------------

def validate_one_sided_top_truncated(inst: Instance) -> bool:
    """True iff men are strict and each woman ranks a strict prefix followed
    by at most one trailing tier of mutually incomparable men."""
    if not all(tl.is_strict for tl in inst.men):
        return False
    for tl in inst.women:
        if any(len(t) != 1 for t in tl.tiers[:-1]):
            return False
    return True


def restrict_instance(
    inst: Instance, keep_men: Iterable[int], keep_women: Iterable[int]
) -> tuple[Instance, tuple[int, ...], tuple[int, ...]]:
    """Sub-market on the given agents, reindexed contiguously.

    Returns the restricted instance plus the original indices of its men and
    women (position = new index).
    """
    men_ids = tuple(sorted(set(keep_men)))
    women_ids = tuple(sorted(set(keep_women)))
    if len(men_ids) != len(women_ids):
        raise ValidationError("restriction must keep equally many men and women")
    wmap = {old: new for new, old in enumerate(women_ids)}
    mmap = {old: new for new, old in enumerate(men_ids)}

    def cut(tl: TierList, keep: dict[int, int]) -> TierList:
        tiers = []
        for tier in tl.tiers:
            kept = tuple(keep[x] for x in tier if x in keep)
            if kept:
                tiers.append(kept)
        return TierList(tuple(tiers))

    men = tuple(cut(inst.men[m], wmap) for m in men_ids)
    women = tuple(cut(inst.women[w], mmap) for w in women_ids)
    return Instance(men, women), men_ids, women_ids
