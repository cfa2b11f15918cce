"""Labelings, distinguishing numbers, the canonical 2-labeling and determining sets.

Subset searches (regular sets, determining sets) walk k-subsets in colex order
for increasing k, so the first hit is both minimum and reproducible. They
refuse tournaments larger than the configured subset limit.
"""

import logging
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from tournaments.automorphisms import AutomorphismGroup, Permutation, automorphisms, is_rigid
from tournaments.certificates import CertificateVerdict, certify
from tournaments.digraph import CyclicTournament, TournamentLike, as_tournament
from tournaments.errors import RigidTournamentError, SizeLimitError, TournamentError
from utils.bitsets import colex_subsets, map_mask, mask_of
from utils.config import get_settings

logger = logging.getLogger(__name__)

BRUTE_METHOD = "brute"


class Labeling(BaseModel):
    """lambda: V -> {1..r}."""

    model_config = ConfigDict(frozen=True)

    labels: Tuple[int, ...]
    r: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_range(self):
        bad = [x for x in self.labels if not 1 <= x <= self.r]
        if bad:
            raise TournamentError(f"Labels {bad} lie outside 1..{self.r}")
        return self

    @classmethod
    def from_subset(cls, n: int, subset: Iterable[int]) -> "Labeling":
        """2-labeling with label 2 on ``subset`` and label 1 elsewhere."""
        chosen = set(subset)
        return cls(labels=tuple(2 if v in chosen else 1 for v in range(n)), r=2)

    @property
    def n(self) -> int:
        return len(self.labels)

    def class_of(self, label: int) -> Tuple[int, ...]:
        return tuple(v for v, x in enumerate(self.labels) if x == label)


class CheckMode(str, Enum):
    BRUTE = "brute"
    CERTIFIED = "certified"


class ConjectureResult(BaseModel):
    """Whether the canonical labeling of a cyclic tournament is distinguishing."""

    model_config = ConfigDict(frozen=True)

    holds: bool
    witness: Optional[Permutation] = None
    method: str = BRUTE_METHOD
    group_order: Optional[int] = None
    verdict: Optional[CertificateVerdict] = None

    @model_validator(mode="after")
    def _witness_iff_failure(self):
        if self.holds == (self.witness is not None):
            raise TournamentError("A counterexample witness is required exactly when the conjecture fails")
        return self


def canonical_labeling(t: CyclicTournament) -> Labeling:
    """lambda*: label 1 on 0..p, label 2 on p+1..2p."""
    return Labeling(labels=tuple(1 if i <= t.p else 2 for i in range(t.n)), r=2)


def _check_subset_size(n: int, what: str) -> None:
    limit = get_settings().subset_limit
    if n > limit:
        raise SizeLimitError(f"{what} on {n} vertices exceeds the subset search limit of {limit}")


def preserving_automorphisms(group: AutomorphismGroup, labeling: Labeling) -> List[Permutation]:
    """Group elements g with labels[g(u)] == labels[u] for every u (identity included)."""
    if labeling.n != group.n:
        raise TournamentError(f"Labeling covers {labeling.n} vertices, tournament has {group.n}")
    labels = labeling.labels
    return [g for g in group.elements if all(labels[g(u)] == labels[u] for u in range(group.n))]


def stabilizes(perm: Permutation, subset: Iterable[int]) -> bool:
    """True iff perm maps the vertex set onto itself."""
    mask = mask_of(subset)
    return map_mask(mask, perm.image) == mask


def is_distinguishing(t: TournamentLike, labeling: Labeling, group: Optional[AutomorphismGroup] = None) -> bool:
    """True iff only the identity preserves the labeling."""
    base = as_tournament(t)
    if labeling.n != base.n:
        raise TournamentError(f"Labeling covers {labeling.n} vertices, tournament has {base.n}")
    group = group or automorphisms(base)
    return len(preserving_automorphisms(group, labeling)) == 1


def _is_regular_mask(group: AutomorphismGroup, mask: int) -> bool:
    return all(map_mask(mask, g.image) != mask for g in group.nontrivial())


def min_regular_set(t: TournamentLike) -> Optional[Tuple[int, ...]]:
    """A smallest vertex set with trivial setwise stabilizer, of size at most n/2.

    The empty set when T is rigid; None if no such set exists.
    """
    base = as_tournament(t)
    group = automorphisms(base)
    if group.order == 1:
        return ()
    _check_subset_size(base.n, "Regular-set search")
    for k in range(1, base.n // 2 + 1):
        for subset in colex_subsets(base.n, k):
            if _is_regular_mask(group, mask_of(subset)):
                return subset
    return None


def _labeling_search(group: AutomorphismGroup, r: int) -> Optional[Labeling]:
    """Depth-first search for a distinguishing r-labeling; vertex 0 is pinned to label 1."""
    n = group.n
    labels = [0] * n
    # (image, inverse image) per nontrivial element
    survivors = [(g.image, g.inverse().image) for g in group.nontrivial()]

    def preserved_so_far(image: Tuple[int, ...], inverse: Tuple[int, ...], u: int) -> bool:
        forward, backward = image[u], inverse[u]
        if forward <= u and labels[forward] != labels[u]:
            return False
        return not (backward <= u and labels[backward] != labels[u])

    def assign(u: int, alive: List[Tuple[Tuple[int, ...], Tuple[int, ...]]]) -> bool:
        if not alive:
            for v in range(u, n):
                labels[v] = 1
            return True
        if u == n:
            return False
        for label in range(1, 2 if u == 0 else r + 1):
            labels[u] = label
            if assign(u + 1, [pair for pair in alive if preserved_so_far(*pair, u)]):
                return True
        labels[u] = 0
        return False

    if assign(0, survivors):
        return Labeling(labels=tuple(labels), r=r)
    return None


def distinguishing_labeling(t: TournamentLike) -> Labeling:
    """A distinguishing labeling with the fewest labels."""
    base = as_tournament(t)
    group = automorphisms(base)
    if group.order == 1:
        return Labeling(labels=(1,) * base.n, r=1)
    _check_subset_size(base.n, "Distinguishing-number search")

    regular = min_regular_set(base)
    if regular is not None:
        return Labeling.from_subset(base.n, regular)
    for r in range(3, base.n + 1):
        found = _labeling_search(group, r)
        if found is not None:
            return found
    # all labels distinct is always distinguishing
    return Labeling(labels=tuple(range(1, base.n + 1)), r=base.n)


def distinguishing_number(t: TournamentLike) -> int:
    """D(T): 1 iff T is rigid, else the least r admitting a distinguishing r-labeling."""
    return distinguishing_labeling(t).r


def distinguishing_cost(t: TournamentLike) -> int:
    """rho(T): the smallest label class over distinguishing 2-labelings."""
    base = as_tournament(t)
    if is_rigid(base):
        raise RigidTournamentError("The cost of distinguishing is only defined when D(T) = 2")
    regular = min_regular_set(base)
    if regular is None:
        raise TournamentError("No distinguishing 2-labeling exists")
    return len(regular)


def _fixes_pointwise(perm: Permutation, subset: Sequence[int]) -> bool:
    return all(perm(x) == x for x in subset)


def is_determining_set(t: TournamentLike, subset: Iterable[int]) -> bool:
    """True iff no two distinct automorphisms agree on every vertex of ``subset``.

    Equivalently, no nontrivial automorphism fixes ``subset`` pointwise.
    """
    base = as_tournament(t)
    chosen = sorted(set(subset))
    for v in chosen:
        if not 0 <= v < base.n:
            raise TournamentError(f"Vertex {v} is outside 0..{base.n - 1}")
    return not any(_fixes_pointwise(g, chosen) for g in automorphisms(base).nontrivial())


def is_rigid_determining_set(t: TournamentLike, subset: Iterable[int]) -> bool:
    """A determining set that also induces a rigid sub-tournament (the empty set counts as rigid)."""
    base = as_tournament(t)
    chosen = sorted(set(subset))
    if not is_determining_set(base, chosen):
        return False
    return not chosen or is_rigid(base.induced(chosen))


def min_rigid_determining_set(t: TournamentLike, size_bound: int) -> Optional[Tuple[int, ...]]:
    """A minimum rigid determining set of size at most ``size_bound``, or None."""
    base = as_tournament(t)
    _check_subset_size(base.n, "Determining-set search")
    for k in range(0, min(size_bound, base.n) + 1):
        for subset in colex_subsets(base.n, k):
            if is_rigid_determining_set(base, subset):
                logger.debug(f"Rigid determining set of size {k}: {subset}")
                return subset
    return None


def check_conjecture(t: CyclicTournament, mode: CheckMode = CheckMode.CERTIFIED) -> ConjectureResult:
    """Decide whether lambda* distinguishes T, by certificate when one applies, else by brute force."""
    group = automorphisms(t)
    if mode == CheckMode.CERTIFIED:
        verdict = certify(t)
        if verdict.proved:
            return ConjectureResult(holds=True, method=verdict.rule.value, group_order=group.order, verdict=verdict)

    preserving = [g for g in preserving_automorphisms(group, canonical_labeling(t)) if not g.is_identity()]
    if preserving:
        logger.warning(f"{t}: canonical labeling preserved by {preserving[0]}")
        return ConjectureResult(holds=False, witness=preserving[0], method=BRUTE_METHOD, group_order=group.order)
    return ConjectureResult(holds=True, method=BRUTE_METHOD, group_order=group.order)
