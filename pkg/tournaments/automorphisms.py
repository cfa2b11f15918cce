"""Permutations and automorphism groups of tournaments.

The group is enumerated by backtracking: vertices are first split into cells
by indegree, then images are assigned one vertex at a time. A candidate
image for u must sit in u's cell, be unused, and relate to every
already-mapped image exactly as u relates to the corresponding pre-image;
with bit rows that filter is one AND per mapped vertex.

Composition convention: ``sigma.compose(pi)`` is sigma after pi, so
``sigma.compose(pi)(u) == sigma(pi(u))``.
"""

import logging
from functools import lru_cache
from itertools import permutations
from math import lcm
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from tournaments.digraph import PseudoCyclicTournament, Tournament, TournamentLike, as_tournament
from tournaments.errors import NotAnAutomorphismError, SizeLimitError, TournamentError
from utils.bitsets import map_mask, popcount

logger = logging.getLogger(__name__)

# Above this the n! oracle is hopeless.
ENUMERATION_LIMIT = 8


def _maps_arcs(image: Sequence[int], rows: Sequence[int]) -> bool:
    for u, row in enumerate(rows):
        if map_mask(row, image) != rows[image[u]]:
            return False
    return True


class Permutation(BaseModel):
    """A bijection of 0..n-1, stored as its image tuple."""

    model_config = ConfigDict(frozen=True)

    image: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_bijection(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise TournamentError(f"{self.image} is not a permutation of 0..{len(self.image) - 1}")
        return self

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(image=tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from cycle notation, e.g. ``from_cycles(7, [(0, 3, 6)])``."""
        image = list(range(n))
        for cycle in cycles:
            for k, v in enumerate(cycle):
                image[v] = cycle[(k + 1) % len(cycle)]
        return cls(image=tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, u: int) -> int:
        return self.image[u]

    def is_identity(self) -> bool:
        return all(v == u for u, v in enumerate(self.image))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other."""
        if self.n != other.n:
            raise TournamentError("Cannot compose permutations of different sizes")
        return Permutation(image=tuple(self.image[v] for v in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for u, v in enumerate(self.image):
            inv[v] = u
        return Permutation(image=tuple(inv))

    def power(self, k: int) -> "Permutation":
        image = list(range(self.n))
        for cycle in self.cycles(include_fixed=True):
            for pos, u in enumerate(cycle):
                image[u] = cycle[(pos + k) % len(cycle)]
        return Permutation(image=tuple(image))

    def cycles(self, include_fixed: bool = False) -> List[Tuple[int, ...]]:
        """Cycle decomposition, each cycle starting at its smallest vertex."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = []
            u = start
            while not seen[u]:
                seen[u] = True
                cycle.append(u)
                u = self.image[u]
            if include_fixed or len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        """Smallest k > 0 with pi^k = Id."""
        return lcm(*(len(c) for c in self.cycles(include_fixed=True))) if self.n else 1

    def orbits(self) -> "OrbitPartition":
        return OrbitPartition(orbits=tuple(self.cycles(include_fixed=True)))

    def fixed_points(self) -> Tuple[int, ...]:
        return tuple(u for u, v in enumerate(self.image) if u == v)

    def preserves(self, t: TournamentLike) -> bool:
        """True iff this permutation maps every arc of t onto an arc."""
        base = as_tournament(t)
        return base.n == self.n and _maps_arcs(self.image, base.out_rows)

    def cycle_notation(self, labels: Optional[Sequence[int]] = None) -> str:
        """Cycle notation such as ``(0 3 6)``; identity prints as ``()``.

        ``labels`` renames vertices on output, typically a sub-tournament's origin map.
        """
        cycles = self.cycles()
        if not cycles:
            return "()"
        name = (lambda v: labels[v]) if labels is not None else (lambda v: v)
        return "".join("(" + " ".join(str(name(v)) for v in c) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.cycle_notation()


class OrbitPartition(BaseModel):
    """Cycles of a single permutation, fixed points included, as disjoint orbits."""

    model_config = ConfigDict(frozen=True)

    orbits: Tuple[Tuple[int, ...], ...]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)

    def nontrivial(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(o for o in self.orbits if len(o) > 1)

    def orbit_of(self, u: int) -> Tuple[int, ...]:
        for orbit in self.orbits:
            if u in orbit:
                return orbit
        raise TournamentError(f"Vertex {u} is in no orbit")

    def count_within(self, vertices: Iterable[int]) -> int:
        """Number of orbits lying inside ``vertices``."""
        chosen = set(vertices)
        return sum(1 for o in self.orbits if set(o) <= chosen)


class AutomorphismGroup(BaseModel):
    """All automorphisms of a tournament, identity first, then by image tuple."""

    model_config = ConfigDict(frozen=True)

    n: int
    elements: Tuple[Permutation, ...]

    @model_validator(mode="after")
    def _check_group(self):
        if not self.elements or not self.elements[0].is_identity():
            raise TournamentError("An automorphism group lists the identity first")
        if len(self.elements) % 2 == 0:
            raise TournamentError(f"Tournament automorphism groups have odd order, got {len(self.elements)}")
        return self

    @property
    def order(self) -> int:
        return len(self.elements)

    def nontrivial(self) -> Tuple[Permutation, ...]:
        return self.elements[1:]

    def __contains__(self, item: Permutation) -> bool:
        return item in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def _search(base: Tournament) -> Iterator[Tuple[int, ...]]:
    """Yield the image tuple of every automorphism of ``base``."""
    n = base.n
    out_rows, in_rows = base.out_rows, base.in_rows
    keys = [popcount(in_rows[v]) for v in range(n)]
    cell_masks: Dict[int, int] = {}
    for v, key in enumerate(keys):
        cell_masks[key] = cell_masks.get(key, 0) | (1 << v)

    # small cells first
    sequence = sorted(range(n), key=lambda v: (popcount(cell_masks[keys[v]]), v))
    image = [-1] * n

    def extend(depth: int, used: int) -> Iterator[Tuple[int, ...]]:
        if depth == n:
            yield tuple(image)
            return
        u = sequence[depth]
        candidates = cell_masks[keys[u]] & ~used
        row = out_rows[u]
        for w in sequence[:depth]:
            if row >> w & 1:
                candidates &= in_rows[image[w]]
            else:
                candidates &= out_rows[image[w]]
            if not candidates:
                return
        while candidates:
            low = candidates & -candidates
            candidates ^= low
            image[u] = low.bit_length() - 1
            yield from extend(depth + 1, used | low)
        image[u] = -1

    yield from extend(0, 0)


@lru_cache(maxsize=1024)
def _group_of(base: Tournament) -> AutomorphismGroup:
    found = sorted(_search(base))
    identity = tuple(range(base.n))
    found.remove(identity)
    elements = [Permutation(image=identity)] + [Permutation(image=img) for img in found]
    logger.debug(f"Automorphism search on {base.n} vertices found {len(elements)} elements")
    return AutomorphismGroup(n=base.n, elements=tuple(elements))


def automorphisms(t: TournamentLike) -> AutomorphismGroup:
    """The full automorphism group of t (results are cached per tournament)."""
    return _group_of(as_tournament(t))


def is_rigid(t: TournamentLike) -> bool:
    """True iff the identity is the only automorphism; stops at the first nontrivial one."""
    base = as_tournament(t)
    identity = tuple(range(base.n))
    return all(img == identity for img in _search(base))


def automorphisms_by_enumeration(t: TournamentLike) -> List[Permutation]:
    """Filter all n! permutations by arc preservation (test oracle, n <= 8)."""
    base = as_tournament(t)
    if base.n > ENUMERATION_LIMIT:
        raise SizeLimitError(f"Refusing to enumerate {base.n}! permutations")
    return [Permutation(image=img) for img in permutations(range(base.n)) if _maps_arcs(img, base.out_rows)]


def orbits(perm: Permutation) -> OrbitPartition:
    return perm.orbits()


def order(perm: Permutation) -> int:
    return perm.order()


def fixed_by_all(group: AutomorphismGroup) -> Tuple[int, ...]:
    """Vertices fixed by every element of the group."""
    fixed = set(range(group.n))
    for g in group.nontrivial():
        fixed &= set(g.fixed_points())
    return tuple(sorted(fixed))


def mirror(pc: PseudoCyclicTournament, phi: Permutation) -> Permutation:
    """phi*(i) = p - phi(p - i); again an automorphism of P."""
    if not phi.preserves(pc.base):
        raise NotAnAutomorphismError(f"{phi} is not an automorphism of {pc}")
    p = pc.p
    return Permutation(image=tuple(p - phi(p - i) for i in range(p + 1)))


def orbit_is_regular(t: TournamentLike, orbit: Sequence[int]) -> bool:
    """True iff the orbit induces a regular sub-tournament."""
    return as_tournament(t).induced(orbit).is_regular()


def orbit_agrees_on(t: TournamentLike, orbit: Sequence[int], v: int) -> bool:
    """True iff every vertex of the orbit beats v, or every vertex of the orbit is beaten by v."""
    base = as_tournament(t)
    members = [u for u in orbit if u != v]
    if not members:
        return True
    beats = {base.has_arc(u, v) for u in members}
    return len(beats) == 1
