"""Indegree sequences of pseudo-cyclic tournaments and the vertex kinds they induce."""

import logging
from enum import Enum
from itertools import accumulate
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from tournaments.digraph import PseudoCyclicTournament
from tournaments.errors import TournamentError

logger = logging.getLogger(__name__)


class VertexKind(str, Enum):
    """Step type from vertex i to vertex i+1 in the indegree sequence."""

    ASCENT = "Ascent"
    DESCENT = "Descent"
    PLATEAU = "Plateau"


class IndegreeProfile(BaseModel):
    """IS(P) = (d-(0), .., d-(p)) plus, once classified, the kind of each vertex 0..p-1."""

    model_config = ConfigDict(frozen=True)

    p: int
    values: Tuple[int, ...]
    kinds: Tuple[VertexKind, ...] = ()

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.values) != self.p + 1:
            raise TournamentError(f"Profile of P({self.p};..) needs {self.p + 1} values")
        if self.kinds and len(self.kinds) != self.p:
            raise TournamentError(f"Profile of P({self.p};..) needs {self.p} vertex kinds")
        return self

    @property
    def alpha(self) -> int:
        return self.kinds.count(VertexKind.ASCENT)

    @property
    def delta(self) -> int:
        return self.kinds.count(VertexKind.DESCENT)

    @property
    def pi(self) -> int:
        return self.kinds.count(VertexKind.PLATEAU)

    @property
    def counts(self) -> Tuple[int, int, int]:
        """(alpha, delta, pi)."""
        return self.alpha, self.delta, self.pi

    def steps(self) -> Tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.values, self.values[1:]))


class IndegreeClasses(BaseModel):
    """V_d(P) for every indegree d that occurs."""

    model_config = ConfigDict(frozen=True)

    classes: Dict[int, Tuple[int, ...]]

    def of(self, d: int) -> Tuple[int, ...]:
        return self.classes.get(d, ())


def _prefix_counts(p: int, members: Tuple[int, ...]) -> List[int]:
    """prefix[k] = |N ∩ {1..k}| for k in 0..p."""
    flags = [0] * (p + 1)
    for s in members:
        flags[s] = 1
    return list(accumulate(flags))


def indegree_values(p: int, members: Tuple[int, ...]) -> Tuple[int, ...]:
    """Closed-form indegrees of P(p;N): lower half by formula, upper half by reflection."""
    prefix = _prefix_counts(p, members)
    values = [0] * (p + 1)
    for i in range(p // 2 + 1):
        values[i] = i + prefix[p - i] - prefix[i]
    for i in range(p // 2 + 1, p + 1):
        values[i] = p - values[p - i]
    return tuple(values)


def _kind(p: int, members: frozenset, i: int) -> VertexKind:
    pair = {i + 1, p - i}
    hits = len(pair & members)
    if hits == 0:
        return VertexKind.ASCENT
    if hits == len(pair):
        return VertexKind.DESCENT
    return VertexKind.PLATEAU


def indegree_profile(pc: PseudoCyclicTournament) -> IndegreeProfile:
    """IS(P) by the closed form; kinds are left empty."""
    return IndegreeProfile(p=pc.p, values=indegree_values(pc.p, pc.neg.members))


def classify_vertices(pc: PseudoCyclicTournament) -> IndegreeProfile:
    """IS(P) with every vertex 0..p-1 classified as ascent, descent or plateau."""
    members = frozenset(pc.neg.members)
    kinds = tuple(_kind(pc.p, members, i) for i in range(pc.p))
    profile = IndegreeProfile(p=pc.p, values=indegree_values(pc.p, pc.neg.members), kinds=kinds)
    logger.debug(f"{pc}: IS={profile.values} (alpha, delta, pi)={profile.counts}")
    return profile


def is_cyclic_pseudo(pc: PseudoCyclicTournament) -> bool:
    """True iff every vertex 0..p-1 is a plateau-vertex, i.e. P is itself cyclic."""
    return all(kind == VertexKind.PLATEAU for kind in classify_vertices(pc).kinds)


def indegree_classes(pc: PseudoCyclicTournament) -> IndegreeClasses:
    """Partition the vertices of P by indegree."""
    buckets: Dict[int, List[int]] = {}
    for v, d in enumerate(indegree_values(pc.p, pc.neg.members)):
        buckets.setdefault(d, []).append(v)
    return IndegreeClasses(classes={d: tuple(vs) for d, vs in sorted(buckets.items())})


def plateau_spans(profile: IndegreeProfile) -> List[Tuple[int, int]]:
    """Maximal plateaus as (start, k) where k counts vertices, so k-1 are plateau-vertices."""
    spans = []
    start = None
    for i, kind in enumerate(profile.kinds):
        if kind == VertexKind.PLATEAU:
            if start is None:
                start = i
        elif start is not None:
            spans.append((start, i - start + 1))
            start = None
    if start is not None:
        spans.append((start, profile.p - start + 1))
    return spans


def render_indegree_path(profile: IndegreeProfile) -> str:
    """ASCII plot of the indegree path, highest indegree on top."""
    lo, hi = min(profile.values), max(profile.values)
    width = len(str(hi))
    rows = []
    for d in range(hi, lo - 1, -1):
        cells = ["*" if value == d else " " for value in profile.values]
        rows.append(f"{d:>{width}} | " + " ".join(cells).rstrip())
    rows.append(" " * width + " +-" + "-" * (2 * profile.p + 1))
    rows.append(" " * width + "   " + " ".join(str(i % 10) for i in range(profile.p + 1)))
    return "\n".join(rows)
