"""Tournaments, cyclic tournaments T(2p+1;S-) and pseudo-cyclic tournaments P(p;N).

Adjacency is stored as one out-neighbour bitmask per vertex, so an arc test is a
single shift-and-mask. Vertices are always the dense integers 0..n-1; induced
sub-tournaments are relabelled and keep an ``origin`` map back to the vertices
they were cut from.
"""

import logging
import random
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from tournaments.errors import (
    InvalidConnectorError,
    LiteralFormatError,
    SizeLimitError,
    TournamentError,
    VertexRangeError,
)
from utils.bitsets import bits_of, iter_bits, mask_of, popcount
from utils.numbertheory import is_paley_order, is_prime, quadratic_residues

logger = logging.getLogger(__name__)

# A vertex set must fit one machine word.
MAX_VERTICES = 63


def _check_rows(out_rows: Sequence[int]) -> Tuple[int, ...]:
    """Validate out-neighbour rows and return the matching in-neighbour rows."""
    n = len(out_rows)
    if n < 1:
        raise SizeLimitError("A tournament needs at least one vertex")
    if n > MAX_VERTICES:
        raise SizeLimitError(f"{n} vertices exceeds the supported maximum of {MAX_VERTICES}")

    full = (1 << n) - 1
    in_rows = [0] * n
    for u, row in enumerate(out_rows):
        if row & ~full:
            raise VertexRangeError(f"Vertex {u} has an out-neighbour outside 0..{n - 1}")
        if row >> u & 1:
            raise TournamentError(f"Vertex {u} has a loop")
        for v in iter_bits(row):
            in_rows[v] |= 1 << u

    for u in range(n):
        if out_rows[u] & in_rows[u]:
            both = bits_of(out_rows[u] & in_rows[u])
            raise TournamentError(f"Vertex {u} has arcs in both directions with {both}")
        if out_rows[u] | in_rows[u] != full ^ (1 << u):
            missing = bits_of(full ^ (1 << u) ^ (out_rows[u] | in_rows[u]))
            raise TournamentError(f"Vertex {u} has no arc with {missing}")
    return tuple(in_rows)


class Tournament(BaseModel):
    """A tournament on vertices 0..n-1: exactly one arc between every two vertices."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, le=MAX_VERTICES)
    out_rows: Tuple[int, ...]
    in_rows: Tuple[int, ...] = ()
    origin: Tuple[int, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _fill_derived(cls, data):
        if isinstance(data, dict) and "out_rows" in data:
            data = dict(data)
            rows = tuple(data["out_rows"])
            data["out_rows"] = rows
            data.setdefault("n", len(rows))
            checked = _check_rows(rows)
            if data.get("in_rows") and tuple(data["in_rows"]) != checked:
                raise TournamentError("In-neighbour rows do not match the out-neighbour rows")
            data["in_rows"] = checked
            if not data.get("origin"):
                data["origin"] = tuple(range(len(rows)))
        return data

    @model_validator(mode="after")
    def _check_arcs(self):
        if len(self.out_rows) != self.n or len(self.origin) != self.n:
            raise TournamentError("Row count, origin map and n disagree")
        return self

    # -- construction --

    @classmethod
    def from_rows(cls, out_rows: Sequence[int], origin: Optional[Sequence[int]] = None) -> "Tournament":
        """Build from out-neighbour bitmasks, raising domain errors on bad input."""
        rows = tuple(out_rows)
        in_rows = _check_rows(rows)
        if origin is not None and len(origin) != len(rows):
            raise TournamentError("Origin map length does not match the vertex count")
        # rows are already checked; skip the validators
        return cls.model_construct(
            n=len(rows),
            out_rows=rows,
            in_rows=in_rows,
            origin=tuple(origin) if origin is not None else tuple(range(len(rows))),
        )

    @classmethod
    def from_predicate(cls, n: int, beats: Callable[[int, int], bool]) -> "Tournament":
        """Build from ``beats(u, v)``, consulted once per pair u < v (True means u -> v)."""
        if n < 1 or n > MAX_VERTICES:
            raise SizeLimitError(f"Vertex count must be in 1..{MAX_VERTICES}, got {n}")
        rows = [0] * n
        for u in range(n):
            for v in range(u + 1, n):
                if beats(u, v):
                    rows[u] |= 1 << v
                else:
                    rows[v] |= 1 << u
        return cls.from_rows(rows)

    @classmethod
    def sample(cls, n: int, rng: Optional[random.Random] = None) -> "Tournament":
        """A uniformly random labelled tournament."""
        rng = rng or random.Random()
        return cls.from_predicate(n, lambda u, v: rng.random() < 0.5)

    @classmethod
    def from_literal(cls, text: str) -> "Tournament":
        """Parse ``n`` on the first line, then one line of out-neighbours per vertex."""
        lines = [line.strip() for line in text.strip().splitlines()]
        if not lines:
            raise LiteralFormatError("Empty tournament literal")
        try:
            n = int(lines[0])
        except ValueError:
            raise LiteralFormatError(f"First line must be the vertex count, got {lines[0]!r}")
        body = lines[1:]
        # A vertex with no out-neighbours may leave its line blank or omit it at the end.
        body += [""] * (n - len(body))
        if len(body) != n:
            raise LiteralFormatError(f"Expected {n} vertex lines, got {len(body)}")

        rows = []
        for u, line in enumerate(body):
            try:
                targets = [int(tok) for tok in line.split()]
            except ValueError:
                raise LiteralFormatError(f"Line for vertex {u} is not a list of integers: {line!r}")
            if any(t < 0 or t >= n for t in targets):
                raise LiteralFormatError(f"Line for vertex {u} names a vertex outside 0..{n - 1}")
            rows.append(mask_of(targets))
        return cls.from_rows(rows)

    def to_literal(self) -> str:
        lines = [str(self.n)]
        lines += [" ".join(str(v) for v in iter_bits(row)) for row in self.out_rows]
        return "\n".join(lines) + "\n"

    # -- queries --

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise VertexRangeError(f"Vertex {u} is outside 0..{self.n - 1}")

    def has_arc(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.out_rows[u] >> v & 1)

    def indegree(self, u: int) -> int:
        self._check_vertex(u)
        return popcount(self.in_rows[u])

    def outdegree(self, u: int) -> int:
        self._check_vertex(u)
        return popcount(self.out_rows[u])

    def degrees(self, u: int) -> Tuple[int, int]:
        """(indegree, outdegree) of u."""
        return self.indegree(u), self.outdegree(u)

    def indegree_sequence(self) -> Tuple[int, ...]:
        return tuple(popcount(row) for row in self.in_rows)

    def out_neighbours(self, u: int) -> Tuple[int, ...]:
        self._check_vertex(u)
        return bits_of(self.out_rows[u])

    def in_neighbours(self, u: int) -> Tuple[int, ...]:
        self._check_vertex(u)
        return bits_of(self.in_rows[u])

    def is_regular(self) -> bool:
        return len(set(self.indegree_sequence())) == 1

    def same_arcs(self, other: "Tournament") -> bool:
        """Arc-for-arc equality, ignoring the origin map."""
        return self.out_rows == other.out_rows

    def induced(self, vertices: Iterable[int]) -> "Tournament":
        """Sub-tournament on ``vertices`` (in increasing order), relabelled 0..k-1."""
        chosen = sorted(set(vertices))
        if not chosen:
            raise VertexRangeError("Cannot induce a tournament on an empty vertex set")
        for v in chosen:
            self._check_vertex(v)
        rows = []
        for u in chosen:
            row = 0
            for new, v in enumerate(chosen):
                if self.out_rows[u] >> v & 1:
                    row |= 1 << new
            rows.append(row)
        return Tournament.from_rows(rows, origin=[self.origin[v] for v in chosen])

    def reversed(self) -> "Tournament":
        """Converse: every arc turned around."""
        return Tournament.model_construct(n=self.n, out_rows=self.in_rows, in_rows=self.out_rows, origin=self.origin)


class ConnectorSet(BaseModel):
    """A sorted set of negative connectors inside {1..p}."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=1)
    members: Tuple[int, ...] = ()

    @model_validator(mode="after")
    def _check_members(self):
        if list(self.members) != sorted(set(self.members)):
            raise InvalidConnectorError(f"Connectors must be distinct and sorted: {self.members}")
        bad = [s for s in self.members if not 1 <= s <= self.p]
        if bad:
            raise InvalidConnectorError(f"Connectors {bad} lie outside 1..{self.p}")
        return self

    @classmethod
    def of(cls, p: int, members: Iterable[int] = ()) -> "ConnectorSet":
        """Normalise ``members`` and build, raising InvalidConnectorError on bad input."""
        if p < 1:
            raise InvalidConnectorError(f"Half-order p must be at least 1, got {p}")
        values = sorted(set(int(s) for s in members))
        bad = [s for s in values if not 1 <= s <= p]
        if bad:
            raise InvalidConnectorError(f"Connectors {bad} lie outside 1..{p}")
        return cls(p=p, members=tuple(values))

    @classmethod
    def parse(cls, text: str, p: int) -> "ConnectorSet":
        """Parse a literal such as ``2,5,6`` (an empty string is the empty set)."""
        text = text.strip().strip("{}")
        if not text:
            return cls.of(p)
        try:
            values = [int(tok) for tok in text.split(",") if tok.strip()]
        except ValueError:
            raise LiteralFormatError(f"Malformed connector list: {text!r}")
        return cls.of(p, values)

    @classmethod
    def from_mask(cls, p: int, mask: int) -> "ConnectorSet":
        """Bit s-1 of ``mask`` set <=> s is a connector."""
        return cls.of(p, (b + 1 for b in iter_bits(mask)))

    @classmethod
    def from_connectors(cls, n: int, connectors: Iterable[int]) -> "ConnectorSet":
        """Negative connectors of the cyclic tournament T(n;S) for a full connector set S."""
        if n < 3 or n % 2 == 0:
            raise InvalidConnectorError(f"Cyclic tournaments have odd order >= 3, got {n}")
        p = (n - 1) // 2
        s_set = {c % n for c in connectors}
        if 0 in s_set:
            raise InvalidConnectorError("0 cannot be a connector")
        for k in range(1, p + 1):
            if (k in s_set) == (n - k in s_set):
                raise InvalidConnectorError(f"Exactly one of {k} and {n - k} must be a connector")
        return cls.of(p, (k for k in range(1, p + 1) if k not in s_set))

    @property
    def mask(self) -> int:
        return mask_of(s - 1 for s in self.members)

    @property
    def positive(self) -> Tuple[int, ...]:
        """S+ = {1..p} minus S-."""
        return tuple(k for k in range(1, self.p + 1) if k not in self.members)

    @property
    def connectors(self) -> Tuple[int, ...]:
        """The full connector set S of T(2p+1;S-), sorted."""
        n = 2 * self.p + 1
        return tuple(sorted(set(self.positive) | {n - s for s in self.members}))

    def complement(self) -> "ConnectorSet":
        """{1..p} minus the members (the connector set of the converse)."""
        return ConnectorSet.of(self.p, self.positive)

    def restrict(self, q: int) -> "ConnectorSet":
        """Members that survive in {1..q}, as a connector set for half-order q."""
        return ConnectorSet.of(q, (s for s in self.members if s <= q))

    def is_interval(self) -> bool:
        return bool(self.members) and self.members[-1] - self.members[0] + 1 == len(self.members)

    def __contains__(self, item: int) -> bool:
        return item in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(s) for s in self.members) + "}"


NegLike = Union[ConnectorSet, Iterable[int]]


def _coerce(p: int, neg: NegLike) -> ConnectorSet:
    members = neg.members if isinstance(neg, ConnectorSet) else neg
    return ConnectorSet.of(p, members)


class CyclicTournament(BaseModel):
    """T(2p+1;S-): i -> j iff (j - i) mod (2p+1) lies in S."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=1)
    neg: ConnectorSet
    base: Tournament

    @property
    def n(self) -> int:
        return 2 * self.p + 1

    @property
    def connectors(self) -> Tuple[int, ...]:
        return self.neg.connectors

    def lower_half(self) -> Tournament:
        """T_{0,p}, isomorphic to P(p;S-)."""
        return self.base.induced(range(self.p + 1))

    def upper_half(self) -> Tournament:
        """T_{p+1,2p}, isomorphic to P(p-1;S- minus {p}); a single vertex when p = 1."""
        return self.base.induced(range(self.p + 1, 2 * self.p + 1))

    def __str__(self) -> str:
        return f"T({self.n};{self.neg})"


class PseudoCyclicTournament(BaseModel):
    """P(p;N) on 0..p: for i > j, i -> j iff i - j lies in N."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=1)
    neg: ConnectorSet
    base: Tournament

    def __str__(self) -> str:
        return f"P({self.p};{self.neg})"


TournamentLike = Union[Tournament, CyclicTournament, PseudoCyclicTournament]


def as_tournament(t: TournamentLike) -> Tournament:
    """The underlying Tournament of any of the tournament models."""
    return t if isinstance(t, Tournament) else t.base


def build_cyclic(p: int, neg: NegLike = ()) -> CyclicTournament:
    """Build T(2p+1;S-) from its negative connectors."""
    if p < 1:
        raise TournamentError(f"Half-order p must be at least 1, got {p}")
    n = 2 * p + 1
    if n > MAX_VERTICES:
        raise SizeLimitError(f"T({n};...) exceeds the supported maximum of {MAX_VERTICES} vertices")
    connectors = _coerce(p, neg)

    rows = []
    for i in range(n):
        row = 0
        for s in connectors.connectors:
            row |= 1 << ((i + s) % n)
        rows.append(row)
    return CyclicTournament(p=p, neg=connectors, base=Tournament.from_rows(rows))


def build_pseudo_cyclic(p: int, neg: NegLike = ()) -> PseudoCyclicTournament:
    """Build P(p;N). p = 1 (two vertices) is accepted."""
    if p < 1:
        raise TournamentError(f"Order parameter p must be at least 1, got {p}")
    if p + 1 > MAX_VERTICES:
        raise SizeLimitError(f"P({p};...) exceeds the supported maximum of {MAX_VERTICES} vertices")
    connectors = _coerce(p, neg)
    backward = set(connectors.members)

    def beats(u: int, v: int) -> bool:
        # u < v: the arc points backward (v -> u) exactly at negative differences
        return (v - u) not in backward

    return PseudoCyclicTournament(p=p, neg=connectors, base=Tournament.from_predicate(p + 1, beats))


def induced_interval(t: TournamentLike, i: int, j: int) -> Tournament:
    """T_{i,j}: the sub-tournament on {i, i+1, .., j}, relabelled 0..j-i."""
    base = as_tournament(t)
    if not 0 <= i < j < base.n:
        raise VertexRangeError(f"Interval [{i},{j}] is not a proper interval of 0..{base.n - 1}")
    return base.induced(range(i, j + 1))


def converse(t: TournamentLike) -> TournamentLike:
    """Reverse every arc.

    Cyclic and pseudo-cyclic inputs come back as the same family with the
    complementary negative connectors, which is arc-for-arc the reversal.
    """
    if isinstance(t, CyclicTournament):
        return build_cyclic(t.p, t.neg.complement())
    if isinstance(t, PseudoCyclicTournament):
        return build_pseudo_cyclic(t.p, t.neg.complement())
    return t.reversed()


def has_arc(t: TournamentLike, u: int, v: int) -> bool:
    return as_tournament(t).has_arc(u, v)


def degrees(t: TournamentLike, u: int) -> Tuple[int, int]:
    """(indegree, outdegree) of u; always sums to n - 1."""
    return as_tournament(t).degrees(u)


def transitive_tournament(n: int) -> Tournament:
    """TT_n: i -> j whenever i < j."""
    return Tournament.from_predicate(n, lambda u, v: True)


def almost_transitive_tournament(n: int) -> Tournament:
    """TT*_n: TT_n with the arc between 0 and n-1 reversed."""
    if n < 2:
        raise SizeLimitError("TT*_n needs at least two vertices")
    return Tournament.from_predicate(n, lambda u, v: not (u == 0 and v == n - 1))


def paley_tournament(n: int) -> CyclicTournament:
    """QR_n: the cyclic tournament whose connectors are the non-zero squares mod n."""
    if not is_prime(n):
        raise InvalidConnectorError(f"{n} is not prime")
    if not is_paley_order(n):
        raise InvalidConnectorError(f"{n} is not congruent to 3 mod 4")
    neg = ConnectorSet.from_connectors(n, quadratic_residues(n))
    return build_cyclic(neg.p, neg)


def converse_isomorphism(p: int) -> Tuple[int, ...]:
    """gamma(0) = 0, gamma(i) = 2p+1-i: an isomorphism from T(2p+1;S) onto its converse."""
    n = 2 * p + 1
    return tuple((n - i) % n for i in range(n))


def is_isomorphism(mapping: Sequence[int], source: TournamentLike, target: TournamentLike) -> bool:
    """True iff ``mapping`` is a bijection carrying every arc of source onto an arc of target."""
    a, b = as_tournament(source), as_tournament(target)
    if a.n != b.n or sorted(mapping) != list(range(a.n)):
        return False
    for u in range(a.n):
        image_row = 0
        for v in iter_bits(a.out_rows[u]):
            image_row |= 1 << mapping[v]
        if image_row != b.out_rows[mapping[u]]:
            return False
    return True
