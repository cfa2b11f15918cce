"""Sufficient conditions under which the canonical 2-labeling of T(2p+1;S-) is distinguishing.

Each ``cert_*`` function inspects one cyclic tournament and returns a
:class:`CertificateVerdict`. A Proved verdict carries a small JSON-friendly
witness which :func:`verify_witness` re-checks by independent means before
:func:`certify` accepts it.
"""

import logging
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from tournaments.automorphisms import Permutation, automorphisms, is_rigid
from tournaments.digraph import (
    CyclicTournament,
    PseudoCyclicTournament,
    Tournament,
    build_pseudo_cyclic,
)
from tournaments.indegree import classify_vertices, plateau_spans
from utils.numbertheory import is_paley_order, quadratic_residues

logger = logging.getLogger(__name__)


class CertificateRule(str, Enum):
    RIGID_HALF = "RigidHalf"
    ROTATION_GROUP = "RotationGroup"
    INDEGREE_CLASSES_RIGID = "IndegreeClassesRigid"
    MIN_CONNECTOR = "MinConnector"
    FEW_CONNECTORS = "FewConnectors"
    INTERVAL = "Interval"
    INTERVAL_COMPLEMENT = "IntervalComplement"
    PALEY = "Paley"
    ASCENT_PLATEAU = "AscentPlateau"


class VerdictStatus(str, Enum):
    PROVED = "Proved"
    INAPPLICABLE = "Inapplicable"


class CertificateVerdict(BaseModel):
    """Outcome of one certificate (or of the dispatcher when ``rule`` is None)."""

    model_config = ConfigDict(frozen=True)

    status: VerdictStatus
    rule: Optional[CertificateRule] = None
    witness: Dict[str, Any] = Field(default_factory=dict)

    @property
    def proved(self) -> bool:
        return self.status == VerdictStatus.PROVED

    def to_record(self, t: CyclicTournament) -> Dict[str, Any]:
        """Flat record {p, neg, status, rule, witness} for result files."""
        return {
            "p": t.p,
            "neg": list(t.neg.members),
            "status": self.status.value,
            "rule": self.rule.value if self.rule else None,
            "witness": self.witness,
        }


def _proved(rule: CertificateRule, **witness) -> CertificateVerdict:
    return CertificateVerdict(status=VerdictStatus.PROVED, rule=rule, witness=witness)


def _inapplicable(rule: Optional[CertificateRule], **witness) -> CertificateVerdict:
    return CertificateVerdict(status=VerdictStatus.INAPPLICABLE, rule=rule, witness=witness)


def _half(t: CyclicTournament, name: str) -> Tournament:
    return t.lower_half() if name == "lower" else t.upper_half()


def _half_interval(t: CyclicTournament, name: str) -> List[int]:
    return [0, t.p] if name == "lower" else [t.p + 1, 2 * t.p]


def _pseudo_halves(t: CyclicTournament) -> List[Tuple[str, PseudoCyclicTournament]]:
    """P(p;S-) ~ T_{0,p} and, for p >= 2, P(p-1;S- minus {p}) ~ T_{p+1,2p}."""
    halves = [("lower", build_pseudo_cyclic(t.p, t.neg))]
    if t.p >= 2:
        halves.append(("upper", build_pseudo_cyclic(t.p - 1, t.neg.restrict(t.p - 1))))
    return halves


def _runs(members: Tuple[int, ...]) -> List[Tuple[int, int]]:
    """Maximal runs of consecutive integers as (first, last)."""
    runs: List[Tuple[int, int]] = []
    for s in members:
        if runs and runs[-1][1] == s - 1:
            runs[-1] = (runs[-1][0], s)
        else:
            runs.append((s, s))
    return runs


# -- group-based certificates --


def cert_rigid_half(t: CyclicTournament) -> CertificateVerdict:
    """Proved when T_{0,p} or T_{p+1,2p} is rigid."""
    for name in ("lower", "upper"):
        if is_rigid(_half(t, name)):
            return _proved(CertificateRule.RIGID_HALF, half=name, interval=_half_interval(t, name))
    return _inapplicable(CertificateRule.RIGID_HALF)


def rotation_group_cases(t: CyclicTournament) -> List[int]:
    """Which of the three rotation-group conditions hold.

    1. |Aut(T)| = 2p+1.
    2. p even, |S-| = p/2, p+1-s not in S- for s in S-, and |Aut(T_{0,p})| = p+1.
    3. p odd, |S- minus {p}| = (p-1)/2, p-s not in S- for s in S-, and |Aut(T_{p+1,2p})| = p.
    """
    p, neg = t.p, t.neg
    cases = []
    if automorphisms(t).order == t.n:
        cases.append(1)
    if (
        p % 2 == 0
        and len(neg) == p // 2
        and all(p + 1 - s not in neg for s in neg.members)
        and automorphisms(t.lower_half()).order == p + 1
    ):
        cases.append(2)
    trimmed = [s for s in neg.members if s != p]
    if (
        p % 2 == 1
        and len(trimmed) == (p - 1) // 2
        and all(p - s not in neg for s in neg.members)
        and automorphisms(t.upper_half()).order == p
    ):
        cases.append(3)
    return cases


def _case_group_order(t: CyclicTournament, case: int) -> int:
    if case == 1:
        return automorphisms(t).order
    if case == 2:
        return automorphisms(t.lower_half()).order
    return automorphisms(t.upper_half()).order


def cert_rotation_group(t: CyclicTournament) -> CertificateVerdict:
    """Proved when Aut(T) is the rotation group, or a half has the matching rotational group."""
    cases = rotation_group_cases(t)
    if not cases:
        return _inapplicable(CertificateRule.ROTATION_GROUP)
    case = cases[0]
    return _proved(
        CertificateRule.ROTATION_GROUP,
        case=case,
        cases=cases,
        group_order=_case_group_order(t, case),
    )


def _rigid_indegree_classes(half: Tournament) -> Optional[List[List[int]]]:
    """The indegree classes of ``half`` if each induces a rigid tournament, else None."""
    buckets: Dict[int, List[int]] = {}
    for v, d in enumerate(half.indegree_sequence()):
        buckets.setdefault(d, []).append(v)
    classes = [vs for _, vs in sorted(buckets.items())]
    for vs in classes:
        if len(vs) >= 3 and not is_rigid(half.induced(vs)):
            return None
    return classes


def cert_indegree_classes(t: CyclicTournament) -> CertificateVerdict:
    """Proved when every indegree class of one half induces a rigid sub-tournament."""
    for name in ("lower", "upper"):
        classes = _rigid_indegree_classes(_half(t, name))
        if classes is not None:
            return _proved(CertificateRule.INDEGREE_CLASSES_RIGID, half=name, classes=classes)
    return _inapplicable(CertificateRule.INDEGREE_CLASSES_RIGID)


# -- arithmetic certificates --


def cert_min_connector(t: CyclicTournament) -> CertificateVerdict:
    """Proved when min(S-) > 2|S-|; needs S- non-empty."""
    if not t.neg.members:
        return _inapplicable(CertificateRule.MIN_CONNECTOR, reason="empty")
    smallest, size = t.neg.members[0], len(t.neg)
    if smallest > 2 * size:
        return _proved(CertificateRule.MIN_CONNECTOR, min=smallest, size=size)
    return _inapplicable(CertificateRule.MIN_CONNECTOR, min=smallest, size=size)


def cert_few_connectors(t: CyclicTournament) -> CertificateVerdict:
    """Proved when |S-| <= 2, or |S-| >= p-1 (the converse has at most one negative connector)."""
    size = len(t.neg)
    if size <= 2:
        return _proved(CertificateRule.FEW_CONNECTORS, size=size, side="direct")
    if size >= t.p - 1:
        return _proved(CertificateRule.FEW_CONNECTORS, size=size, side="converse")
    return _inapplicable(CertificateRule.FEW_CONNECTORS, size=size)


def cert_interval(t: CyclicTournament) -> CertificateVerdict:
    """Proved when S- = [a,b], or S- = [1,a] u [b,p] with a gap between the two runs.

    The empty set is left to the few-connectors rule.
    """
    members = t.neg.members
    if not members:
        return _inapplicable(CertificateRule.INTERVAL, reason="empty")
    runs = _runs(members)
    if len(runs) == 1:
        a, b = runs[0]
        return _proved(CertificateRule.INTERVAL, variant="interval", a=a, b=b)
    if len(runs) == 2 and runs[0][0] == 1 and runs[1][1] == t.p:
        return _proved(CertificateRule.INTERVAL_COMPLEMENT, variant="complement", a=runs[0][1], b=runs[1][0])
    return _inapplicable(CertificateRule.INTERVAL, runs=len(runs))


def cert_paley(t: CyclicTournament) -> CertificateVerdict:
    """Proved when T is QR_n: n prime, n = 3 (mod 4), S the non-zero squares mod n."""
    n = t.n
    if not is_paley_order(n):
        return _inapplicable(CertificateRule.PALEY, n=n)
    residues = quadratic_residues(n)
    if set(t.connectors) != residues:
        return _inapplicable(CertificateRule.PALEY, n=n)
    return _proved(CertificateRule.PALEY, n=n, residues=sorted(residues))


# -- shape of the indegree path --


def pseudo_rigidity_by_shape(pc: PseudoCyclicTournament) -> VerdictStatus:
    """Proved when P has only ascents or only descents besides plateaus, and every long
    plateau is produced by an interval of negative connectors. Proved implies P is rigid.
    """
    profile = classify_vertices(pc)
    alpha, delta = profile.alpha, profile.delta
    if alpha + delta == 0 or alpha * delta != 0:
        return VerdictStatus.INAPPLICABLE

    p = pc.p
    members = set(pc.neg.members)

    def covered(lo: int, hi: int) -> bool:
        return all(s in members for s in range(lo, hi + 1))

    for start, k in plateau_spans(profile):
        last = start + k - 1
        if 2 * last < p:
            if k >= 3 and not (covered(start + 1, last) or covered(p - last + 1, p - start)):
                logger.debug(f"{pc}: plateau at {start} of size {k} is not interval-produced")
                return VerdictStatus.INAPPLICABLE
        elif 2 * start < p:
            # central plateau (p/2-q .. p/2+q), p even
            half = p // 2
            q = half - start
            if not (covered(half - q + 1, half) or covered(half + 1, half + q)):
                logger.debug(f"{pc}: central plateau of size {k} is not interval-produced")
                return VerdictStatus.INAPPLICABLE
    return VerdictStatus.PROVED


def cert_ascent_plateau(t: CyclicTournament) -> CertificateVerdict:
    """Proved when the shape test proves P(p;S-) or P(p-1;S- minus {p}) rigid."""
    for name, pc in _pseudo_halves(t):
        if pseudo_rigidity_by_shape(pc) == VerdictStatus.PROVED:
            return _proved(CertificateRule.ASCENT_PLATEAU, half=name, pseudo=str(pc))
    return _inapplicable(CertificateRule.ASCENT_PLATEAU)


# -- re-verification and dispatch --


def _is_rotation(g: Permutation) -> bool:
    n, shift = g.n, g.image[0]
    return all(g.image[i] == (i + shift) % n for i in range(n))


def _rotation_witness_holds(t: CyclicTournament, case: Optional[int], group_order: Optional[int]) -> bool:
    p, members = t.p, t.neg.members
    if case == 1:
        group = automorphisms(t)
        return group.order == group_order == t.n and all(_is_rotation(g) for g in group.elements)
    if case == 2:
        arithmetic = p % 2 == 0 and len(members) == p // 2 and not {p + 1 - s for s in members} & set(members)
        return arithmetic and automorphisms(t.lower_half()).order == group_order == p + 1
    if case == 3:
        trimmed = [s for s in members if s != p]
        arithmetic = p % 2 == 1 and len(trimmed) == (p - 1) // 2 and not {p - s for s in members} & set(members)
        return arithmetic and automorphisms(t.upper_half()).order == group_order == p
    return False


def verify_witness(t: CyclicTournament, verdict: CertificateVerdict) -> bool:
    """Re-check a Proved verdict's witness without going through the rule that produced it."""
    if not verdict.proved or verdict.rule is None:
        return False
    w = verdict.witness
    rule = verdict.rule
    p, members = t.p, t.neg.members

    if rule in (CertificateRule.RIGID_HALF, CertificateRule.ASCENT_PLATEAU):
        return w.get("half") in ("lower", "upper") and is_rigid(_half(t, w["half"]))

    if rule == CertificateRule.INDEGREE_CLASSES_RIGID:
        if w.get("half") not in ("lower", "upper"):
            return False
        half = _half(t, w["half"])
        classes = w.get("classes", [])
        if sorted(v for vs in classes for v in vs) != list(range(half.n)):
            return False
        seq = half.indegree_sequence()
        return all(len({seq[v] for v in vs}) == 1 and is_rigid(half.induced(vs)) for vs in classes)

    if rule == CertificateRule.ROTATION_GROUP:
        return _rotation_witness_holds(t, w.get("case"), w.get("group_order"))

    if rule == CertificateRule.MIN_CONNECTOR:
        return bool(members) and w.get("min") == members[0] and w.get("size") == len(members) and members[0] > 2 * len(members)

    if rule == CertificateRule.FEW_CONNECTORS:
        size = len(members)
        if w.get("size") != size:
            return False
        return (w.get("side") == "direct" and size <= 2) or (w.get("side") == "converse" and size >= p - 1)

    if rule == CertificateRule.INTERVAL:
        a, b = w.get("a", 0), w.get("b", -1)
        return 1 <= a <= b <= p and tuple(range(a, b + 1)) == members

    if rule == CertificateRule.INTERVAL_COMPLEMENT:
        a, b = w.get("a", 0), w.get("b", 0)
        expected = tuple(range(1, a + 1)) + tuple(range(b, p + 1))
        return 1 <= a and a + 1 < b <= p and expected == members

    if rule == CertificateRule.PALEY:
        n = t.n
        residues = sorted(pow(x, 2, n) for x in range(1, n))
        return is_paley_order(n) and w.get("residues") == sorted(set(residues)) == list(t.connectors)

    return False


CERTIFICATE_ORDER: List[Callable[[CyclicTournament], CertificateVerdict]] = [
    cert_few_connectors,
    cert_min_connector,
    cert_interval,
    cert_paley,
    cert_ascent_plateau,
    cert_rigid_half,
    cert_indegree_classes,
    cert_rotation_group,
]


def certify(t: CyclicTournament) -> CertificateVerdict:
    """First Proved verdict in dispatch order whose witness re-verifies, else Inapplicable."""
    for cert in CERTIFICATE_ORDER:
        verdict = cert(t)
        if not verdict.proved:
            continue
        if verify_witness(t, verdict):
            logger.debug(f"{t}: proved by {verdict.rule.value}")
            return verdict
        logger.warning(f"{t}: discarding {verdict.rule.value} verdict, witness {verdict.witness} did not re-verify")
    return _inapplicable(None)
