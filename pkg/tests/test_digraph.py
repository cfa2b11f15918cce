"""Tests for tournament construction, connector sets and cyclic/pseudo-cyclic families."""

import pytest

from tournaments import digraph
from tournaments.digraph import (
    ConnectorSet,
    Tournament,
    almost_transitive_tournament,
    build_cyclic,
    build_pseudo_cyclic,
    converse,
    converse_isomorphism,
    degrees,
    has_arc,
    induced_interval,
    is_isomorphism,
    paley_tournament,
    transitive_tournament,
)
from tournaments.errors import (
    InvalidConnectorError,
    LiteralFormatError,
    SizeLimitError,
    TournamentError,
    VertexRangeError,
)


class TestCyclic:
    def test_connectors_of_t13(self, t13):
        assert t13.n == 13
        assert t13.neg.positive == (1, 3, 4)
        assert t13.connectors == (1, 3, 4, 7, 8, 11)
        assert str(t13) == "T(13;{2,5,6})"

    def test_arc_rule(self, t13):
        # 7 - 0 = 7 is a connector
        assert has_arc(t13, 0, 7)
        assert not has_arc(t13, 7, 0)
        assert has_arc(t13, 0, 1)
        assert has_arc(t13, 2, 0)

    def test_cyclic_is_regular(self, cyclic_space):
        for t in cyclic_space(5):
            assert t.base.is_regular()
            for u in range(t.n):
                d_in, d_out = degrees(t, u)
                assert d_in == d_out == t.p

    def test_rotation_invariance(self, t13):
        for u in range(13):
            for v in range(13):
                if u != v:
                    assert has_arc(t13, u, v) == has_arc(t13, (u + 1) % 13, (v + 1) % 13)

    def test_lower_half_is_pseudo_cyclic(self, t13, p6):
        assert t13.lower_half().same_arcs(p6.base)
        assert t13.lower_half().origin == tuple(range(7))

    def test_upper_half_is_pseudo_cyclic(self, t13):
        upper = t13.upper_half()
        assert upper.same_arcs(build_pseudo_cyclic(5, [2, 5]).base)
        assert upper.origin == (7, 8, 9, 10, 11, 12)

    def test_upper_half_single_vertex(self):
        t = build_cyclic(1, [])
        assert t.upper_half().n == 1
        assert t.upper_half().origin == (2,)

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            build_cyclic(32, [])

    def test_connector_out_of_range(self):
        with pytest.raises(InvalidConnectorError):
            build_cyclic(3, [4])


class TestConnectorSet:
    def test_parse(self):
        assert ConnectorSet.parse("2, 5,6", 6).members == (2, 5, 6)
        assert ConnectorSet.parse("{6,2,5}", 6).members == (2, 5, 6)
        assert ConnectorSet.parse("", 3).members == ()

    def test_parse_malformed(self):
        with pytest.raises(LiteralFormatError):
            ConnectorSet.parse("2,x", 6)

    def test_mask(self):
        cs = ConnectorSet.of(6, [2, 5, 6])
        assert cs.mask == 0b110010
        assert ConnectorSet.from_mask(6, cs.mask) == cs

    def test_complement_and_restrict(self):
        cs = ConnectorSet.of(6, [2, 5, 6])
        assert cs.complement().members == (1, 3, 4)
        assert cs.restrict(5).members == (2, 5)
        assert cs.is_interval() is False
        assert ConnectorSet.of(7, [3, 4, 5]).is_interval()
        assert ConnectorSet.of(7).is_interval() is False

    def test_from_connectors(self):
        assert ConnectorSet.from_connectors(7, {1, 2, 4}).members == (3,)
        assert ConnectorSet.from_connectors(13, {1, 3, 4, 7, 8, 11}).members == (2, 5, 6)

    def test_from_connectors_rejects_non_tournament(self):
        with pytest.raises(InvalidConnectorError):
            ConnectorSet.from_connectors(7, {1, 6})
        with pytest.raises(InvalidConnectorError):
            ConnectorSet.from_connectors(8, {1, 2, 3})

    def test_direct_construction_validates(self):
        with pytest.raises(ValueError):
            ConnectorSet(p=3, members=(3, 1))


class TestPseudoCyclic:
    def test_arc_rule(self, p6):
        assert str(p6) == "P(6;{2,5,6})"
        assert p6.base.has_arc(2, 0)
        assert p6.base.has_arc(0, 1)
        assert p6.base.has_arc(6, 0)
        assert p6.base.has_arc(1, 4)

    def test_p_one(self):
        pc = build_pseudo_cyclic(1, [1])
        assert pc.base.n == 2
        assert pc.base.has_arc(1, 0)

    def test_empty_connectors_is_transitive(self):
        assert build_pseudo_cyclic(5).base.same_arcs(transitive_tournament(6))

    def test_rejects_bad_order(self):
        with pytest.raises(TournamentError):
            build_pseudo_cyclic(0)


class TestConverse:
    def test_cyclic_converse_reverses_every_arc(self, cyclic_space):
        for t in cyclic_space(5):
            c = converse(t)
            assert c.neg == t.neg.complement()
            assert c.base.same_arcs(t.base.reversed())

    def test_gamma_is_isomorphism_onto_converse(self, cyclic_space):
        for t in cyclic_space(5):
            gamma = converse_isomorphism(t.p)
            assert gamma[0] == 0
            assert is_isomorphism(gamma, t, converse(t))

    def test_pseudo_cyclic_converse(self, p6):
        assert converse(p6).base.same_arcs(p6.base.reversed())

    def test_plain_tournament_converse(self):
        tt = transitive_tournament(4)
        assert converse(tt).has_arc(3, 0)

    def test_is_isomorphism_rejects_non_bijection(self, t13):
        assert not is_isomorphism([0] * 13, t13, t13)


class TestTournament:
    def test_transitive(self):
        tt = transitive_tournament(5)
        assert tt.indegree_sequence() == (0, 1, 2, 3, 4)

    def test_almost_transitive(self):
        tt = almost_transitive_tournament(4)
        assert tt.has_arc(3, 0)
        assert tt.has_arc(0, 1)
        assert almost_transitive_tournament(3).is_regular()

    def test_literal(self):
        t = Tournament.from_literal("3\n1\n2\n0\n")
        assert t.is_regular()
        assert t.out_neighbours(2) == (0,)
        assert Tournament.from_literal(t.to_literal()) == t

    def test_literal_trailing_empty_line(self):
        t = Tournament.from_literal("2\n1\n")
        assert t.has_arc(0, 1)

    def test_literal_errors(self):
        with pytest.raises(LiteralFormatError):
            Tournament.from_literal("")
        with pytest.raises(LiteralFormatError):
            Tournament.from_literal("three\n")
        with pytest.raises(LiteralFormatError):
            Tournament.from_literal("2\n5\n")
        with pytest.raises(TournamentError):
            # 1 -> 2 and 2 -> 1
            Tournament.from_literal("3\n1 2\n2\n1\n")

    def test_rows_are_checked_once(self, monkeypatch, t13):
        calls = []
        check = digraph._check_rows
        monkeypatch.setattr(digraph, "_check_rows", lambda rows: calls.append(len(rows)) or check(rows))
        t13.base.induced(range(7))
        Tournament(out_rows=(0b110, 0b100, 0b000))
        t13.base.reversed()
        assert calls == [7, 3]

    def test_direct_construction_compares_in_rows(self):
        assert Tournament(out_rows=(0b10, 0b00), in_rows=(0b00, 0b01)).has_arc(0, 1)
        with pytest.raises(ValueError):
            Tournament(out_rows=(0b10, 0b00), in_rows=(0b10, 0b00))

    def test_rows_must_form_tournament(self):
        with pytest.raises(TournamentError):
            Tournament.from_rows([0b10, 0b00, 0b00])
        with pytest.raises(TournamentError):
            Tournament.from_rows([0b01])
        with pytest.raises(VertexRangeError):
            Tournament.from_rows([0b100, 0b01])

    def test_sample_is_tournament(self, rng):
        for n in range(1, 12):
            t = Tournament.sample(n, rng)
            assert sum(t.indegree_sequence()) == n * (n - 1) // 2

    def test_induced_keeps_origin(self, t13):
        sub = t13.base.induced([12, 7, 9])
        assert sub.origin == (7, 9, 12)
        assert sub.has_arc(0, 1) == t13.base.has_arc(7, 9)
        nested = sub.induced([1, 2])
        assert nested.origin == (9, 12)

    def test_induced_interval(self, t13):
        assert induced_interval(t13, 0, 6).same_arcs(t13.lower_half())
        with pytest.raises(VertexRangeError):
            induced_interval(t13, 3, 3)
        with pytest.raises(VertexRangeError):
            induced_interval(t13, 0, 13)

    def test_vertex_range(self, t13):
        with pytest.raises(VertexRangeError):
            t13.base.indegree(13)


class TestPaley:
    @pytest.mark.parametrize(
        "n, neg",
        [(7, (3,)), (11, (2,)), (19, (2, 3, 8)), (23, (5, 7, 10, 11))],
    )
    def test_negative_connectors(self, n, neg):
        assert paley_tournament(n).neg.members == neg

    def test_not_prime(self):
        with pytest.raises(InvalidConnectorError, match="not prime"):
            paley_tournament(9)

    def test_wrong_residue_class(self):
        with pytest.raises(InvalidConnectorError, match="3 mod 4"):
            paley_tournament(13)
