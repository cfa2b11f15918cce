"""Tests for the sufficient conditions and the certificate dispatcher."""

import logging

import pytest

from tournaments import certificates
from tournaments.automorphisms import automorphisms, is_rigid
from tournaments.certificates import (
    CERTIFICATE_ORDER,
    CertificateRule,
    CertificateVerdict,
    VerdictStatus,
    cert_ascent_plateau,
    cert_few_connectors,
    cert_indegree_classes,
    cert_interval,
    cert_min_connector,
    cert_paley,
    cert_rigid_half,
    cert_rotation_group,
    certify,
    pseudo_rigidity_by_shape,
    rotation_group_cases,
    verify_witness,
)
from tournaments.digraph import build_cyclic, build_pseudo_cyclic, paley_tournament
from tournaments.distinguishing import CheckMode, check_conjecture


class TestDispatcher:
    def test_t13_is_rotation_group(self, t13):
        verdict = certify(t13)
        assert verdict.proved
        assert verdict.rule == CertificateRule.ROTATION_GROUP
        assert verdict.witness["case"] == 1
        assert verdict.witness["group_order"] == 13

    def test_t13_other_rules_do_not_apply(self, t13):
        for cert in CERTIFICATE_ORDER[:-1]:
            assert not cert(t13).proved

    def test_paley_seven_is_few_connectors(self, qr7):
        verdict = certify(qr7)
        assert verdict.rule == CertificateRule.FEW_CONNECTORS
        assert verdict.witness == {"size": 1, "side": "direct"}

    def test_to_record(self, t13):
        record = certify(t13).to_record(t13)
        assert record["p"] == 6
        assert record["neg"] == [2, 5, 6]
        assert record["status"] == "Proved"
        assert record["rule"] == "RotationGroup"

    def test_no_rule_applies(self, monkeypatch, t13):
        monkeypatch.setattr(certificates, "CERTIFICATE_ORDER", [cert_few_connectors])
        verdict = certify(t13)
        assert verdict.status == VerdictStatus.INAPPLICABLE
        assert verdict.rule is None
        assert verdict.to_record(t13)["rule"] is None

    def test_bad_witness_is_discarded(self, monkeypatch, t13, caplog):
        def lying(t):
            return CertificateVerdict(
                status=VerdictStatus.PROVED,
                rule=CertificateRule.MIN_CONNECTOR,
                witness={"min": 2, "size": 3},
            )

        monkeypatch.setattr(certificates, "CERTIFICATE_ORDER", [lying, cert_rotation_group])
        with caplog.at_level(logging.WARNING, logger="tournaments.certificates"):
            verdict = certify(t13)
        assert verdict.rule == CertificateRule.ROTATION_GROUP
        assert "discarding MinConnector" in caplog.text


class TestArithmeticRules:
    def test_few_connectors(self):
        assert cert_few_connectors(build_cyclic(5)).witness == {"size": 0, "side": "direct"}
        assert cert_few_connectors(build_cyclic(5, [1, 2, 3, 4])).witness["side"] == "converse"
        assert not cert_few_connectors(build_cyclic(6, [2, 5, 6])).proved

    def test_min_connector(self):
        verdict = cert_min_connector(build_cyclic(6, [5, 6]))
        assert verdict.proved
        assert verdict.witness == {"min": 5, "size": 2}
        assert not cert_min_connector(build_cyclic(6, [2, 5, 6])).proved
        empty = cert_min_connector(build_cyclic(4))
        assert not empty.proved and empty.witness["reason"] == "empty"

    def test_interval(self):
        verdict = cert_interval(build_cyclic(7, [3, 4, 5]))
        assert verdict.rule == CertificateRule.INTERVAL
        assert (verdict.witness["a"], verdict.witness["b"]) == (3, 5)

    def test_interval_complement(self):
        t = build_cyclic(7, [1, 2, 6, 7])
        verdict = cert_interval(t)
        assert verdict.rule == CertificateRule.INTERVAL_COMPLEMENT
        assert (verdict.witness["a"], verdict.witness["b"]) == (2, 6)
        assert verify_witness(t, verdict)

    def test_interval_inapplicable(self):
        assert not cert_interval(build_cyclic(4, [1, 3])).proved
        assert not cert_interval(build_cyclic(4)).proved
        assert cert_interval(build_cyclic(4, [1, 4])).rule == CertificateRule.INTERVAL_COMPLEMENT

    def test_paley(self):
        verdict = cert_paley(paley_tournament(11))
        assert verdict.proved
        assert verdict.witness["residues"] == [1, 3, 4, 5, 9]
        assert not cert_paley(build_cyclic(6, [2, 5, 6])).proved
        # right order, wrong connectors
        assert not cert_paley(build_cyclic(3, [1])).proved


class TestGroupRules:
    def test_rotation_case_two(self):
        t = build_cyclic(2, [2])
        assert 2 in rotation_group_cases(t)
        assert automorphisms(t.lower_half()).order == 3

    def test_rotation_inapplicable(self, qr7):
        assert not cert_rotation_group(qr7).proved

    def test_rotation_witness_is_checked_on_the_group(self, monkeypatch, t13, qr7):
        monkeypatch.setattr(certificates, "rotation_group_cases", lambda t: [1, 2, 3])

        def claim(case, group_order):
            return CertificateVerdict(
                status=VerdictStatus.PROVED,
                rule=CertificateRule.ROTATION_GROUP,
                witness={"case": case, "group_order": group_order},
            )

        assert verify_witness(t13, claim(1, 13))
        assert not verify_witness(t13, claim(3, 6))
        # Aut(QR_7) has order 21, so it holds non-rotations
        assert not verify_witness(qr7, claim(1, 21))
        assert not verify_witness(qr7, claim(1, 7))
        t5 = build_cyclic(2, [2])
        assert verify_witness(t5, claim(2, 3))
        assert not verify_witness(t5, claim(2, 5))

    def test_indegree_classes(self):
        t = build_cyclic(5, [2, 4])
        verdict = cert_indegree_classes(t)
        assert verdict.proved
        assert verdict.witness == {"half": "lower", "classes": [[0, 2, 4], [1, 3, 5]]}
        assert verify_witness(t, verdict)

    def test_indegree_classes_inapplicable_on_t13(self, t13):
        assert not cert_indegree_classes(t13).proved

    def test_rigid_half(self, t13):
        verdict = cert_rigid_half(build_cyclic(4, [1]))
        assert verdict.witness == {"half": "lower", "interval": [0, 4]}
        assert not cert_rigid_half(t13).proved


class TestShape:
    def test_central_plateau_with_interval(self):
        # IS = (3,4,4,4,4,4,4,4,5), plateau produced by {2,3,4}
        assert pseudo_rigidity_by_shape(build_pseudo_cyclic(8, [2, 3, 4])) == VerdictStatus.PROVED
        assert pseudo_rigidity_by_shape(build_pseudo_cyclic(8, [2, 3, 5])) == VerdictStatus.INAPPLICABLE

    def test_transitive_is_proved(self):
        assert pseudo_rigidity_by_shape(build_pseudo_cyclic(5)) == VerdictStatus.PROVED

    def test_mixed_shape_is_inapplicable(self, p6):
        assert pseudo_rigidity_by_shape(p6) == VerdictStatus.INAPPLICABLE

    def test_plateau_not_produced_by_interval(self):
        assert pseudo_rigidity_by_shape(build_pseudo_cyclic(5, [2, 5])) == VerdictStatus.INAPPLICABLE

    @pytest.mark.slow
    def test_shape_soundness(self):
        for p in range(1, 11):
            for mask in range(1 << p):
                pc = build_pseudo_cyclic(p, [b + 1 for b in range(p) if mask >> b & 1])
                if pseudo_rigidity_by_shape(pc) == VerdictStatus.PROVED:
                    assert is_rigid(pc), str(pc)

    @pytest.mark.slow
    def test_intervals_are_rigid(self):
        for p in range(2, 13):
            cyclic_cases = {(1, p // 2), (p // 2 + 1, p)} if p % 2 == 0 else set()
            for a in range(1, p + 1):
                for b in range(a, p + 1):
                    pc = build_pseudo_cyclic(p, range(a, b + 1))
                    if (a, b) in cyclic_cases:
                        assert not is_rigid(pc), str(pc)
                        assert is_rigid(build_pseudo_cyclic(p - 1, [s for s in range(a, b + 1) if s < p]))
                    else:
                        assert is_rigid(pc), str(pc)

    def test_ascent_plateau_names_its_half(self, cyclic_space):
        for t in cyclic_space(6):
            verdict = cert_ascent_plateau(t)
            if verdict.proved:
                assert verdict.witness["half"] in ("lower", "upper")
                assert verify_witness(t, verdict)


class TestSoundness:
    @pytest.mark.slow
    def test_every_rule_implies_the_canonical_labeling_distinguishes(self, cyclic_space):
        for t in cyclic_space(7):
            holds = check_conjecture(t, CheckMode.BRUTE).holds
            for cert in CERTIFICATE_ORDER:
                verdict = cert(t)
                if verdict.proved:
                    assert holds, f"{cert.__name__} on {t}"
                    assert verify_witness(t, verdict), f"{cert.__name__} on {t}"

    def test_certified_agrees_with_brute(self, cyclic_space):
        for t in cyclic_space(6):
            assert check_conjecture(t).holds == check_conjecture(t, CheckMode.BRUTE).holds

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_small_orders_are_few_connectors(self, p, cyclic_space):
        for t in cyclic_space(p, p_min=p):
            assert certify(t).rule == CertificateRule.FEW_CONNECTORS

    def test_verify_rejects_inapplicable(self, t13):
        assert not verify_witness(t13, cert_few_connectors(t13))
