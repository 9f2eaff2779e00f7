import itertools
import random

import pytest

from isocontact.certifier import (
    CONDITIONAL_NOTE,
    EMBED_RULES,
    PLAIN_FACTS,
    RULES,
    C1Status,
    Certificate,
    CertifierInputError,
    ContactDescriptor,
    FiveFoldDescription,
    Step,
    Verdict,
    certify_5fold_s7,
    certify_general,
    certify_s5,
    derivable_verdicts,
    derive_contact_invariants,
    render_certificate,
    stot_note,
)
from isocontact.linalg import DivisorChain
from isocontact.openbook import HomologySummary, annulus, disk, trefoil


def test_derive_invariants():
    assert derive_contact_invariants(trefoil()).c1_status is C1Status.DERIVED_ZERO
    assert derive_contact_invariants(annulus(2), "zero").c1_status is C1Status.DECLARED_ZERO
    with pytest.raises(CertifierInputError, match="c1 undeclared and not derivable"):
        derive_contact_invariants(annulus(2))
    with pytest.raises(CertifierInputError):
        derive_contact_invariants(disk(), "maybe")


def test_descriptor_carries_d3():
    assert derive_contact_invariants(disk()).d3 == 0
    assert derive_contact_invariants(annulus(2), "zero").d3 is None


def test_s5_examples():
    c = certify_s5(derive_contact_invariants(disk()))
    assert c.verdict is Verdict.EMBEDS and c.cites("R2") and "Thm 1.3(1)" in RULES["R2"]
    c = certify_s5(derive_contact_invariants(annulus(2), "zero"))
    assert c.verdict is Verdict.CONDITIONAL and c.cites("R3") and "Thm 1.3(2)" in RULES["R3"]
    assert CONDITIONAL_NOTE in c.notes
    for ob in (disk(), trefoil(), annulus(2), annulus(3)):
        c = certify_s5(derive_contact_invariants(ob, "nonzero"))
        assert c.verdict is Verdict.OBSTRUCTED and c.cites("R1") and "Kasuya" in RULES["R1"]


def test_s5_rejects_wrong_dimension():
    with pytest.raises(CertifierInputError):
        certify_s5(ContactDescriptor(5, C1Status.DECLARED_ZERO))


def test_s5_depends_only_on_c1_and_two_torsion():
    """All six (c1 status, two-torsion) combinations, with varied other fields."""
    expected = {
        (C1Status.DERIVED_ZERO, False): Verdict.EMBEDS,
        (C1Status.DERIVED_ZERO, True): Verdict.CONDITIONAL,
        (C1Status.DECLARED_ZERO, False): Verdict.EMBEDS,
        (C1Status.DECLARED_ZERO, True): Verdict.CONDITIONAL,
        (C1Status.DECLARED_NONZERO, False): Verdict.OBSTRUCTED,
        (C1Status.DECLARED_NONZERO, True): Verdict.OBSTRUCTED,
    }
    groups = {False: [DivisorChain(), DivisorChain((3,)), DivisorChain((), 2)], True: [DivisorChain((2,)), DivisorChain((2, 6), 1)]}
    for (status, tt), verdict in expected.items():
        for ch in groups[tt]:
            for d3 in (None, 0):
                desc = ContactDescriptor(3, status, d3, homology=HomologySummary.of(ch))
                assert certify_s5(desc).verdict is verdict


def test_fivefold_examples():
    c = certify_5fold_s7(FiveFoldDescription(), "zero")
    assert c.verdict is Verdict.EMBEDS and c.cites("R5") and "Prop 5.1" in RULES["R5"]
    assert certify_5fold_s7(FiveFoldDescription()).verdict is Verdict.EMBEDS
    c = certify_5fold_s7(FiveFoldDescription(1), "zero")
    assert c.verdict is Verdict.EMBEDS and c.cites("R6")
    assert certify_5fold_s7(FiveFoldDescription(1), "nonzero").verdict is Verdict.OBSTRUCTED
    c = certify_5fold_s7(FiveFoldDescription(3, ((4, 1),)), "zero")
    assert c.verdict is Verdict.EMBEDS and c.cites("R4") and "Thm 1.5" in RULES["R4"]
    c = certify_5fold_s7(FiveFoldDescription(1, (), 1), "zero")
    assert c.verdict is Verdict.UNKNOWN
    assert any("outside Thm 1.5 hypotheses" in n for n in c.notes)


def test_fivefold_input_errors():
    with pytest.raises(CertifierInputError):
        certify_5fold_s7(FiveFoldDescription(simply_connected=False), "zero")
    with pytest.raises(CertifierInputError):
        certify_5fold_s7(FiveFoldDescription(almost_contact=False), "zero")
    with pytest.raises(CertifierInputError):
        certify_5fold_s7(FiveFoldDescription(), "nonzero")
    with pytest.raises(CertifierInputError):
        certify_5fold_s7(FiveFoldDescription(2))
    with pytest.raises(ValueError):
        FiveFoldDescription(0, ((1, 1),))


def test_general_examples():
    c = certify_general(["contact-embedding-exists", "almost-contact-homotopic"])
    assert c.verdict is Verdict.EMBEDS and c.cites("R7")
    c = certify_general(["ot-embeds-trivial-normal"])
    assert c.verdict is Verdict.EMBEDS and c.cites("R8")
    assert certify_general([]).verdict is Verdict.UNKNOWN
    with pytest.raises(CertifierInputError):
        certify_general(["no-such-fact"])
    with pytest.raises(CertifierInputError):
        certify_general(["summand-embeds"])


def test_general_chaining():
    c = certify_general(["summand-count(2)", "summand-embeds(1)", "summand-embeds(2)"])
    assert c.verdict is Verdict.EMBEDS and c.cites("R9")
    assert certify_general(["summand-count(2)", "summand-embeds(1)"]).verdict is Verdict.UNKNOWN
    c = certify_general(["stot-sum", "summand-count(1)", "summand-embeds(1)"])
    assert [s.rule for s in c.derivation] == ["F1", "R9", "R10"]
    c = certify_general(["is-stot-sphere"])
    assert c.verdict is Verdict.EMBEDS and c.cites("F1")
    c = certify_general(["c1-nonzero", "ot-embeds-trivial-normal"])
    assert c.verdict is Verdict.OBSTRUCTED and not c.cites("R8")
    assert all(n.startswith("assumed: ") for n in c.notes)
    with pytest.raises(CertifierInputError):
        certify_general(["c1-zero", "c1-nonzero"])


def test_certificate_refuses_mixed_verdicts():
    with pytest.raises(AssertionError):
        Certificate(Verdict.EMBEDS, "S5", (Step("R1"), Step("R2")))
    with pytest.raises(KeyError):
        Step("R99")


def test_rendering():
    text = render_certificate(certify_s5(derive_contact_invariants(trefoil()), "trefoil"))
    lines = text.splitlines()
    assert lines[0] == "verdict: embeds"
    assert lines[1] == "target: S5"
    assert lines[2] == "input: trefoil"
    assert lines[3] == "invariants: h1=0, free=0, two_torsion=false, c1=derived-zero"
    assert lines[4].startswith("step 1: H0 — ")
    assert lines[5].startswith("step 2: R2 — Thm 1.3(1)")
    text = render_certificate(certify_s5(derive_contact_invariants(annulus(2), "zero"), "rp3"))
    assert "invariants: h1=2, free=0, two_torsion=true, c1=zero" in text
    assert "note: distinguished class not computed" in text
    assert render_certificate(certify_general([])) == render_certificate(certify_general([]))


def test_exit_codes():
    assert Verdict.EMBEDS.exit_code == 0
    assert Verdict.OBSTRUCTED.exit_code == 1
    assert Verdict.CONDITIONAL.exit_code == 2
    assert Verdict.UNKNOWN.exit_code == 2


def test_stot_note_mentions_constant():
    assert "D_STOT = 1" in stot_note(None)


def random_fact_set(rng: random.Random) -> list[str]:
    facts = [f for f in sorted(PLAIN_FACTS) if rng.random() < 0.3]
    if "c1-zero" in facts and "c1-nonzero" in facts:
        facts.remove(rng.choice(["c1-zero", "c1-nonzero"]))
    if rng.random() < 0.5:
        k = rng.randint(1, 3)
        facts.append(f"summand-count({k})")
        facts += [f"summand-embeds({i})" for i in range(1, k + 1) if rng.random() < 0.7]
    return facts


def test_soundness_fuzz():
    rng = random.Random(2024)
    for _ in range(1000):
        facts = random_fact_set(rng)
        reach = derivable_verdicts(facts)
        assert not {"embeds", "obstructed"} <= reach
        c = certify_general(facts)
        assert all(s.citation == RULES[s.rule] for s in c.derivation)
        if c.verdict is Verdict.OBSTRUCTED:
            assert not any(s.rule in EMBED_RULES for s in c.derivation)


def test_soundness_over_all_plain_fact_subsets():
    for k in range(len(PLAIN_FACTS) + 1):
        for combo in itertools.combinations(sorted(PLAIN_FACTS), k):
            if {"c1-zero", "c1-nonzero"} <= set(combo):
                continue
            assert not {"embeds", "obstructed"} <= derivable_verdicts(combo)
