"""Rule-based embedding certificates.

Every step of a derivation names a rule id; the human-readable citation for
that id comes from ``RULES`` and nowhere else, so the table is the single
place to audit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .filling import D_STOT, d3_from_word
from .openbook import HomologySummary, OpenBook, ob_first_homology


class C1Status(Enum):
    DERIVED_ZERO = "derived-zero"
    DECLARED_ZERO = "zero"
    DECLARED_NONZERO = "nonzero"

    @property
    def is_zero(self) -> bool:
        return self is not C1Status.DECLARED_NONZERO


class ClassTag(Enum):
    STANDARD = "standard"
    OVERTWISTED = "ot"
    STOT_SUM = "stot"
    UNSPECIFIED = "unspecified"


class Verdict(Enum):
    EMBEDS = "embeds"
    OBSTRUCTED = "obstructed"
    CONDITIONAL = "conditional"
    UNKNOWN = "unknown"

    @property
    def exit_code(self) -> int:
        return {"embeds": 0, "obstructed": 1}.get(self.value, 2)


class CertifierInputError(ValueError):
    """Raised for inputs the certifier refuses to judge (CLI exit code 3)."""


RULES: dict[str, str] = {
    "R1": "Kasuya obstruction: vanishing c1 is necessary for a codimension-2 iso-contact embedding into a standard sphere",
    "R2": "Thm 1.3(1): a closed contact 3-manifold with c1 = 0 and no 2-torsion in H^2 embeds in (S5, xi_std)",
    "R3": "Thm 1.3(2): with 2-torsion in H^2, an embedding exists for structures in one distinguished homotopy class over the 2-skeleton",
    "R4": "Thm 1.5: a closed simply connected contact 5-manifold with w2 = 0 and c1 = 0 embeds in (S7, xi_std)",
    "R5": "Prop 5.1: S5 has a single almost-contact class, so every contact S5 embeds in (S7, xi_std)",
    "R6": "Lemma 5.2: S2 x S3 with vanishing c1 embeds in (S7, xi_std)",
    "R7": "Prop 1.2: a contact embedding that is almost-contact homotopic to the given structure yields an iso-contact embedding",
    "R8": "Thm 1.1: an overtwisted structure embeds once some embedding with trivial normal bundle exists",
    "R9": "Prop 2.8: a connected sum of open books whose summands embed also embeds",
    "R10": "Prop 3.3: summing with the standard overtwisted sphere preserves embeddability",
    "F1": "Prop 3.2: the standard overtwisted sphere embeds in the standard contact sphere",
    "F2": "Etnyre-Fukuwara: contact 3-manifolds arise as branched covers inducing the contact structure",
    "H0": "H^2(M; Z) = 0 for an integral homology sphere, so c1 vanishes",
    "W2": "Barden decomposition: w2 vanishes exactly when no twisted summand occurs",
}

EMBED_RULES = frozenset({"R2", "R4", "R5", "R6", "R7", "R8", "R9", "R10", "F1"})

CONDITIONAL_NOTE = "distinguished class not computed: the class [xi] exists but this tool does not determine it"


@dataclass(frozen=True)
class Step:
    rule: str
    premises: tuple[str, ...] = ()

    def __post_init__(self):
        if self.rule not in RULES:
            raise KeyError(f"rule {self.rule!r} is not in the citation table")

    @property
    def citation(self) -> str:
        return RULES[self.rule]


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    target: str
    derivation: tuple[Step, ...] = ()
    notes: tuple[str, ...] = ()
    input_label: str = ""
    invariants: str = ""

    def __post_init__(self):
        if self.target not in ("S5", "S7"):
            raise ValueError(f"unknown target {self.target!r}")
        rules = [s.rule for s in self.derivation]
        if "R1" in rules and any(r in EMBED_RULES for r in rules):
            raise AssertionError("certificate derives both an embedding and an obstruction")

    @property
    def exit_code(self) -> int:
        return self.verdict.exit_code

    def cites(self, rule: str) -> bool:
        return any(s.rule == rule for s in self.derivation)


@dataclass(frozen=True)
class ContactDescriptor:
    dimension: int
    c1_status: C1Status
    d3: Fraction | None = None
    class_tag: ClassTag = ClassTag.UNSPECIFIED
    homology: HomologySummary | None = None

    def __post_init__(self):
        if self.dimension not in (3, 5):
            raise ValueError("contact descriptors cover dimensions 3 and 5")

    @property
    def two_torsion(self) -> bool:
        return bool(self.homology and self.homology.two_torsion)


@dataclass(frozen=True)
class FiveFoldDescription:
    s2xs3_count: int = 0
    mk: tuple[tuple[int, int], ...] = ()
    twisted_count: int = 0
    simply_connected: bool = True
    almost_contact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "mk", tuple((int(k), int(c)) for k, c in self.mk))
        if self.s2xs3_count < 0 or self.twisted_count < 0:
            raise ValueError("summand counts must be nonnegative")
        for k, c in self.mk:
            if k < 2:
                raise ValueError(f"M_k needs k >= 2 (got k={k})")
            if c < 0:
                raise ValueError("summand counts must be nonnegative")

    @property
    def is_sphere(self) -> bool:
        return self.s2xs3_count == 0 and self.twisted_count == 0 and all(c == 0 for _, c in self.mk)

    def describe(self) -> str:
        parts = []
        if self.s2xs3_count:
            parts.append(f"{self.s2xs3_count}x(S2xS3)")
        parts += [f"{c}xM{k}" for k, c in self.mk if c]
        if self.twisted_count:
            parts.append(f"{self.twisted_count}x(S2~xS3)")
        return " # ".join(parts) or "S5"


def derive_contact_invariants(ob: OpenBook, declared: str | None = None) -> ContactDescriptor:
    """Descriptor for the structure supported by ``ob``.

    ``declared`` is "zero", "nonzero", or None/"auto". An undeclared c1 is
    derived only on integral homology spheres.
    """
    h = ob_first_homology(ob)
    if declared in (None, "auto"):
        if not h.is_trivial:
            raise CertifierInputError(f"c1 undeclared and not derivable (H1 = {h})")
        status = C1Status.DERIVED_ZERO
    elif declared == "zero":
        status = C1Status.DECLARED_ZERO
    elif declared == "nonzero":
        status = C1Status.DECLARED_NONZERO
    else:
        raise CertifierInputError(f"bad c1 declaration {declared!r}")
    return ContactDescriptor(3, status, d3_from_word(ob), ClassTag.UNSPECIFIED, h)


def _invariants_line(h: HomologySummary | None, c1: C1Status) -> str:
    if h is None:
        return f"h1=0, free=0, two_torsion=false, c1={c1.value}"
    divs = ",".join(map(str, h.divisors)) or "0"
    return f"h1={divs}, free={h.free_rank}, two_torsion={str(h.two_torsion).lower()}, c1={c1.value}"


def certify_s5(desc: ContactDescriptor, label: str = "") -> Certificate:
    if desc.dimension != 3:
        raise CertifierInputError("S5 certificates need a 3-dimensional descriptor")
    inv = _invariants_line(desc.homology, desc.c1_status)
    steps: list[Step] = []
    notes: list[str] = []
    if desc.c1_status is C1Status.DECLARED_NONZERO:
        if desc.homology is not None and desc.homology.is_trivial:
            notes.append("declared c1 is nonzero although H^2(M) = 0")
        steps.append(Step("R1", ("c1 nonzero",)))
        return Certificate(Verdict.OBSTRUCTED, "S5", tuple(steps), tuple(notes), label, inv)
    if desc.c1_status is C1Status.DERIVED_ZERO:
        steps.append(Step("H0", ("H1 trivial",)))
    if not desc.two_torsion:
        steps.append(Step("R2", ("c1 = 0", "no 2-torsion")))
        verdict = Verdict.EMBEDS
    else:
        steps.append(Step("R3", ("c1 = 0", "2-torsion present")))
        notes.append(CONDITIONAL_NOTE)
        verdict = Verdict.CONDITIONAL
    if desc.c1_status is C1Status.DECLARED_ZERO:
        notes.append("assumed: c1 = 0 (declared)")
    return Certificate(verdict, "S5", tuple(steps), tuple(notes), label, inv)


def certify_5fold_s7(m: FiveFoldDescription, c1: str | None = None, label: str = "") -> Certificate:
    if not m.simply_connected:
        raise CertifierInputError("five-fold must be simply connected")
    if not m.almost_contact:
        raise CertifierInputError("five-fold must carry an almost-contact structure (W3 = 0)")
    if c1 in (None, "auto"):
        if not m.is_sphere:
            raise CertifierInputError("c1 undeclared and not derivable")
        status = C1Status.DERIVED_ZERO
    elif c1 == "zero":
        status = C1Status.DECLARED_ZERO
    elif c1 == "nonzero":
        status = C1Status.DECLARED_NONZERO
    else:
        raise CertifierInputError(f"bad c1 declaration {c1!r}")
    inv = _invariants_line(None, status)
    notes = [f"decomposition: {m.describe()}"]

    def cert(verdict, *steps):
        return Certificate(verdict, "S7", tuple(steps), tuple(notes), label, inv)

    if m.is_sphere:
        if status is C1Status.DECLARED_NONZERO:
            raise CertifierInputError("H^2(S5) = 0, so c1 cannot be nonzero")
        return cert(Verdict.EMBEDS, Step("R5", ("S5",)))
    if status is C1Status.DECLARED_NONZERO:
        return cert(Verdict.OBSTRUCTED, Step("R1", ("c1 nonzero",)))
    if m.twisted_count:
        notes.append("outside Thm 1.5 hypotheses: w2 is nonzero")
        return cert(Verdict.UNKNOWN, Step("W2", ("twisted summand present",)))
    w2 = Step("W2", ("no twisted summand",))
    if m.s2xs3_count == 1 and not any(c for _, c in m.mk):
        return cert(Verdict.EMBEDS, w2, Step("R6", ("S2xS3", "c1 = 0")))
    return cert(Verdict.EMBEDS, w2, Step("R4", ("simply connected", "w2 = 0", "c1 = 0")))


# certify_general: closed fact vocabulary

_FACT = re.compile(r"^([a-z0-9-]+)(?:\((\d+)\))?$")
PLAIN_FACTS = frozenset({
    "contact-embedding-exists",
    "almost-contact-homotopic",
    "ot-embeds-trivial-normal",
    "c1-zero",
    "c1-nonzero",
    "three-manifold",
    "is-stot-sphere",
    "stot-sum",
})
INDEXED_FACTS = frozenset({"summand-count", "summand-embeds"})


def parse_fact(token: str) -> tuple[str, int | None]:
    m = _FACT.match(token.strip())
    if not m:
        raise CertifierInputError(f"unknown fact token {token!r}")
    name, arg = m.group(1), m.group(2)
    if name in PLAIN_FACTS and arg is None:
        return name, None
    if name in INDEXED_FACTS and arg is not None:
        return name, int(arg)
    raise CertifierInputError(f"unknown fact token {token!r}")


@dataclass
class _Chain:
    facts: set = field(default_factory=set)
    steps: list = field(default_factory=list)

    def fire(self, rule: str, premises: tuple[str, ...], conclusion: str) -> bool:
        if conclusion in self.facts:
            return False
        self.facts.add(conclusion)
        self.steps.append(Step(rule, premises))
        return True


def _summands_embed(facts: set) -> tuple[str, ...] | None:
    counts = [a for n, a in facts if n == "summand-count"]
    if len(counts) != 1 or counts[0] < 1:
        return None
    k = counts[0]
    if all(("summand-embeds", i) in facts for i in range(1, k + 1)):
        return (f"summand-count({k})",) + tuple(f"summand-embeds({i})" for i in range(1, k + 1))
    return None


def _closure(tokens) -> tuple[_Chain, set[str]]:
    """Saturate the fact set; returns the chain and every terminal verdict reached."""
    facts = {parse_fact(t) for t in tokens}
    if ("c1-zero", None) in facts and ("c1-nonzero", None) in facts:
        raise CertifierInputError("facts assert both c1-zero and c1-nonzero")
    chain = _Chain(set(facts))
    terminals: set[str] = set()
    nonzero = ("c1-nonzero", None) in facts

    def has(name):
        return (name, None) in chain.facts

    changed = True
    while changed:
        changed = False
        if nonzero:
            if chain.fire("R1", ("c1-nonzero",), ("obstructed", None)):
                terminals.add("obstructed")
                changed = True
            continue
        if has("three-manifold"):
            changed |= chain.fire("F2", ("three-manifold",), ("branched-cover-model", None))
        if has("is-stot-sphere") or has("stot-sum"):
            changed |= chain.fire("F1", ("stot sphere",), ("stot-sphere-embeds", None))
        if has("contact-embedding-exists") and has("almost-contact-homotopic"):
            if chain.fire("R7", ("contact-embedding-exists", "almost-contact-homotopic"), ("iso-embeds", None)):
                terminals.add("embeds")
                changed = True
        if has("ot-embeds-trivial-normal"):
            if chain.fire("R8", ("ot-embeds-trivial-normal",), ("ot-embeds", None)):
                terminals.add("embeds")
                changed = True
        prem = _summands_embed(chain.facts)
        if prem is not None and chain.fire("R9", prem, ("sum-embeds", None)):
            terminals.add("embeds")
            changed = True
        if has("stot-sum") and has("stot-sphere-embeds") and (has("iso-embeds") or has("sum-embeds")):
            if chain.fire("R10", ("stot-sum", "base embeds"), ("stot-embeds", None)):
                terminals.add("embeds")
                changed = True
        if has("is-stot-sphere") and has("stot-sphere-embeds"):
            terminals.add("embeds")
    return chain, terminals


def derivable_verdicts(tokens) -> set[str]:
    """Every terminal verdict the full closure reaches (used for soundness checks)."""
    return _closure(tokens)[1]


def certify_general(tokens, target: str = "S5", label: str = "") -> Certificate:
    tokens = list(tokens)
    chain, terminals = _closure(tokens)
    if "embeds" in terminals and "obstructed" in terminals:
        raise AssertionError("inconsistent rule base: both verdicts derived")
    notes = tuple(f"assumed: {t.strip()}" for t in sorted(tokens))
    c1 = "nonzero" if ("c1-nonzero", None) in chain.facts else "zero" if ("c1-zero", None) in chain.facts else "?"
    inv = f"facts={len(tokens)}, c1={c1}"
    if "obstructed" in terminals:
        verdict = Verdict.OBSTRUCTED
    elif "embeds" in terminals:
        verdict = Verdict.EMBEDS
    else:
        verdict = Verdict.UNKNOWN
    return Certificate(verdict, target, tuple(chain.steps), notes, label, inv)


def render_certificate(c: Certificate) -> str:
    lines = [
        f"verdict: {c.verdict.value}",
        f"target: {c.target}",
        f"input: {c.input_label or '-'}",
        f"invariants: {c.invariants or 'none'}",
    ]
    for i, s in enumerate(c.derivation, 1):
        lines.append(f"step {i}: {s.rule} — {s.citation}")
    lines += [f"note: {n}" for n in c.notes]
    return "\n".join(lines) + "\n"


def stot_note(d3: Fraction | None) -> str:
    """Note attached wherever the overtwisted-sphere constant enters a d3 value."""
    base = f"d3 uses D_STOT = {D_STOT} (configurable default, not derived)"
    return base if d3 is None else f"{base}; result {d3}"
