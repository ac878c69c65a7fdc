"""The verdict engine: every sufficient condition the library can apply.

Each check returns Proved, Refuted or Unknown.  Proved and Refuted always
carry the identifier of the rule that fired (see ``verdicts.RULES``); Unknown
carries an account of the criteria attempted.  Irreducibility, atoroidality
and uniqueness are never Refuted: the rules are sufficient conditions only,
and a presentation the rules cannot settle stays honestly Unknown.

Power and primitivity hypotheses accept three evidence sources, in priority
order: explicit word computation, then asserted facts, then the homology
shortcut (a p-th power abelianizes to a p-th multiple, a primitive element
to a generator, so the contrapositive refutes power shapes from coordinates
alone).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .freegroup import (
    Word,
    classes_contain_basis,
    is_power_of_primitive,
    is_primitive,
    nth_root,
    xayb_quotient_class,
)
from .lattice import (
    DivisibilityClass,
    LatticeVector,
    divisibility_class,
    is_symmetric_type,
    normalize_vector,
    slope_type,
)
from .model import (
    AnnulusPresentation,
    BoundaryLinkKind,
    KnotKind,
    PresentationValidationError,
    TriState,
    validate,
)
from .verdicts import (
    Report,
    SymGroup,
    SymmetryBound,
    Verdict,
    VerdictState,
    MAPPING_CLASSES,
    proved,
    refuted,
    unknown,
)

SIDES = ("plus", "minus")


def _word_of(pres: AnnulusPresentation, side: str) -> Optional[Word]:
    return pres.w_l_plus if side == "plus" else pres.w_l_minus


def _homology_of(pres: AnnulusPresentation, side: str) -> LatticeVector:
    return pres.h_l_plus if side == "plus" else pres.h_l_minus


@dataclass(frozen=True)
class Evidence:
    """A tri-state answer plus the source that produced it."""

    value: TriState
    source: str = ""  # "word", "asserted", "homology", or "" when unknown

    def known(self) -> bool:
        return self.value is not TriState.UNKNOWN


def represents_p_power(pres: AnnulusPresentation, side: str, n: int) -> Evidence:
    """Whether the boundary curve represents an n-th power of some element."""
    word = _word_of(pres, side)
    if word is not None:
        has_root = nth_root(word, n) is not None
        return Evidence(TriState.TRUE if has_root else TriState.FALSE, "word")
    if n == abs(pres.p):
        fact = pres.fact(f"L_{side.upper()}_IS_P_POWER")
        if fact is not TriState.UNKNOWN:
            return Evidence(fact, "asserted")
    cls = divisibility_class(_homology_of(pres, side), n)
    if cls is DivisibilityClass.NOT_MULTIPLE:
        return Evidence(TriState.FALSE, "homology")
    return Evidence(TriState.UNKNOWN)


def represents_p_power_of_primitive(
    pres: AnnulusPresentation, side: str, n: int
) -> Evidence:
    """Whether the boundary curve represents an n-th power of a primitive element.

    The homology shortcut is the generator form: a power of a primitive
    abelianizes to n times a generator, so any other divisibility class
    refutes the shape.
    """
    word = _word_of(pres, side)
    if word is not None:
        value = TriState.TRUE if is_power_of_primitive(word, n) else TriState.FALSE
        return Evidence(value, "word")
    if n == abs(pres.p):
        fact = pres.fact(f"L_{side.upper()}_IS_P_POWER_OF_PRIMITIVE")
        if fact is not TriState.UNKNOWN:
            return Evidence(fact, "asserted")
        if pres.fact(f"L_{side.upper()}_IS_P_POWER") is TriState.FALSE:
            return Evidence(TriState.FALSE, "asserted")
    cls = divisibility_class(_homology_of(pres, side), n)
    if cls is not DivisibilityClass.MULTIPLE_OF_GENERATOR:
        return Evidence(TriState.FALSE, "homology")
    return Evidence(TriState.UNKNOWN)


def primitive_evidence(pres: AnnulusPresentation, side: str) -> Evidence:
    word = _word_of(pres, side)
    if word is not None:
        value = TriState.TRUE if is_primitive(word) else TriState.FALSE
        return Evidence(value, "word")
    fact = pres.fact(f"L_{side.upper()}_PRIMITIVE")
    if fact is not TriState.UNKNOWN:
        return Evidence(fact, "asserted")
    return Evidence(TriState.UNKNOWN)


def basis_evidence(pres: AnnulusPresentation, bound: int = 6) -> Evidence:
    """Whether the two boundary classes contain a basis pair."""
    if pres.w_l_plus is not None and pres.w_l_minus is not None:
        verdict = classes_contain_basis(pres.w_l_plus, pres.w_l_minus, bound)
        if verdict.state is VerdictState.PROVED:
            return Evidence(TriState.TRUE, "word")
        if verdict.state is VerdictState.REFUTED:
            return Evidence(TriState.FALSE, "word")
    fact = pres.fact("CLASSES_CONTAIN_BASIS")
    if fact is not TriState.UNKNOWN:
        return Evidence(fact, "asserted")
    return Evidence(TriState.UNKNOWN)


# ---------------------------------------------------------------------------
# Conditions on the boundary knot types


def _knot_refutes(desc, p: int, include_cable: bool) -> Optional[str]:
    """Reason string when the descriptor violates the condition, else None."""
    if desc.kind is KnotKind.TORUS and desc.m * desc.n == p:
        return f"({desc.m},{desc.n})-torus knot with mn = {p}"
    if include_cable and desc.kind is KnotKind.CABLE and desc.m * desc.n == p:
        return f"({desc.m},{desc.n})-cable knot with mn = {p}"
    return None


def check_condition_dagger(pres: AnnulusPresentation) -> tuple[Verdict, Verdict]:
    """Evaluate the torus-or-cable condition and the torus-only condition."""

    def evaluate(include_cable: bool, rule: str) -> Verdict:
        reasons = []
        for name, desc in (("l1", pres.l1), ("l2", pres.l2)):
            if desc is None:
                continue
            reason = _knot_refutes(desc, pres.p, include_cable)
            if reason is not None:
                reasons.append(f"{name} is a {reason}")
        if reasons:
            return refuted(rule, "; ".join(reasons))
        if pres.l1 is None or pres.l2 is None:
            return unknown("boundary knot descriptor missing")
        return proved(rule, f"l1 kind {pres.l1.kind.value}, l2 kind {pres.l2.kind.value}")

    dagger = evaluate(True, "rule:boundary-condition-torus-cable")
    double_dagger = evaluate(False, "rule:boundary-condition-torus")
    return dagger, double_dagger


# ---------------------------------------------------------------------------
# Irreducibility


def check_irreducible(pres: AnnulusPresentation) -> tuple[Verdict, Verdict]:
    """Irreducibility of the handlebody-knot and essentiality of the annulus.

    Every rule that proves irreducibility proves essentiality along the way,
    so the two verdicts share state and citation.  Never Refuted.
    """
    ext = pres.exterior
    n = abs(pres.p)
    attempts: list[str] = []
    verdict: Optional[Verdict] = None

    if ext.hk_a_trivial is TriState.FALSE and ext.hk_a_irreducible is TriState.TRUE:
        verdict = proved(
            "rule:irreducible-exterior",
            "attached exterior asserted irreducible and knotted",
        )
    elif ext.hk_a_trivial is TriState.TRUE:
        _, double_dagger = check_condition_dagger(pres)
        if n == 1:
            ev = basis_evidence(pres)
            if ev.value is TriState.FALSE:
                verdict = proved(
                    "rule:unknotted-exterior-basis-obstruction",
                    f"classes contain no basis pair (evidence={ev.source})",
                )
            else:
                attempts.append(
                    "basis obstruction: classes-contain-basis not refuted"
                )
        if verdict is None:
            if double_dagger.is_proved:
                ev_plus = represents_p_power_of_primitive(pres, "plus", n)
                ev_minus = represents_p_power_of_primitive(pres, "minus", n)
                if ev_plus.value is TriState.FALSE and ev_minus.value is TriState.FALSE:
                    verdict = proved(
                        "rule:unknotted-exterior-power-obstruction",
                        f"no |p|-th power of a primitive on either side "
                        f"(evidence plus={ev_plus.source}, minus={ev_minus.source})",
                    )
                else:
                    attempts.append(
                        "power obstruction: could not rule out |p|-th powers of "
                        "primitives on both sides"
                    )
            else:
                attempts.append(
                    "power obstruction: torus-free boundary condition not proved"
                )
        if verdict is None:
            verdict = _torus_boundary_route(pres, attempts)
    else:
        attempts.append(
            "attached exterior status insufficient: need irreducible+knotted "
            "or unknotted"
        )

    if verdict is None:
        verdict = unknown("; ".join(attempts))
    essential = (
        proved(verdict.citation, "essentiality concluded by the same rule")
        if verdict.is_proved
        else unknown(verdict.details)
    )
    return verdict, essential


def _torus_boundary_route(
    pres: AnnulusPresentation, attempts: list[str]
) -> Optional[Verdict]:
    l1, l2 = pres.l1, pres.l2
    if (
        l1 is None
        or l2 is None
        or l1.kind is not KnotKind.TORUS
        or l2.kind is not KnotKind.TORUS
        or (l1.m, l1.n) != (l2.m, l2.n)
        or l1.m * l1.n != pres.p
    ):
        attempts.append("torus-boundary route: boundary knots are not a matching "
                        "(m,n)-torus pair with mn = p")
        return None
    m, n = abs(l1.m), l1.n
    for side in SIDES:
        ev_n = represents_p_power_of_primitive(pres, side, n)
        ev_m = represents_p_power_of_primitive(pres, side, m)
        if ev_n.value is TriState.FALSE and ev_m.value is TriState.FALSE:
            return proved(
                "rule:unknotted-exterior-torus-boundary",
                f"l_{side} is neither an {n}-th nor an {m}-th power of a "
                f"primitive (evidence {ev_n.source}/{ev_m.source})",
            )
    attempts.append(
        "torus-boundary route: could not rule out torus-parameter powers on "
        "either side"
    )
    return None


# ---------------------------------------------------------------------------
# Atoroidality


def _boundary_link_certified_free(pres: AnnulusPresentation) -> Optional[str]:
    """Detail string when the boundary link cannot be the excluded torus link."""
    link = pres.boundary_link
    if link.kind is BoundaryLinkKind.UNKNOWN:
        return None
    if link.kind is BoundaryLinkKind.TORUS_LINK:
        m, n = link.two_m // 2, link.two_n // 2
        if abs(m) > 1 and n > 1 and m * n in (pres.p, -pres.p):
            return None
        return (
            f"boundary torus link ({link.two_m},{link.two_n}) does not meet "
            f"the exclusion |m|,n > 1 with mn = +-{pres.p}"
        )
    return f"boundary link kind {link.kind.value} is not a torus link"


def check_atoroidal(
    pres: AnnulusPresentation, irreducible: Verdict, essential: Verdict
) -> Verdict:
    """Atoroidality of the handlebody-knot.  Never Refuted."""
    ext = pres.exterior
    attempts = []
    if irreducible.is_proved and ext.hk_a_trivial is TriState.TRUE:
        return proved(
            "rule:atoroidal-unknotted-exterior",
            "irreducible with unknotted attached exterior",
        )
    attempts.append("unknotted-exterior route: needs irreducibility proved and "
                    "an unknotted attached exterior")
    if essential.is_proved and ext.hk_a_atoroidal is TriState.TRUE:
        free = _boundary_link_certified_free(pres)
        if free is not None:
            return proved("rule:atoroidal-boundary-link-exclusion", free)
        attempts.append("boundary-link route: the excluded torus link shape is "
                        "not ruled out")
    else:
        attempts.append("boundary-link route: needs essentiality proved and an "
                        "atoroidal attached exterior")
    return unknown("; ".join(attempts))


# ---------------------------------------------------------------------------
# Uniqueness


def check_unique_annulus(
    pres: AnnulusPresentation, irreducible: Verdict, atoroidal: Verdict
) -> Verdict:
    """Uniqueness of the annulus up to isotopy.  Never Refuted.

    All uniqueness rules presuppose an irreducible, atoroidal handlebody-knot,
    so anything less than Proved on those inputs yields Unknown immediately.
    """
    if not (irreducible.is_proved and atoroidal.is_proved):
        return unknown(
            "hypotheses not established: irreducibility and atoroidality must "
            "be proved first"
        )
    ext = pres.exterior
    n = abs(pres.p)
    attempts: list[str] = []
    dagger, double_dagger = check_condition_dagger(pres)

    if n == 1:
        if ext.hk_a_atoroidal is TriState.TRUE:
            if ext.hk_a_trivial is TriState.FALSE:
                return proved(
                    "rule:unique-slope-one-rigidity",
                    "slope +-1 with atoroidal knotted attached exterior",
                )
            ev = basis_evidence(pres)
            if ev.value is TriState.FALSE:
                return proved(
                    "rule:unique-slope-one-rigidity",
                    f"slope +-1, classes contain no basis pair (evidence={ev.source})",
                )
            attempts.append("rigidity: classes-contain-basis not refuted")
        else:
            attempts.append("rigidity: attached exterior not known atoroidal")

    if ext.hk_a_trivial is TriState.FALSE and ext.hk_a_irreducible is TriState.TRUE:
        if dagger.is_proved:
            if n == 1:
                return proved("rule:unique-irreducible-exterior", "slope +-1")
            ev_plus = represents_p_power(pres, "plus", n)
            ev_minus = represents_p_power(pres, "minus", n)
            if ev_plus.value is TriState.FALSE and ev_minus.value is TriState.FALSE:
                return proved(
                    "rule:unique-irreducible-exterior",
                    f"no boundary curve is a |p|-th power "
                    f"(evidence plus={ev_plus.source}, minus={ev_minus.source})",
                )
            attempts.append(
                "irreducible-exterior uniqueness: could not rule out |p|-th "
                "powers on both sides"
            )
        else:
            attempts.append(
                "irreducible-exterior uniqueness: torus/cable-free boundary "
                "condition not proved"
            )

    if ext.hk_a_trivial is TriState.TRUE and double_dagger.is_proved:
        if n == 1:
            return proved("rule:unique-unknotted-nonprimitive", "slope +-1")
        ev_plus = represents_p_power_of_primitive(pres, "plus", n)
        ev_minus = represents_p_power_of_primitive(pres, "minus", n)
        prim_plus = primitive_evidence(pres, "plus")
        prim_minus = primitive_evidence(pres, "minus")
        if (
            ev_plus.value is TriState.FALSE
            and ev_minus.value is TriState.FALSE
            and (prim_plus.value is TriState.FALSE or prim_minus.value is TriState.FALSE)
        ):
            witness = "plus" if prim_plus.value is TriState.FALSE else "minus"
            return proved(
                "rule:unique-unknotted-nonprimitive",
                f"no |p|-th power of a primitive on either side and l_{witness} "
                f"is not primitive (evidence plus={ev_plus.source}, "
                f"minus={ev_minus.source})",
            )
        attempts.append(
            "non-primitive uniqueness: power or primitivity hypotheses not "
            "established"
        )
        if n > 1 and pres.p % 2 != 0:
            cls_plus = divisibility_class(pres.h_l_plus, pres.p)
            cls_minus = divisibility_class(pres.h_l_minus, pres.p)
            if (
                cls_plus is not DivisibilityClass.MULTIPLE_OF_GENERATOR
                and cls_minus is not DivisibilityClass.MULTIPLE_OF_GENERATOR
            ):
                return proved(
                    "rule:unique-unknotted-odd-slope",
                    f"odd slope {pres.p}; neither class is a |p|-th multiple of "
                    f"a generator ({cls_plus.value}, {cls_minus.value})",
                )
            attempts.append(
                "odd-slope uniqueness: a boundary class is a |p|-th multiple "
                "of a generator"
            )
        else:
            attempts.append("odd-slope uniqueness: requires odd |p| > 1")
    elif ext.hk_a_trivial is TriState.TRUE:
        attempts.append(
            "unknotted-exterior uniqueness: torus-free boundary condition not "
            "proved"
        )
    return unknown("; ".join(attempts))


# ---------------------------------------------------------------------------
# Symmetry bounds


def symmetry_upper_bound(
    pres: AnnulusPresentation,
    unique: Verdict,
    lower: Optional[SymGroup] = None,
    lower_citation: Optional[str] = None,
) -> SymmetryBound:
    """Upper bound for the symmetry group, given the uniqueness verdict.

    The bound is maintained as the set of nontrivial annulus mapping classes
    still permitted: reverse both boundary orientations, swap the boundary
    curves, or both.  An asymmetric slope type and the one-relator quotient
    obstruction each exclude the two classes acting on the annulus by
    orientation-reversing maps; non-invertible boundary knots then exclude
    the last class.
    """
    if not unique.is_proved:
        chiral = unknown("chirality argument requires the unique annulus")
        return SymmetryBound(None, chiral, lower, lower_citation)
    chiral = proved(
        "rule:chirality-linking-number",
        f"boundary curves link {pres.p} != 0 times",
    )
    excluded: set[str] = set()
    notes: list[str] = ["rule:symmetry-annulus-embedding"]

    invariant, _ = normalize_vector(pres.h_l_plus)
    if not is_symmetric_type(slope_type(invariant)):
        excluded.update({"reverse-only", "swap-only"})
        notes.append("rule:symmetry-asymmetric-type")

    if pres.w_l_plus is not None and pres.w_l_minus is not None:
        q_plus = xayb_quotient_class(pres.w_l_plus)
        q_minus = xayb_quotient_class(pres.w_l_minus)
        if q_plus is not None and q_minus is not None and q_plus != q_minus:
            excluded.update({"reverse-only", "swap-only"})
            notes.append(
                f"rule:symmetry-swap-quotient-obstruction | {q_plus} vs {q_minus}"
            )

    if (
        "reverse-only" in excluded
        and "swap-only" in excluded
        and pres.l1 is not None
        and pres.l2 is not None
        and pres.l1.invertible is TriState.FALSE
        and pres.l2.invertible is TriState.FALSE
    ):
        excluded.update(MAPPING_CLASSES)
        notes.append("rule:symmetry-noninvertible-boundary")

    if not excluded:
        upper = SymGroup.Z2xZ2
    elif len(excluded) == len(MAPPING_CLASSES):
        upper = SymGroup.TRIVIAL
    else:
        upper = SymGroup.Z2
    ordered = tuple(c for c in MAPPING_CLASSES if c in excluded)
    return SymmetryBound(upper, chiral, lower, lower_citation, ordered, tuple(notes))


# ---------------------------------------------------------------------------
# Composition


def classify(
    pres: AnnulusPresentation,
    lower: Optional[SymGroup] = None,
    lower_citation: Optional[str] = None,
) -> Report:
    """Run every criterion in dependency order and assemble the report."""
    violations = validate(pres)
    if violations:
        raise PresentationValidationError(violations)
    dagger, double_dagger = check_condition_dagger(pres)
    irreducible, essential = check_irreducible(pres)
    atoroidal = check_atoroidal(pres, irreducible, essential)
    unique = check_unique_annulus(pres, irreducible, atoroidal)
    symmetry = symmetry_upper_bound(pres, unique, lower, lower_citation)
    invariant, n_used = normalize_vector(pres.h_l_plus)
    preferred = slope_type(invariant)
    return Report(
        label=pres.label,
        p=pres.p,
        slope_invariant=invariant,
        n_used=n_used,
        slope_type=preferred,
        symmetric_type=is_symmetric_type(preferred),
        verdicts={
            "condition_dagger": dagger,
            "condition_double_dagger": double_dagger,
            "essential": essential,
            "irreducible": irreducible,
            "atoroidal": atoroidal,
            "unique_annulus": unique,
            "chiral": symmetry.chiral,
        },
        symmetry=symmetry,
    )
