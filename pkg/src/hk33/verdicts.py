"""Three-valued verdicts, the citable rule registry, and report containers.

Every Proved or Refuted verdict carries the identifier of the rule that
justified it; the identifiers form a closed vocabulary (RULES) so reports can
be audited mechanically.  Unknown verdicts carry no citation, only an account
of which criteria were attempted and why each failed to fire.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .lattice import SlopeInvariant


class VerdictState(Enum):
    PROVED = "proved"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


# Rules the verdict engine may cite.  Each entry is one sufficient condition
# (or an imported construction fact); the text states what firing it asserts.
RULES: dict[str, str] = {
    "rule:boundary-condition-torus-cable": (
        "the boundary knots are not (m,n)-torus or (m,n)-cable knots with mn "
        "equal to the boundary slope"
    ),
    "rule:boundary-condition-torus": (
        "the boundary knots are not (m,n)-torus knots with mn equal to the "
        "boundary slope"
    ),
    "rule:two-syllable-non-basis": (
        "two conjugacy classes with cyclic cores x1^a x2^b, all exponents "
        "nonzero and neither generator carrying exponent +-1 in both cores, "
        "contain no basis pair"
    ),
    "rule:basis-pair-witness": (
        "an explicit pair of class representatives passes the commutator "
        "basis test"
    ),
    "rule:irreducible-exterior": (
        "an irreducible, non-trivial attached exterior forces the annulus to "
        "be essential and the handlebody-knot to be irreducible"
    ),
    "rule:unknotted-exterior-basis-obstruction": (
        "slope +-1, unknotted attached exterior, and boundary-curve classes "
        "containing no basis pair force essentiality and irreducibility"
    ),
    "rule:unknotted-exterior-power-obstruction": (
        "unknotted attached exterior where neither boundary curve is a "
        "|p|-th power of a primitive element forces essentiality and "
        "irreducibility"
    ),
    "rule:unknotted-exterior-torus-boundary": (
        "unknotted attached exterior with (m,n)-torus boundary knots, "
        "mn = p, where one boundary curve is neither an n-th nor an |m|-th "
        "power of a primitive element, forces essentiality and irreducibility"
    ),
    "rule:atoroidal-unknotted-exterior": (
        "an irreducible handlebody-knot with unknotted attached exterior is "
        "atoroidal"
    ),
    "rule:atoroidal-boundary-link-exclusion": (
        "an essential annulus with atoroidal attached exterior whose boundary "
        "is not a (2m,2n)-torus link, |m|,n > 1, mn = +-p, forces atoroidality"
    ),
    "rule:unique-slope-one-rigidity": (
        "slope +-1 with atoroidal attached exterior (and, if unknotted, no "
        "basis pair in the boundary classes) forces the annulus to be unique"
    ),
    "rule:unique-irreducible-exterior": (
        "irreducible attached exterior, torus/cable-free boundary, and no "
        "boundary curve a |p|-th power force the annulus to be unique"
    ),
    "rule:unique-unknotted-nonprimitive": (
        "unknotted attached exterior, torus-free boundary, no boundary curve "
        "a |p|-th power of a primitive, and at least one boundary curve "
        "imprimitive force the annulus to be unique"
    ),
    "rule:unique-unknotted-odd-slope": (
        "unknotted attached exterior, torus-free boundary, odd |p| > 1, and "
        "neither boundary class a |p|-th multiple of a homology generator "
        "force the annulus to be unique"
    ),
    "rule:chirality-linking-number": (
        "the boundary curves link p != 0 times, so no orientation-reversing "
        "equivalence exists"
    ),
    "rule:symmetry-annulus-embedding": (
        "the symmetry group embeds into the mapping class group of the open "
        "annulus, bounding it by Z2 x Z2"
    ),
    "rule:symmetry-asymmetric-type": (
        "a slope type other than ((p+1)/2, (p-1)/2) rules out self-maps "
        "restricting to orientation-reversing maps of the annulus"
    ),
    "rule:symmetry-swap-quotient-obstruction": (
        "distinct one-relator quotient classes of the two boundary words "
        "rule out self-maps swapping the two sides of the annulus"
    ),
    "rule:symmetry-noninvertible-boundary": (
        "asymmetric slope type with non-invertible boundary knots leaves "
        "only the identity symmetry"
    ),
    "rule:realized-symmetries-diagonal-family": (
        "explicit isotopies of the diagonal odd family realize Z2 x Z2"
    ),
    "rule:realized-symmetries-offdiagonal-family": (
        "an explicit isotopy of the off-diagonal odd family realizes Z2"
    ),
    "rule:realized-symmetries-slope-one-family": (
        "an explicit isotopy of the slope-one family realizes Z2"
    ),
    "rule:no-symmetries-noninvertible-family": (
        "the non-invertible boundary family has trivial symmetry group"
    ),
    "family:t-construction": (
        "twisted annulus over a trivial knot with an unknotting tunnel; the "
        "attached exterior is unknotted"
    ),
    "family:i-construction": (
        "twisted annulus over the trefoil constituent of a spatial theta "
        "curve; the attached exterior is irreducible and atoroidal"
    ),
    "family:u-construction": (
        "twisted annulus over the non-invertible knot 8_16 with a tunnel; "
        "the attached exterior is irreducible and atoroidal"
    ),
    "fixture:catalog": (
        "hand-encoded presentation shipped with the package; field values "
        "imported from the construction it describes"
    ),
}


@dataclass(frozen=True)
class Verdict:
    state: VerdictState
    citation: Optional[str] = None
    details: str = ""

    def __post_init__(self) -> None:
        if self.state is VerdictState.UNKNOWN:
            if self.citation is not None:
                raise ValueError("unknown verdicts carry no citation")
        else:
            if self.citation not in RULES:
                raise ValueError(f"unregistered citation: {self.citation!r}")

    @property
    def is_proved(self) -> bool:
        return self.state is VerdictState.PROVED


def proved(citation: str, details: str = "") -> Verdict:
    return Verdict(VerdictState.PROVED, citation, details)


def refuted(citation: str, details: str = "") -> Verdict:
    return Verdict(VerdictState.REFUTED, citation, details)


def unknown(details: str = "") -> Verdict:
    return Verdict(VerdictState.UNKNOWN, None, details)


class SymGroup(Enum):
    TRIVIAL = "trivial"
    Z2 = "Z2"
    Z2xZ2 = "Z2xZ2"

    @property
    def order(self) -> int:
        return {"trivial": 1, "Z2": 2, "Z2xZ2": 4}[self.value]


def group_leq(a: SymGroup, b: SymGroup) -> bool:
    """Subgroup order on the three possible bounds."""
    return a.order <= b.order


# Nontrivial mapping classes of the open annulus, named by their action on
# the boundary data: reverse both curve orientations, swap the two curves,
# or do both at once.
MAPPING_CLASSES = ("reverse-only", "swap-only", "swap-reverse")


@dataclass(frozen=True)
class SymmetryBound:
    """Upper bound for the symmetry group, with optional known lower bound.

    ``excluded_classes`` lists the nontrivial annulus mapping classes ruled
    out; ``notes`` records the rule identifiers that did the excluding.  The
    upper bound is absent when the unique-annulus hypothesis is not
    established.
    """

    upper: Optional[SymGroup]
    chiral: Verdict
    lower: Optional[SymGroup] = None
    lower_citation: Optional[str] = None
    excluded_classes: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for cls in self.excluded_classes:
            if cls not in MAPPING_CLASSES:
                raise ValueError(f"unknown mapping class {cls!r}")
        if self.lower is not None and self.lower_citation not in RULES:
            raise ValueError("lower bounds require a registered citation")
        if self.lower is not None and self.upper is not None:
            if not group_leq(self.lower, self.upper):
                raise ValueError(
                    f"lower bound {self.lower.value} exceeds upper {self.upper.value}"
                )

    @property
    def exact(self) -> Optional[SymGroup]:
        if self.upper is not None and self.lower == self.upper:
            return self.upper
        return None


VERDICT_KEYS = (
    "condition_dagger",
    "condition_double_dagger",
    "essential",
    "irreducible",
    "atoroidal",
    "unique_annulus",
    "chiral",
)


@dataclass(frozen=True)
class Report:
    """Full classification output for one presentation."""

    label: str
    p: int
    slope_invariant: SlopeInvariant
    n_used: int
    slope_type: SlopeInvariant
    symmetric_type: bool
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    symmetry: SymmetryBound = field(
        default_factory=lambda: SymmetryBound(None, unknown())
    )

    def __post_init__(self) -> None:
        if tuple(self.verdicts.keys()) != VERDICT_KEYS:
            raise ValueError(f"verdict keys must be exactly {VERDICT_KEYS}")
        uniq = self.verdicts["unique_annulus"]
        if uniq.state is VerdictState.PROVED:
            if not (
                self.verdicts["irreducible"].is_proved
                and self.verdicts["atoroidal"].is_proved
            ):
                raise ValueError(
                    "unique annulus proved without irreducibility and atoroidality"
                )
