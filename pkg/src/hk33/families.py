"""Constructors for the three presentation families and their grid driver.

Each constructor emits a validated presentation together with family
metadata: an expected slope type and, where explicit isotopies are known,
a symmetry-group lower bound.  Lower bounds are metadata only; the verdict
engine never consumes them, they are merged with upper bounds in reports.

The T family carries explicit boundary words x1^((mu+1)/2) x2^((nu-1)/2) and
x1^((mu-1)/2) x2^((nu+1)/2).  The word pattern is stated in the source
construction only for the diagonal-offset subfamilies; the general form is
adopted because it abelianizes to the constructed homology classes and
specializes to both stated subfamilies.  Criteria consumed through words are
cross-checked against homology-only runs in the test suite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional

from .freegroup import word_from_syllables
from .lattice import LatticeVector, SlopeInvariant, normalize, slope_type
from .model import (
    AnnulusPresentation,
    BoundaryLinkDescriptor,
    BoundaryLinkKind,
    ExteriorStatus,
    KnotDescriptor,
    KnotKind,
    PresentationValidationError,
    TriState,
    validate,
)
from .verdicts import SymGroup


class FamilySpecError(ValueError):
    """Raised for malformed family specs or unknown predicate names."""


@dataclass(frozen=True)
class FamilyInstance:
    presentation: AnnulusPresentation
    expected_slope_type: SlopeInvariant
    known_lower_bound: Optional[SymGroup] = None
    lower_citation: Optional[str] = None

    @property
    def label(self) -> str:
        return self.presentation.label


def _finish(pres: AnnulusPresentation, lower, citation) -> FamilyInstance:
    violations = validate(pres)
    if violations:
        raise PresentationValidationError(violations)
    expected = slope_type(normalize(pres.h_l_plus.c1, pres.h_l_plus.c2)[0])
    return FamilyInstance(pres, expected, lower, citation)


def family_T(mu: int, nu: int) -> FamilyInstance:
    """Twisted annulus over a trivial knot; the attached exterior is unknotted."""
    if mu % 2 == 0 or nu % 2 == 0:
        raise ValueError("family T requires odd parameters")
    if mu + nu == 0:
        raise ValueError("family T requires mu + nu != 0 (non-trivial slope)")
    p = (mu + nu) // 2
    h_plus = LatticeVector((mu + 1) // 2, (nu - 1) // 2)
    h_minus = LatticeVector((mu - 1) // 2, (nu + 1) // 2)
    w_plus = word_from_syllables([(1, (mu + 1) // 2), (2, (nu - 1) // 2)])
    w_minus = word_from_syllables([(1, (mu - 1) // 2), (2, (nu + 1) // 2)])
    trivial_knot = KnotDescriptor(KnotKind.TRIVIAL, invertible=TriState.TRUE)
    pres = AnnulusPresentation(
        label=f"T:{mu},{nu}",
        p=p,
        h_l_plus=h_plus,
        h_l_minus=h_minus,
        w_l_plus=w_plus,
        w_l_minus=w_minus,
        l1=trivial_knot,
        l2=trivial_knot,
        # two parallel (p,1)-curves on a torus: a (2p,2)-torus link
        boundary_link=BoundaryLinkDescriptor(BoundaryLinkKind.TORUS_LINK, 2 * p, 2),
        exterior=ExteriorStatus(
            hk_a_trivial=TriState.TRUE,
            hk_a_irreducible=TriState.TRUE,
            hk_a_atoroidal=TriState.TRUE,
            provenance={
                "hk_a_trivial": "family:t-construction",
                "hk_a_irreducible": "family:t-construction",
                "hk_a_atoroidal": "family:t-construction",
            },
        ),
    )
    lower = citation = None
    if mu == nu and abs(mu) > 1:
        lower, citation = SymGroup.Z2xZ2, "rule:realized-symmetries-diagonal-family"
    elif _predicate_W(mu, nu):
        lower, citation = SymGroup.Z2, "rule:realized-symmetries-offdiagonal-family"
    elif _predicate_Vprime(mu, nu):
        lower, citation = SymGroup.Z2, "rule:realized-symmetries-slope-one-family"
    return _finish(pres, lower, citation)


def family_I(mu: int, nu: int) -> FamilyInstance:
    """Twisted annulus over the trefoil constituent of a spatial theta curve."""
    p = mu + nu + 3
    h_plus = LatticeVector(mu + 2, nu + 1)
    h_minus = LatticeVector(mu + 1, nu + 2)
    boundary = KnotDescriptor(
        KnotKind.OTHER, label="trefoil-pattern", invertible=TriState.TRUE
    )
    if p == 6:
        link = BoundaryLinkDescriptor(BoundaryLinkKind.TORUS_LINK, 6, 4)
    else:
        link = BoundaryLinkDescriptor(BoundaryLinkKind.OTHER)
    pres = AnnulusPresentation(
        label=f"I:{mu},{nu}",
        p=p,
        h_l_plus=h_plus,
        h_l_minus=h_minus,
        l1=boundary,
        l2=boundary,
        boundary_link=link,
        exterior=ExteriorStatus(
            hk_a_trivial=TriState.FALSE,
            hk_a_irreducible=TriState.TRUE,
            hk_a_atoroidal=TriState.TRUE,
            provenance={
                "hk_a_trivial": "family:i-construction",
                "hk_a_irreducible": "family:i-construction",
                "hk_a_atoroidal": "family:i-construction",
            },
        ),
    )
    return _finish(pres, None, None)


def family_U(mu: int, nu: int) -> FamilyInstance:
    """Twisted annulus over the non-invertible knot 8_16 with a tunnel."""
    if mu + nu == 0:
        raise ValueError("family U requires mu + nu != 0 (non-trivial slope)")
    p = mu + nu
    boundary = KnotDescriptor(KnotKind.OTHER, label="8_16", invertible=TriState.FALSE)
    pres = AnnulusPresentation(
        label=f"U:{mu},{nu}",
        p=p,
        h_l_plus=LatticeVector(mu, nu),
        h_l_minus=LatticeVector(mu - 1, nu + 1),
        l1=boundary,
        l2=boundary,
        boundary_link=BoundaryLinkDescriptor(BoundaryLinkKind.OTHER),
        exterior=ExteriorStatus(
            hk_a_trivial=TriState.FALSE,
            hk_a_irreducible=TriState.TRUE,
            hk_a_atoroidal=TriState.TRUE,
            provenance={
                "hk_a_trivial": "family:u-construction",
                "hk_a_irreducible": "family:u-construction",
                "hk_a_atoroidal": "family:u-construction",
            },
        ),
    )
    lower = citation = None
    if _predicate_U(mu, nu):
        lower, citation = SymGroup.TRIVIAL, "rule:no-symmetries-noninvertible-family"
    return _finish(pres, lower, citation)


def without_words(instance: FamilyInstance) -> FamilyInstance:
    """The same instance with word evidence withheld (homology only)."""
    stripped = replace(instance.presentation, w_l_plus=None, w_l_minus=None)
    return replace(instance, presentation=stripped)


# ---------------------------------------------------------------------------
# Membership predicates and the grid driver


def _odd(*values: int) -> bool:
    return all(v % 2 != 0 for v in values)


def _predicate_PT(mu: int, nu: int) -> bool:
    return _odd(mu, nu) and (mu >= nu > 1 or -1 > mu >= nu)


def _predicate_V(mu: int, nu: int) -> bool:
    return _odd(mu, nu) and mu == nu and abs(mu) > 1


def _predicate_W(mu: int, nu: int) -> bool:
    return _odd(mu, nu) and mu != nu and ((mu > 1 and nu > 1) or (mu < -1 and nu < -1))


def _predicate_Vprime(mu: int, nu: int) -> bool:
    return _odd(mu, nu) and nu == 2 - mu and mu < -1


def _predicate_PI(mu: int, nu: int) -> bool:
    return (mu >= nu > -1 or -2 > mu >= nu) and mu + nu + 3 != 6


def _predicate_U(mu: int, nu: int) -> bool:
    return mu > nu + 1 > 1 or 0 > mu > nu + 1


@dataclass(frozen=True)
class Predicate:
    name: str
    family: str
    test: Callable[[int, int], bool]
    complete: Optional[Callable[[int], int]] = None  # derive nu from mu


PREDICATES: dict[str, Predicate] = {
    "PT": Predicate("PT", "T", _predicate_PT),
    "V": Predicate("V", "T", _predicate_V, complete=lambda mu: mu),
    "W": Predicate("W", "T", _predicate_W),
    "VPRIME": Predicate("VPRIME", "T", _predicate_Vprime, complete=lambda mu: 2 - mu),
    "PI": Predicate("PI", "I", _predicate_PI),
    "U": Predicate("U", "U", _predicate_U),
}

CONSTRUCTORS: dict[str, Callable[[int, int], FamilyInstance]] = {
    "T": family_T,
    "I": family_I,
    "U": family_U,
}


def enumerate_family(
    family: str,
    mu_values: Iterable[int],
    nu_values: Optional[Iterable[int]] = None,
    predicate: Optional[str] = None,
) -> list[FamilyInstance]:
    """Instances over a parameter grid passing the named membership predicate.

    Deterministic order: ascending (mu, nu).  When the predicate determines
    nu from mu (diagonal and slope-one subfamilies), nu_values may be omitted.
    """
    if family not in CONSTRUCTORS:
        raise FamilySpecError(f"unknown family {family!r}")
    pred = None
    if predicate is not None:
        key = predicate.upper()
        if key not in PREDICATES:
            raise FamilySpecError(f"unknown predicate {predicate!r}")
        pred = PREDICATES[key]
        if pred.family != family:
            raise FamilySpecError(
                f"predicate {pred.name} applies to family {pred.family}, not {family}"
            )
    mus = sorted(set(mu_values))
    if nu_values is None:
        if pred is None or pred.complete is None:
            raise FamilySpecError("nu range required for this family/predicate")
        pairs = [(mu, pred.complete(mu)) for mu in mus]
    else:
        nus = sorted(set(nu_values))
        pairs = [(mu, nu) for mu in mus for nu in nus]
    out = []
    for mu, nu in pairs:
        if pred is not None and not pred.test(mu, nu):
            continue
        out.append(CONSTRUCTORS[family](mu, nu))
    return out


# ---------------------------------------------------------------------------
# Family spec mini-language: T:3,3  |  T:mu=3..15:2,nu=3..15:2,filter=PT

_RANGE_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)(?::(\d+))?$")


def parse_range(text: str) -> list[int]:
    """Inclusive integer range ``a..b[:step]``."""
    m = _RANGE_RE.fullmatch(text.strip())
    if m is None:
        raise FamilySpecError(f"bad range {text!r}; expected a..b[:step]")
    start, stop = int(m.group(1)), int(m.group(2))
    step = int(m.group(3)) if m.group(3) else 1
    if step <= 0:
        raise FamilySpecError("range step must be positive")
    if stop < start:
        raise FamilySpecError(f"empty range {text!r}")
    return list(range(start, stop + 1, step))


def parse_family_spec(spec: str) -> list[FamilyInstance]:
    """Parse ``F:a,b`` or ``F:mu=a..b[:s],nu=a..b[:s][,filter=NAME]``."""
    spec = spec.strip()
    if ":" not in spec:
        raise FamilySpecError(f"bad family spec {spec!r}")
    family, _, rest = spec.partition(":")
    family = family.strip().upper()
    if family not in CONSTRUCTORS:
        raise FamilySpecError(f"unknown family {family!r}")
    parts = [part.strip() for part in rest.split(",") if part.strip()]
    if not parts:
        raise FamilySpecError(f"bad family spec {spec!r}")
    if all("=" not in part for part in parts):
        if len(parts) != 2:
            raise FamilySpecError(f"expected two parameters in {spec!r}")
        try:
            mu, nu = int(parts[0]), int(parts[1])
        except ValueError:
            raise FamilySpecError(f"non-integer parameters in {spec!r}")
        try:
            return [CONSTRUCTORS[family](mu, nu)]
        except ValueError as exc:
            raise FamilySpecError(str(exc))
    mu_values = nu_values = None
    predicate = None
    for part in parts:
        if "=" not in part:
            raise FamilySpecError(f"bad spec component {part!r}")
        key, _, value = part.partition("=")
        key = key.strip()
        if key == "mu":
            mu_values = parse_range(value)
        elif key == "nu":
            nu_values = parse_range(value)
        elif key == "filter":
            predicate = value.strip()
        else:
            raise FamilySpecError(f"unknown spec component {key!r}")
    if mu_values is None:
        raise FamilySpecError("mu range required")
    try:
        return enumerate_family(family, mu_values, nu_values, predicate)
    except ValueError as exc:
        raise FamilySpecError(str(exc))
