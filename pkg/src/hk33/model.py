"""Presentation data model, validation, and bit-exact JSON serialization.

Input documents follow the schema ``annulus-presentation/1``; classification
output follows ``annulus-report/1``.  Serialization is deterministic: sorted
keys, two-space indent, UTF-8, LF line endings, one trailing newline.
Loading is strict: unknown fields, missing fields and bad enum values raise
``SchemaError`` with the offending field path, while structural invariant
failures raise ``PresentationValidationError`` listing every violation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Optional

from .freegroup import Word, WordSyntaxError, abelianize, parse_word
from .lattice import LatticeVector, SlopeInvariant
from .verdicts import (
    RULES,
    Report,
    SymGroup,
    SymmetryBound,
    Verdict,
    VERDICT_KEYS,
    VerdictState,
)

PRESENTATION_SCHEMA = "annulus-presentation/1"
REPORT_SCHEMA = "annulus-report/1"


class SchemaError(ValueError):
    """A document does not conform to the schema; ``path`` names the field."""

    def __init__(self, path: str, message: str) -> None:
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class PresentationValidationError(ValueError):
    """A well-formed document violates presentation invariants."""

    def __init__(self, violations: list[str]) -> None:
        self.violations = violations
        super().__init__("; ".join(violations))


class TriState(Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


class KnotKind(Enum):
    TRIVIAL = "trivial"
    TORUS = "torus"
    CABLE = "cable"
    OTHER = "other"


@dataclass(frozen=True)
class KnotDescriptor:
    """Symbolic knot type of one boundary curve of the annulus."""

    kind: KnotKind
    m: Optional[int] = None
    n: Optional[int] = None
    companion_label: Optional[str] = None
    label: Optional[str] = None
    invertible: TriState = TriState.UNKNOWN


class BoundaryLinkKind(Enum):
    TORUS_LINK = "torus_link"
    CABLE_LINK = "cable_link"
    OTHER = "other"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class BoundaryLinkDescriptor:
    """Link type of the full annulus boundary; torus/cable parameters are even."""

    kind: BoundaryLinkKind
    two_m: Optional[int] = None
    two_n: Optional[int] = None
    companion_label: Optional[str] = None


@dataclass(frozen=True)
class ExteriorStatus:
    """Asserted topology of the attached exterior, with per-fact provenance."""

    hk_a_trivial: TriState = TriState.UNKNOWN
    hk_a_irreducible: TriState = TriState.UNKNOWN
    hk_a_atoroidal: TriState = TriState.UNKNOWN
    provenance: Mapping[str, str] = field(default_factory=dict)


ASSERTED_FACT_KEYS = (
    "L_PLUS_IS_P_POWER",
    "L_MINUS_IS_P_POWER",
    "L_PLUS_IS_P_POWER_OF_PRIMITIVE",
    "L_MINUS_IS_P_POWER_OF_PRIMITIVE",
    "L_PLUS_PRIMITIVE",
    "L_MINUS_PRIMITIVE",
    "CLASSES_CONTAIN_BASIS",
)


@dataclass(frozen=True)
class AssertedFact:
    value: TriState
    provenance: str = ""


@dataclass(frozen=True)
class AnnulusPresentation:
    """Full symbolic input describing one annulus in a handlebody-knot exterior."""

    label: str
    p: int
    h_l_plus: LatticeVector
    h_l_minus: LatticeVector
    w_l_plus: Optional[Word] = None
    w_l_minus: Optional[Word] = None
    l1: Optional[KnotDescriptor] = None
    l2: Optional[KnotDescriptor] = None
    boundary_link: BoundaryLinkDescriptor = BoundaryLinkDescriptor(
        BoundaryLinkKind.UNKNOWN
    )
    exterior: ExteriorStatus = ExteriorStatus()
    asserted_facts: Mapping[str, AssertedFact] = field(default_factory=dict)

    def fact(self, key: str) -> TriState:
        entry = self.asserted_facts.get(key)
        return entry.value if entry is not None else TriState.UNKNOWN


def _validate_knot(desc: Optional[KnotDescriptor], name: str, out: list[str]) -> None:
    if desc is None:
        return
    if desc.kind in (KnotKind.TORUS, KnotKind.CABLE):
        if desc.m is None or desc.n is None:
            out.append(f"{name}: torus/cable descriptors require parameters m, n")
            return
        if abs(desc.m) < 2 or desc.n < 2:
            out.append(
                f"{name}: torus/cable parameters require |m| >= 2 and n >= 2, "
                f"got ({desc.m}, {desc.n})"
            )
    if desc.kind is KnotKind.CABLE and not desc.companion_label:
        out.append(f"{name}: cable descriptors require a companion label")


def _validate_boundary_link(link: BoundaryLinkDescriptor, out: list[str]) -> None:
    if link.kind in (BoundaryLinkKind.TORUS_LINK, BoundaryLinkKind.CABLE_LINK):
        if link.two_m is None or link.two_n is None:
            out.append("boundary_link: torus/cable links require parameters")
            return
        if link.two_m % 2 != 0 or link.two_n % 2 != 0:
            out.append(
                "boundary_link: torus/cable link parameters must be even, "
                f"got ({link.two_m}, {link.two_n})"
            )


def validate(pres: AnnulusPresentation) -> list[str]:
    """All invariant violations; empty exactly when the presentation is valid."""
    out: list[str] = []
    if pres.p == 0:
        out.append("non-trivial boundary slope required (p = 0)")
    offset = pres.h_l_plus - pres.h_l_minus
    if offset.as_tuple() != (1, -1):
        out.append(
            "orientation offset violated: h_l_plus - h_l_minus must be (1, -1), "
            f"got {offset.as_tuple()}"
        )
    if pres.h_l_plus.c1 + pres.h_l_plus.c2 != pres.p:
        out.append(
            "boundary slope mismatch: coordinates of h_l_plus must sum to p = "
            f"{pres.p}, got {pres.h_l_plus.as_tuple()}"
        )
    if pres.h_l_plus.is_zero() or pres.h_l_minus.is_zero():
        out.append("boundary classes must be nonzero in homology")
    if pres.h_l_plus in (pres.h_l_minus, -pres.h_l_minus):
        out.append("boundary classes must satisfy h_l_plus != +-h_l_minus")
    for word, vec, name in (
        (pres.w_l_plus, pres.h_l_plus, "w_l_plus"),
        (pres.w_l_minus, pres.h_l_minus, "w_l_minus"),
    ):
        if word is not None and abelianize(word) != vec:
            out.append(
                f"abelianization mismatch: {name} abelianizes to "
                f"{abelianize(word).as_tuple()}, homology says {vec.as_tuple()}"
            )
    _validate_knot(pres.l1, "l1", out)
    _validate_knot(pres.l2, "l2", out)
    _validate_boundary_link(pres.boundary_link, out)
    ext = pres.exterior
    if ext.hk_a_trivial is TriState.TRUE and ext.hk_a_irreducible is not TriState.TRUE:
        out.append(
            "exterior status inconsistent: an unknotted attached exterior must "
            "carry hk_a_irreducible = true"
        )
    for key in pres.asserted_facts:
        if key not in ASSERTED_FACT_KEYS:
            out.append(f"unknown asserted fact {key!r}")
    for side in ("PLUS", "MINUS"):
        power = pres.fact(f"L_{side}_IS_P_POWER")
        power_prim = pres.fact(f"L_{side}_IS_P_POWER_OF_PRIMITIVE")
        if power is TriState.FALSE and power_prim is TriState.TRUE:
            out.append(
                f"asserted facts inconsistent: L_{side}_IS_P_POWER_OF_PRIMITIVE "
                "= true requires L_PLUS/MINUS_IS_P_POWER != false"
            )
    return out


# ---------------------------------------------------------------------------
# Strict document loading


def _expect_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(path, f"expected an object, got {type(value).__name__}")
    return value


def _expect_string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(path, f"expected a string, got {type(value).__name__}")
    return value


def _expect_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, f"expected an integer, got {type(value).__name__}")
    return value


def _expect_fields(obj: dict, path: str, required: set[str], optional: set[str]) -> None:
    for key in obj:
        if key not in required and key not in optional:
            raise SchemaError(f"{path}.{key}" if path else key, "unknown field")
    for key in required:
        if key not in obj:
            raise SchemaError(f"{path}.{key}" if path else key, "missing required field")


def _parse_enum(value: Any, enum_type: type[Enum], path: str) -> Enum:
    text = _expect_string(value, path)
    try:
        return enum_type(text)
    except ValueError:
        allowed = ", ".join(e.value for e in enum_type)
        raise SchemaError(path, f"unknown value {text!r}; expected one of: {allowed}")


def _parse_tri(value: Any, path: str) -> TriState:
    return _parse_enum(value, TriState, path)  # type: ignore[return-value]


def _parse_vector(value: Any, path: str) -> LatticeVector:
    if not isinstance(value, list) or len(value) != 2:
        raise SchemaError(path, "expected a pair of integers")
    return LatticeVector(_expect_int(value[0], f"{path}[0]"), _expect_int(value[1], f"{path}[1]"))


def _parse_word_field(value: Any, path: str) -> Optional[Word]:
    if value is None:
        return None
    text = _expect_string(value, path)
    try:
        return parse_word(text)
    except WordSyntaxError as exc:
        raise SchemaError(path, str(exc))


def _parse_knot(value: Any, path: str) -> Optional[KnotDescriptor]:
    if value is None:
        return None
    obj = _expect_object(value, path)
    _expect_fields(
        obj, path, {"kind"}, {"m", "n", "companion_label", "label", "invertible"}
    )
    kind = _parse_enum(obj["kind"], KnotKind, f"{path}.kind")
    m = _expect_int(obj["m"], f"{path}.m") if obj.get("m") is not None else None
    n = _expect_int(obj["n"], f"{path}.n") if obj.get("n") is not None else None
    companion = (
        _expect_string(obj["companion_label"], f"{path}.companion_label")
        if obj.get("companion_label") is not None
        else None
    )
    label = (
        _expect_string(obj["label"], f"{path}.label")
        if obj.get("label") is not None
        else None
    )
    invertible = (
        _parse_tri(obj["invertible"], f"{path}.invertible")
        if "invertible" in obj
        else TriState.UNKNOWN
    )
    return KnotDescriptor(kind, m, n, companion, label, invertible)  # type: ignore[arg-type]


def _parse_boundary_link(value: Any, path: str) -> BoundaryLinkDescriptor:
    obj = _expect_object(value, path)
    _expect_fields(obj, path, {"kind"}, {"parameters", "companion_label"})
    kind = _parse_enum(obj["kind"], BoundaryLinkKind, f"{path}.kind")
    two_m = two_n = None
    if obj.get("parameters") is not None:
        params = obj["parameters"]
        if not isinstance(params, list) or len(params) != 2:
            raise SchemaError(f"{path}.parameters", "expected a pair of integers")
        two_m = _expect_int(params[0], f"{path}.parameters[0]")
        two_n = _expect_int(params[1], f"{path}.parameters[1]")
    companion = (
        _expect_string(obj["companion_label"], f"{path}.companion_label")
        if obj.get("companion_label") is not None
        else None
    )
    return BoundaryLinkDescriptor(kind, two_m, two_n, companion)  # type: ignore[arg-type]


def _parse_exterior(value: Any, path: str) -> ExteriorStatus:
    obj = _expect_object(value, path)
    _expect_fields(
        obj,
        path,
        set(),
        {"hk_a_trivial", "hk_a_irreducible", "hk_a_atoroidal", "provenance"},
    )
    provenance: dict[str, str] = {}
    if "provenance" in obj:
        prov_obj = _expect_object(obj["provenance"], f"{path}.provenance")
        for key, text in prov_obj.items():
            provenance[key] = _expect_string(text, f"{path}.provenance.{key}")

    def tri(name: str) -> TriState:
        if name in obj:
            return _parse_tri(obj[name], f"{path}.{name}")
        return TriState.UNKNOWN

    return ExteriorStatus(
        tri("hk_a_trivial"), tri("hk_a_irreducible"), tri("hk_a_atoroidal"), provenance
    )


def _parse_facts(value: Any, path: str) -> dict[str, AssertedFact]:
    obj = _expect_object(value, path)
    facts: dict[str, AssertedFact] = {}
    for key, entry in obj.items():
        if key not in ASSERTED_FACT_KEYS:
            raise SchemaError(
                f"{path}.{key}",
                f"unknown fact; expected one of: {', '.join(ASSERTED_FACT_KEYS)}",
            )
        entry_obj = _expect_object(entry, f"{path}.{key}")
        _expect_fields(entry_obj, f"{path}.{key}", {"value"}, {"provenance"})
        facts[key] = AssertedFact(
            _parse_tri(entry_obj["value"], f"{path}.{key}.value"),
            _expect_string(entry_obj.get("provenance", ""), f"{path}.{key}.provenance"),
        )
    return facts


def presentation_from_payload(payload: Any) -> AnnulusPresentation:
    """Build and validate a presentation from decoded JSON."""
    obj = _expect_object(payload, "$")
    _expect_fields(
        obj,
        "",
        {"schema", "label", "p", "h_l_plus", "h_l_minus", "boundary_link", "exterior"},
        {"w_l_plus", "w_l_minus", "l1", "l2", "asserted_facts"},
    )
    schema = _expect_string(obj["schema"], "schema")
    if schema != PRESENTATION_SCHEMA:
        raise SchemaError("schema", f"expected {PRESENTATION_SCHEMA!r}, got {schema!r}")
    pres = AnnulusPresentation(
        label=_expect_string(obj["label"], "label"),
        p=_expect_int(obj["p"], "p"),
        h_l_plus=_parse_vector(obj["h_l_plus"], "h_l_plus"),
        h_l_minus=_parse_vector(obj["h_l_minus"], "h_l_minus"),
        w_l_plus=_parse_word_field(obj.get("w_l_plus"), "w_l_plus"),
        w_l_minus=_parse_word_field(obj.get("w_l_minus"), "w_l_minus"),
        l1=_parse_knot(obj.get("l1"), "l1"),
        l2=_parse_knot(obj.get("l2"), "l2"),
        boundary_link=_parse_boundary_link(obj["boundary_link"], "boundary_link"),
        exterior=_parse_exterior(obj["exterior"], "exterior"),
        asserted_facts=_parse_facts(obj.get("asserted_facts", {}), "asserted_facts"),
    )
    violations = validate(pres)
    if violations:
        raise PresentationValidationError(violations)
    return pres


def load_presentation(text: str) -> AnnulusPresentation:
    """Parse and validate a presentation document from JSON text."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}")
    return presentation_from_payload(payload)


# ---------------------------------------------------------------------------
# Canonical serialization


def canonical_json(payload: Any) -> str:
    """Deterministic JSON text: sorted keys, LF, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _knot_payload(desc: Optional[KnotDescriptor]) -> Optional[dict]:
    if desc is None:
        return None
    out: dict[str, Any] = {"kind": desc.kind.value, "invertible": desc.invertible.value}
    if desc.m is not None:
        out["m"] = desc.m
    if desc.n is not None:
        out["n"] = desc.n
    if desc.companion_label is not None:
        out["companion_label"] = desc.companion_label
    if desc.label is not None:
        out["label"] = desc.label
    return out


def presentation_payload(pres: AnnulusPresentation) -> dict:
    link: dict[str, Any] = {"kind": pres.boundary_link.kind.value}
    if pres.boundary_link.two_m is not None:
        link["parameters"] = [pres.boundary_link.two_m, pres.boundary_link.two_n]
    if pres.boundary_link.companion_label is not None:
        link["companion_label"] = pres.boundary_link.companion_label
    return {
        "schema": PRESENTATION_SCHEMA,
        "label": pres.label,
        "p": pres.p,
        "h_l_plus": list(pres.h_l_plus.as_tuple()),
        "h_l_minus": list(pres.h_l_minus.as_tuple()),
        "w_l_plus": None if pres.w_l_plus is None else str(pres.w_l_plus),
        "w_l_minus": None if pres.w_l_minus is None else str(pres.w_l_minus),
        "l1": _knot_payload(pres.l1),
        "l2": _knot_payload(pres.l2),
        "boundary_link": link,
        "exterior": {
            "hk_a_trivial": pres.exterior.hk_a_trivial.value,
            "hk_a_irreducible": pres.exterior.hk_a_irreducible.value,
            "hk_a_atoroidal": pres.exterior.hk_a_atoroidal.value,
            "provenance": dict(pres.exterior.provenance),
        },
        "asserted_facts": {
            key: {"value": fact.value.value, "provenance": fact.provenance}
            for key, fact in pres.asserted_facts.items()
        },
    }


def save_presentation(pres: AnnulusPresentation) -> str:
    return canonical_json(presentation_payload(pres))


def _verdict_payload(v: Verdict) -> dict:
    return {"verdict": v.state.value, "citation": v.citation, "details": v.details}


def report_payload(report: Report) -> dict:
    sym = report.symmetry
    return {
        "schema": REPORT_SCHEMA,
        "label": report.label,
        "p": report.p,
        "slope": {
            "invariant": list(report.slope_invariant.as_pair()),
            "n_used": report.n_used,
            "type": list(report.slope_type.as_pair()),
            "symmetric_type": report.symmetric_type,
        },
        "verdicts": {key: _verdict_payload(v) for key, v in report.verdicts.items()},
        "symmetry": {
            "upper": None if sym.upper is None else sym.upper.value,
            "lower": None if sym.lower is None else sym.lower.value,
            "lower_citation": sym.lower_citation,
            "exact": None if sym.exact is None else sym.exact.value,
            "excluded_classes": list(sym.excluded_classes),
            "notes": list(sym.notes),
        },
    }


def save_report(report: Report) -> str:
    return canonical_json(report_payload(report))


def _parse_verdict(value: Any, path: str) -> Verdict:
    obj = _expect_object(value, path)
    _expect_fields(obj, path, {"verdict"}, {"citation", "details"})
    state = _parse_enum(obj["verdict"], VerdictState, f"{path}.verdict")
    citation = obj.get("citation")
    if citation is not None:
        citation = _expect_string(citation, f"{path}.citation")
        if citation not in RULES:
            raise SchemaError(f"{path}.citation", f"unregistered citation {citation!r}")
    details = _expect_string(obj.get("details", ""), f"{path}.details")
    return Verdict(state, citation, details)  # type: ignore[arg-type]


def _parse_group(value: Any, path: str) -> Optional[SymGroup]:
    if value is None:
        return None
    return _parse_enum(value, SymGroup, path)  # type: ignore[return-value]


def _parse_slope(value: Any, path: str, p: int) -> SlopeInvariant:
    if not isinstance(value, list) or len(value) != 2:
        raise SchemaError(path, "expected a pair of integers")
    return SlopeInvariant(
        _expect_int(value[0], f"{path}[0]"), _expect_int(value[1], f"{path}[1]"), p
    )


def report_from_payload(payload: Any) -> Report:
    obj = _expect_object(payload, "$")
    _expect_fields(
        obj, "", {"schema", "label", "p", "slope", "verdicts", "symmetry"}, set()
    )
    schema = _expect_string(obj["schema"], "schema")
    if schema != REPORT_SCHEMA:
        raise SchemaError("schema", f"expected {REPORT_SCHEMA!r}, got {schema!r}")
    p = _expect_int(obj["p"], "p")
    slope_obj = _expect_object(obj["slope"], "slope")
    _expect_fields(slope_obj, "slope", {"invariant", "n_used", "type", "symmetric_type"}, set())
    verdict_obj = _expect_object(obj["verdicts"], "verdicts")
    _expect_fields(verdict_obj, "verdicts", set(VERDICT_KEYS), set())
    verdicts = {key: _parse_verdict(verdict_obj[key], f"verdicts.{key}") for key in VERDICT_KEYS}
    sym_obj = _expect_object(obj["symmetry"], "symmetry")
    _expect_fields(
        sym_obj,
        "symmetry",
        {"upper", "lower", "lower_citation", "exact", "excluded_classes", "notes"},
        set(),
    )
    symmetry = SymmetryBound(
        upper=_parse_group(sym_obj["upper"], "symmetry.upper"),
        chiral=verdicts["chiral"],
        lower=_parse_group(sym_obj["lower"], "symmetry.lower"),
        lower_citation=sym_obj["lower_citation"],
        excluded_classes=tuple(sym_obj["excluded_classes"]),
        notes=tuple(sym_obj["notes"]),
    )
    return Report(
        label=_expect_string(obj["label"], "label"),
        p=p,
        slope_invariant=_parse_slope(slope_obj["invariant"], "slope.invariant", p),
        n_used=_expect_int(slope_obj["n_used"], "slope.n_used"),
        slope_type=_parse_slope(slope_obj["type"], "slope.type", p),
        symmetric_type=bool(slope_obj["symmetric_type"]),
        verdicts=verdicts,
        symmetry=symmetry,
    )


def load_report(text: str) -> Report:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}")
    return report_from_payload(payload)
