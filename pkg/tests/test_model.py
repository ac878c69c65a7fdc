import dataclasses
import json
import random
from importlib import resources

import pytest

from conftest import random_report
from hk33.families import family_T
from hk33.lattice import LatticeVector
from hk33.model import (
    AnnulusPresentation,
    AssertedFact,
    BoundaryLinkDescriptor,
    BoundaryLinkKind,
    ExteriorStatus,
    KnotDescriptor,
    KnotKind,
    PresentationValidationError,
    SchemaError,
    TriState,
    canonical_json,
    load_presentation,
    load_report,
    presentation_payload,
    save_presentation,
    save_report,
    validate,
)
from hk33.criteria import classify

FIXTURES = [
    "diagonal_three.json",
    "reducible_torus_boundary.json",
    "two_annuli_torus_boundary.json",
    "two_annuli_cable_boundary.json",
    "two_annuli_slope_two.json",
]


def fixture_text(name: str) -> str:
    return resources.files("hk33").joinpath("fixtures", name).read_text("utf-8")


@pytest.fixture
def base() -> AnnulusPresentation:
    return family_T(3, 3).presentation


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_load_and_round_trip(name):
    pres = load_presentation(fixture_text(name))
    assert validate(pres) == []
    assert load_presentation(save_presentation(pres)) == pres


def test_fixture_files_are_canonical():
    for name in FIXTURES:
        text = fixture_text(name)
        assert text == save_presentation(load_presentation(text)), name


def test_presentation_round_trip(base):
    assert load_presentation(save_presentation(base)) == base


def test_report_round_trip_on_fixtures(base):
    report = classify(base)
    assert load_report(save_report(report)) == report


def test_report_round_trip_random_200():
    rng = random.Random(0)
    for i in range(200):
        report = random_report(rng, i)
        assert load_report(save_report(report)) == report


def test_canonical_json_format():
    text = canonical_json({"b": 1, "a": [1, 2]})
    assert text.endswith("\n") and not text.endswith("\n\n")
    assert "\r" not in text
    assert text.index('"a"') < text.index('"b"')


def test_save_presentation_deterministic(base):
    assert save_presentation(base) == save_presentation(base)


# ---------------------------------------------------------------------------
# Mutation testing for validate: each broken invariant is reported


def test_validate_rejects_zero_slope(base):
    broken = dataclasses.replace(
        base, p=0, h_l_plus=LatticeVector(1, -1), h_l_minus=LatticeVector(0, 0)
    )
    messages = " ".join(validate(broken))
    assert "non-trivial boundary slope" in messages


def test_validate_rejects_bad_offset(base):
    broken = dataclasses.replace(base, h_l_minus=base.h_l_plus)
    assert any("orientation offset" in v for v in validate(broken))


def test_validate_rejects_bad_sum(base):
    broken = dataclasses.replace(base, p=4)
    assert any("sum to p" in v for v in validate(broken))


def test_validate_rejects_word_homology_mismatch(base):
    from hk33.freegroup import parse_word

    broken = dataclasses.replace(base, w_l_plus=parse_word("x1"))
    assert any("abelianization mismatch" in v for v in validate(broken))


def test_validate_rejects_zero_class():
    pres = AnnulusPresentation(
        label="broken",
        p=1,
        h_l_plus=LatticeVector(1, 0),
        h_l_minus=LatticeVector(0, 0),
    )
    assert any("nonzero" in v for v in validate(pres))


def test_validate_rejects_equal_classes_up_to_sign():
    pres = AnnulusPresentation(
        label="broken",
        p=0,
        h_l_plus=LatticeVector(1, -1),
        h_l_minus=LatticeVector(-1, 1),
    )
    assert any("+-h_l_minus" in v for v in validate(pres))


def test_validate_rejects_bad_torus_parameters(base):
    broken = dataclasses.replace(
        base, l1=KnotDescriptor(KnotKind.TORUS, 1, 2), l2=base.l2
    )
    assert any("|m| >= 2" in v for v in validate(broken))
    missing = dataclasses.replace(base, l1=KnotDescriptor(KnotKind.TORUS))
    assert any("require parameters" in v for v in validate(missing))


def test_validate_rejects_cable_without_companion(base):
    broken = dataclasses.replace(base, l1=KnotDescriptor(KnotKind.CABLE, 5, 2))
    assert any("companion label" in v for v in validate(broken))


def test_validate_rejects_odd_boundary_link_parameters(base):
    broken = dataclasses.replace(
        base, boundary_link=BoundaryLinkDescriptor(BoundaryLinkKind.TORUS_LINK, 3, 4)
    )
    assert any("must be even" in v for v in validate(broken))


def test_validate_rejects_trivial_without_irreducible(base):
    broken = dataclasses.replace(
        base,
        exterior=ExteriorStatus(
            hk_a_trivial=TriState.TRUE,
            hk_a_irreducible=TriState.FALSE,
            hk_a_atoroidal=TriState.TRUE,
        ),
    )
    assert any("must carry hk_a_irreducible = true" in v for v in validate(broken))


def test_validate_rejects_unknown_fact_key(base):
    broken = dataclasses.replace(
        base, asserted_facts={"NOT_A_FACT": AssertedFact(TriState.TRUE)}
    )
    assert any("unknown asserted fact" in v for v in validate(broken))


def test_validate_rejects_contradictory_power_facts(base):
    broken = dataclasses.replace(
        base,
        asserted_facts={
            "L_PLUS_IS_P_POWER": AssertedFact(TriState.FALSE),
            "L_PLUS_IS_P_POWER_OF_PRIMITIVE": AssertedFact(TriState.TRUE),
        },
    )
    assert any("inconsistent" in v for v in validate(broken))


# ---------------------------------------------------------------------------
# Schema errors carry field paths


def test_load_rejects_malformed_json():
    with pytest.raises(SchemaError) as err:
        load_presentation("{not json")
    assert err.value.path == "$"


def test_load_rejects_unknown_field(base):
    payload = presentation_payload(base)
    payload["surprise"] = 1
    with pytest.raises(SchemaError) as err:
        load_presentation(json.dumps(payload))
    assert "surprise" in err.value.path


def test_load_rejects_unknown_enum_value(base):
    payload = presentation_payload(base)
    payload["l1"]["kind"] = "pretzel"
    with pytest.raises(SchemaError) as err:
        load_presentation(json.dumps(payload))
    assert err.value.path == "l1.kind"
    assert "pretzel" in err.value.message


def test_load_rejects_missing_field(base):
    payload = presentation_payload(base)
    del payload["p"]
    with pytest.raises(SchemaError) as err:
        load_presentation(json.dumps(payload))
    assert err.value.path == "p"


def test_load_rejects_bad_word_token(base):
    payload = presentation_payload(base)
    payload["w_l_plus"] = "z9"
    with pytest.raises(SchemaError) as err:
        load_presentation(json.dumps(payload))
    assert err.value.path == "w_l_plus"


def test_load_rejects_bool_as_int(base):
    payload = presentation_payload(base)
    payload["p"] = True
    with pytest.raises(SchemaError) as err:
        load_presentation(json.dumps(payload))
    assert err.value.path == "p"


def test_load_rejects_zero_slope_as_validation_error(base):
    payload = presentation_payload(base)
    payload["p"] = 0
    payload["h_l_plus"] = [1, -1]
    payload["h_l_minus"] = [0, 0]
    payload["w_l_plus"] = None
    payload["w_l_minus"] = None
    with pytest.raises(PresentationValidationError) as err:
        load_presentation(json.dumps(payload))
    assert any("non-trivial boundary slope" in v for v in err.value.violations)


def test_report_schema_round_trip_preserves_citations(base):
    report = classify(base)
    loaded = load_report(save_report(report))
    for key, verdict in report.verdicts.items():
        assert loaded.verdicts[key].citation == verdict.citation
        assert loaded.verdicts[key].details == verdict.details
