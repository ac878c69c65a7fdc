"""Acceptance suite: one test per criterion, exact-match at desk scale.

Each criterion also prints one PASS/FAIL line in the terminal summary (see
conftest.pytest_terminal_summary).
"""

import random
from importlib import resources

from conftest import random_report
from hk33.criteria import classify
from hk33.families import family_T, family_U, without_words
from hk33.freegroup import nth_root, parse_word, xayb_quotient_class
from hk33.lattice import DivisibilityClass, divisibility_class
from hk33.model import load_presentation, load_report, save_report
from hk33.oracles import (
    suite_basis,
    suite_normalize,
    suite_primitivity,
    suite_reverse_involution,
    suite_roots,
)
from hk33.tables import build_table
from hk33.verdicts import SymGroup, VerdictState

PROVED = VerdictState.PROVED
UNKNOWN = VerdictState.UNKNOWN


def classified(instance):
    return classify(
        instance.presentation, instance.known_lower_bound, instance.lower_citation
    )


def fixture(name: str):
    text = resources.files("hk33").joinpath("fixtures", name).read_text("utf-8")
    return load_presentation(text)


def test_criterion_1_diagonal_family_full_row():
    report = classified(family_T(3, 3))
    verdicts = report.verdicts
    assert verdicts["irreducible"].state is PROVED
    assert verdicts["atoroidal"].state is PROVED
    assert verdicts["unique_annulus"].state is PROVED
    assert verdicts["unique_annulus"].citation == "rule:unique-unknotted-odd-slope"
    assert verdicts["chiral"].state is PROVED
    assert report.slope_type.as_pair() == (2, 1)
    assert report.symmetric_type is True
    assert report.symmetry.upper is SymGroup.Z2xZ2
    assert report.symmetry.lower is SymGroup.Z2xZ2
    assert report.symmetry.exact is SymGroup.Z2xZ2


def test_criterion_2_slope_one_family_rigidity_and_swap_obstruction():
    instance = family_T(-3, 5)
    report = classified(instance)
    assert report.p == 1
    assert report.slope_invariant.as_pair() == (1, 0)
    assert report.n_used == 2
    verdicts = report.verdicts
    assert verdicts["irreducible"].state is PROVED
    assert verdicts["atoroidal"].state is PROVED
    assert verdicts["unique_annulus"].state is PROVED
    assert verdicts["unique_annulus"].citation == "rule:unique-slope-one-rigidity"
    q_plus = xayb_quotient_class(instance.presentation.w_l_plus)
    q_minus = xayb_quotient_class(instance.presentation.w_l_minus)
    assert q_plus.kind == "infinite-cyclic"
    assert q_minus.kind == "torus-group" and q_minus.pair == (2, 3)
    assert any(
        note.startswith("rule:symmetry-swap-quotient-obstruction")
        for note in report.symmetry.notes
    )
    assert report.symmetry.upper is SymGroup.Z2
    assert report.symmetry.exact is SymGroup.Z2


def test_criterion_3_non_invertible_family_trivial_symmetry():
    instance = family_U(3, 1)
    report = classified(instance)
    assert report.p == 4
    assert report.symmetric_type is False  # even slope forces an asymmetric type
    verdicts = report.verdicts
    assert verdicts["unique_annulus"].state is PROVED
    assert verdicts["unique_annulus"].citation == "rule:unique-irreducible-exterior"
    assert "evidence plus=homology, minus=homology" in verdicts["unique_annulus"].details
    assert divisibility_class(instance.presentation.h_l_plus, 4) is DivisibilityClass.NOT_MULTIPLE
    assert divisibility_class(instance.presentation.h_l_minus, 4) is DivisibilityClass.NOT_MULTIPLE
    assert "rule:symmetry-noninvertible-boundary" in report.symmetry.notes
    assert report.symmetry.upper is SymGroup.TRIVIAL


def test_criterion_4_negative_controls_stay_unknown():
    # (a) trivial subfamily: one boundary class is a |p|-th multiple of a generator
    for nu in (3, 5, 7):
        instance = family_T(1, nu)
        pres = instance.presentation
        assert (
            divisibility_class(pres.h_l_minus, pres.p)
            is DivisibilityClass.MULTIPLE_OF_GENERATOR
        )
        report = classified(instance)
        assert report.verdicts["irreducible"].state is UNKNOWN, nu
        assert report.verdicts["unique_annulus"].state is UNKNOWN, nu
    # (b) reducible control with the excluded torus-link boundary
    report = classify(fixture("reducible_torus_boundary.json"))
    assert report.verdicts["irreducible"].state is UNKNOWN
    assert report.verdicts["atoroidal"].state is UNKNOWN
    assert report.verdicts["unique_annulus"].state is UNKNOWN
    # (c) two-annuli torus-link control: irreducible but never unique
    report = classify(fixture("two_annuli_torus_boundary.json"))
    assert report.verdicts["irreducible"].state is PROVED
    assert report.verdicts["condition_double_dagger"].state is VerdictState.REFUTED
    assert report.verdicts["unique_annulus"].state is UNKNOWN
    # (d) slope-two control with an asserted power: uniqueness stays open
    report = classify(fixture("two_annuli_slope_two.json"))
    assert report.p == 2
    assert report.verdicts["irreducible"].state is PROVED
    assert report.verdicts["atoroidal"].state is PROVED
    assert report.verdicts["unique_annulus"].state is UNKNOWN


def test_criterion_5_tables_have_pairwise_distinct_slope_types():
    table = build_table("PT", 3, 15)
    assert len(table["rows"]) == 28
    slope_types = [row["slope_type"] for row in table["rows"]]
    assert len(set(slope_types)) == 28
    for row in table["rows"]:
        mu, nu = map(int, row["label"].split(":")[1].split(","))
        assert row["slope_type"] == f"({(mu + 1) // 2},{(nu - 1) // 2})"
    grid = build_table("PI", 0, 4)
    assert len(grid["rows"]) == 13
    assert len({row["slope_type"] for row in grid["rows"]}) == len(grid["rows"])


def test_criterion_6_primitivity_oracle_exhaustive():
    result = suite_primitivity(8)
    assert result.passed, result.counterexample
    assert result.checked == 1386  # all conjugacy classes of cyclic length <= 8


def test_criterion_7_basis_oracle_exhaustive():
    result = suite_basis(8)
    assert result.passed, result.counterexample
    assert result.checked == 139969  # all ordered pairs of total length <= 8


def test_criterion_8_randomized_suites_at_seed_zero():
    roots = suite_roots(cases=1000, seed=0)
    assert roots.passed and roots.checked == 1000
    reversal = suite_reverse_involution(cases=500, seed=0)
    assert reversal.passed and reversal.checked == 500
    normalization = suite_normalize(cases=200, seed=0)
    assert normalization.passed and normalization.checked == 200
    rng = random.Random(0)
    for index in range(200):
        report = random_report(rng, index)
        assert load_report(save_report(report)) == report


def test_criterion_9_word_evidence_where_homology_fails():
    for p in (2, 3, 4, 5):
        instance = family_T(-2 * p + 1, 4 * p - 1)
        pres = instance.presentation
        assert pres.p == p
        assert pres.w_l_plus == parse_word(f"x1^{-p + 1} x2^{2 * p - 1}")
        assert pres.w_l_minus == parse_word(f"x1^{-p} x2^{2 * p}")
        # the homology shortcut is unavailable: h_l_minus = p * (-1, 2)
        assert (
            divisibility_class(pres.h_l_minus, p)
            is DivisibilityClass.MULTIPLE_OF_GENERATOR
        )
        assert nth_root(pres.w_l_minus, p) is None
        if p in (3, 5):
            report = classified(instance)
            verdicts = report.verdicts
            assert verdicts["irreducible"].state is PROVED
            assert "evidence plus=word, minus=word" in verdicts["irreducible"].details
            assert verdicts["atoroidal"].state is PROVED
            assert verdicts["unique_annulus"].state is PROVED
            assert "evidence plus=word, minus=word" in verdicts["unique_annulus"].details
            # homology alone must not reach the same proof
            bare = classified(without_words(instance))
            assert bare.verdicts["irreducible"].state is UNKNOWN
            assert bare.verdicts["unique_annulus"].state is UNKNOWN
