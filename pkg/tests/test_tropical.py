import random

import pytest
from sympy import QQ

from acceptance import SuiteScale, check_naruki_general, check_non_stable, check_stable
from errors import InvariantViolation, PreconditionError
from exact.valuation import ExtValuation
from lines.census import full_census
from lines.plucker import LineLabel, all_labels
from model.octanomial import OctanomialCoefficients, coefficients_from_moduli
from tropical.arrangements import (
    AAAA,
    AAAB,
    KNOWN_STATISTICS,
    NON_STABLE,
    OTHER_STABLE,
    ArrangementStatistic,
    classify_arrangement,
    classify_moduli,
    tropical_smoothness,
)
from tropical.examples import (
    EXAMPLE_PRIME,
    evaluate_expansion,
    naruki_general_examples,
    non_stable_examples,
    stable_examples,
)
from tropical.signatures import (
    colliding_pairs,
    distinct_tropical_lines,
    pencil_cubic,
    triplet_root_valuations,
)
from tropical.trees import (
    LEAF_COUNT,
    SplitString,
    TreeMetric,
    candidate_sides,
    compatible,
    format_length,
    four_point_violations,
    projection_axes,
    recover_tree,
    split_string,
    tree_metric,
)

AAAA_1_MODULI = (-2028123, 1953000, 78124, 50703000, 1953124, -1952999)


def _metric(closer: dict[tuple[int, int], int]) -> TreeMetric:
    """A metric on ten leaves where only the given pairs have positive valuation."""
    values = {
        (i, j): ExtValuation(closer.get((i, j), 0))
        for i in range(LEAF_COUNT)
        for j in range(i + 1, LEAF_COUNT)
    }
    leaves = all_labels()[:LEAF_COUNT]
    return TreeMetric(LineLabel("E", (1,)), leaves, (0, 1), values)


# ── split strings ──────────────────────────────────────────────────

def test_split_string_parsing_and_order():
    s = SplitString.parse("[4021]")
    assert s.as_tuple() == (4, 0, 2, 1)
    assert str(s) == "[4021]"
    assert SplitString.parse("2020").dominated_by(s)
    assert not SplitString.parse("5020").dominated_by(s)
    assert SplitString.parse("2221") < SplitString.parse("4020")
    with pytest.raises(PreconditionError):
        SplitString.parse("402")


def test_candidate_sides_and_compatibility():
    assert len(candidate_sides()) == 501
    a, b = frozenset({1, 2}), frozenset({1, 2, 3})
    assert compatible(a, b)
    assert compatible(a, frozenset({4, 5}))
    assert not compatible(a, frozenset({2, 3}))


def test_format_length():
    assert format_length(QQ(3, 2)) == "1.5"
    assert format_length(QQ(-3, 2)) == "-1.5"
    assert format_length(QQ(2)) == "2"
    assert format_length(QQ(1, 3)) == "1/3"


# ── tree recovery ──────────────────────────────────────────────────

def test_recover_single_cherry():
    metric = _metric({(1, 2): 1})
    assert four_point_violations(metric) == []
    tree = recover_tree(metric)
    assert tree.splits == frozenset({frozenset({1, 2})})
    assert tree.edge_weights[frozenset({1, 2})] == QQ(1, 2)
    assert split_string(tree) == SplitString(1, 0, 0, 0)
    assert tree.newick() == "(E1,(E2,E3):0.5,E4,E5,E6,F12,F13,F14,F15);"


def test_recover_nested_splits():
    closer = {(1, 2): 2, (1, 3): 1, (2, 3): 1}
    tree = recover_tree(_metric(closer))
    assert tree.splits == frozenset({frozenset({1, 2}), frozenset({1, 2, 3})})
    assert split_string(tree) == SplitString(1, 1, 0, 0)


def test_four_point_failure_is_an_invariant_violation():
    metric = _metric({(1, 2): 2, (1, 3): 1})
    assert (1, 2, 3, 4) in four_point_violations(metric)
    with pytest.raises(InvariantViolation, match="four-point"):
        recover_tree(metric)


# ── statistics ─────────────────────────────────────────────────────

def test_known_statistics_classify_to_their_type():
    for tag, counts in KNOWN_STATISTICS.items():
        assert classify_arrangement(ArrangementStatistic.from_counts(counts)) == tag


def test_non_stable_and_other_stable_statistics():
    non_stable = ArrangementStatistic.from_counts({"2220": 6, "3210": 3, "3220": 6, "4201": 12})
    assert classify_arrangement(non_stable) == NON_STABLE
    other = ArrangementStatistic.from_counts({"4021": 27})
    assert classify_arrangement(other) == OTHER_STABLE


def test_statistic_needs_27_strings():
    with pytest.raises(PreconditionError):
        ArrangementStatistic.from_counts({"4021": 26})


def test_statistic_multiset_text():
    s = ArrangementStatistic.from_counts(KNOWN_STATISTICS[AAAA])
    assert str(s) == "{[4021]^24,[4020]^3}"


# ── worked examples ────────────────────────────────────────────────

def test_expansions_evaluate_at_five(aaaa_example):
    assert evaluate_expansion([[2, 0], [1, 5], [-1, 7], [-1, 9]], 5) == -2028123
    assert aaaa_example.moduli.d == AAAA_1_MODULI
    assert aaaa_example.prime == EXAMPLE_PRIME


def test_example_lists():
    naruki = naruki_general_examples()
    assert [ex.smoothness_class for ex in naruki] == [1, 2, 3, 4, 7]
    assert [ex.arrangement_type for ex in naruki] == [AAAA, AAAA, AAAB, AAAB, AAAB]
    assert len(stable_examples()) == 2
    assert all(ex.arrangement_type == NON_STABLE for ex in non_stable_examples())


def test_tropical_smoothness_class(aaaa_example):
    smoothness = tropical_smoothness(coefficients_from_moduli(aaaa_example.moduli), 5)
    assert smoothness.smooth
    assert smoothness.class_index == 1
    assert len(smoothness.triangulation.cells) == 7


def test_zero_coefficient_is_on_the_boundary():
    smoothness = tropical_smoothness(OctanomialCoefficients(1, 2, 3, 4, 0, 6, 7, 8), 5)
    assert smoothness.boundary
    assert not smoothness.smooth


def test_aaaa_classification(aaaa_report):
    assert aaaa_report.statistic.counts == {"4020": 3, "4021": 24}
    assert aaaa_report.arrangement_type == AAAA
    assert aaaa_report.naruki_general
    assert aaaa_report.smoothness.class_index == 1
    assert aaaa_report.distinct_lines.distinct
    assert aaaa_report.triplets_consistent
    data = aaaa_report.to_json(include_trees=True)
    assert data["in_secondary_cone"] is True
    assert len(data["trees"]) == 27
    assert data["statistic"]["multiset"] == "{[4021]^24,[4020]^3}"


def test_aaab_classification():
    example = naruki_general_examples()[2]
    report = classify_moduli(example.moduli, example.prime)
    assert report.statistic.counts == {"2221": 12, "4201": 12, "4210": 3}
    assert report.arrangement_type == AAAB
    assert report.smoothness.class_index == 3


def test_pencil_cubic_of_the_xz_line():
    c = OctanomialCoefficients(3, -2, 5, 7, -4, 6, 1, -9)
    # -2 (e²h - bce, c²f - abc - beg - cde + 2aeh, 2cfg - abg - acd - deg + a²h, fg² - adg)
    assert pencil_cubic(c, (0, 2)) == (368, -1056, 184, 30)


def test_triplet_newton_polygons(census):
    entries = triplet_root_valuations(census, 5)
    # two triplets meet two coordinate lines, four meet one
    assert len(entries) == 8
    assert all(entry.roots_on_cubic for entry in entries)
    assert all(entry.consistent for entry in entries)
    assert all(len(entry.cubic) == 4 for entry in entries)


def test_perturbed_surface_fails_the_triplet_check(census):
    c = coefficients_from_moduli(census.moduli)
    entries = triplet_root_valuations(census, 5, c.replace(a=c.a + 1))
    assert not all(entry.roots_on_cubic for entry in entries)
    assert not all(entry.consistent for entry in entries)


def test_distinctness_report_on_reference_moduli(census):
    report = distinct_tropical_lines(census, 7)
    assert bool(report) == report.distinct
    if not report.distinct:
        assert report.collision is not None
        assert report.collision == report.collisions[0]
    assert list(report.collisions) == colliding_pairs(census, 7)
    assert report.to_json()["collisions"] == [[str(a), str(b)] for a, b in report.collisions]


def test_distinct_lines_have_no_colliding_pairs(aaaa_example):
    census = full_census(aaaa_example.moduli)
    assert colliding_pairs(census, aaaa_example.prime) == []
    assert distinct_tropical_lines(census, aaaa_example.prime).collisions == ()


def _split_sets_per_axis(moduli, prime):
    census = full_census(moduli)
    for line in census:
        yield line.label, {
            recover_tree(tree_metric(line, census, prime, axis)).splits
            for axis in projection_axes(line)
        }


def test_tree_splits_do_not_depend_on_projection_axis(aaaa_example):
    for label, split_sets in _split_sets_per_axis(aaaa_example.moduli, aaaa_example.prime):
        assert len(split_sets) == 1, label


@pytest.mark.slow
@pytest.mark.parametrize("index", range(5))
def test_projection_axis_invariance_on_naruki_general_examples(index):
    example = naruki_general_examples()[index]
    for label, split_sets in _split_sets_per_axis(example.moduli, example.prime):
        assert len(split_sets) == 1, label


@pytest.mark.slow
@pytest.mark.parametrize("check", [check_naruki_general, check_stable, check_non_stable])
def test_worked_example_batteries(check):
    assert check(SuiteScale.reduced(), random.Random(0), 1)["passed"]
