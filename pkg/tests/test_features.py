"""Feature extraction against the hand-traced golden corpus, plus density export.

Every file in tests/fixtures/golden has its 14 expected values recorded in
expected.json; those numbers were derived by manually walking the source,
not by running the extractor.
"""

import pytest

from bigo.features import (
    FEATURE_NAMES,
    EmptyClass,
    FeatureExtractor,
    FeatureVector,
    export_density,
    extract_features,
    extract_features_from_unit,
    nested_loop_depth,
)
from bigo.jast import parse
from bigo.labels import ComplexityClass

from conftest import golden_expected, golden_units

EXPECTED = golden_expected()


@pytest.mark.parametrize("unit", golden_units(), ids=lambda u: u.id)
def test_golden_vectors_match_hand_trace(unit):
    got = extract_features_from_unit(parse(unit)).as_dict()
    assert got == EXPECTED[unit.id]


def test_golden_corpus_covers_every_feature():
    # sanity on the corpus itself: each feature is nonzero somewhere
    hit = {name: 0 for name in FEATURE_NAMES}
    for exp in EXPECTED.values():
        for name, value in exp.items():
            hit[name] += value
    assert all(hit.values()), [n for n, v in hit.items() if not v]


def test_empty_reachable_rejected():
    root = parse("class A { void f() {} }")
    with pytest.raises(ValueError):
        extract_features(root, set())


def test_unreachable_method_removal_leaves_vector_unchanged():
    with_dead = (
        "class A {"
        " static void dead() { for (int i = 0; i < 9; i++) {} }"
        " public static void main(String[] a) { int x = 1; }"
        " }"
    )
    without = (
        "class A {"
        " public static void main(String[] a) { int x = 1; }"
        " }"
    )
    assert (
        extract_features_from_unit(parse(with_dead))
        == extract_features_from_unit(parse(without))
    )


def test_deeper_nesting_increments_depth_by_one():
    inner = "for (int j = 0; j < 3; j++) { s++; }"
    shallow = f"class A {{ void f() {{ int s = 0; {inner} }} }}"
    deep = f"class A {{ void f() {{ int s = 0; for (int i = 0; i < 3; i++) {{ {inner} }} }} }}"
    a = extract_features_from_unit(parse(shallow))
    b = extract_features_from_unit(parse(deep))
    assert b.nested_loop_depth == a.nested_loop_depth + 1


class TestNestedLoopDepth:
    def test_no_loops(self):
        assert nested_loop_depth(parse("class A { void f() { int x = 0; } }")) == 0

    def test_triple_nested(self):
        src = (
            "class A { void f() {"
            " for (int i = 0; i < 2; i++)"
            "  for (int j = 0; j < 2; j++)"
            "   for (int k = 0; k < 2; k++) { }"
            " } }"
        )
        assert nested_loop_depth(parse(src)) == 3

    def test_siblings_take_max_not_sum(self):
        src = (
            "class A { void f() {"
            " while (a) { }"
            " while (b) { }"
            " } }"
        )
        assert nested_loop_depth(parse(src)) == 1

    def test_depth_does_not_propagate_through_calls(self):
        src = (
            "class A {"
            " void outer() { for (int i = 0; i < 2; i++) { inner(); } }"
            " void inner() { for (int j = 0; j < 2; j++) { } }"
            " }"
        )
        assert nested_loop_depth(parse(src)) == 1


class TestVectorInvariants:
    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            FeatureVector(number_of_statements=-1)

    def test_flag_must_be_binary(self):
        with pytest.raises(ValueError):
            FeatureVector(sort_present=2)

    def test_depth_cannot_exceed_loops(self):
        with pytest.raises(ValueError):
            FeatureVector(number_of_loops=1, nested_loop_depth=2)

    def test_depth_and_loops_zero_together(self):
        with pytest.raises(ValueError):
            FeatureVector(number_of_loops=3, nested_loop_depth=0)

    def test_array_order_matches_field_order(self):
        vec = FeatureVector(number_of_methods=7, number_of_jumps=3)
        arr = vec.as_array()
        assert arr[FEATURE_NAMES.index("number_of_methods")] == 7
        assert arr[FEATURE_NAMES.index("number_of_jumps")] == 3
        assert arr.shape == (14,)


class TestDensity:
    def corpus(self):
        return [
            (FeatureVector(), ComplexityClass.CONSTANT),
            (FeatureVector(), ComplexityClass.LOGARITHMIC),
            (
                FeatureVector(number_of_loops=1, nested_loop_depth=1),
                ComplexityClass.LINEAR,
            ),
            (
                FeatureVector(number_of_loops=1, nested_loop_depth=1),
                ComplexityClass.LINEARITHMIC,
            ),
            (
                FeatureVector(number_of_loops=2, nested_loop_depth=2),
                ComplexityClass.QUADRATIC,
            ),
            (
                FeatureVector(number_of_loops=2, nested_loop_depth=2),
                ComplexityClass.QUADRATIC,
            ),
            (
                FeatureVector(number_of_loops=3, nested_loop_depth=2),
                ComplexityClass.QUADRATIC,
            ),
        ]

    def test_quadratic_mass_peaks_at_two(self):
        table = export_density(self.corpus(), "nested_loop_depth")
        freq = table.frequencies(ComplexityClass.QUADRATIC)
        assert freq == {2: 1.0}

    def test_single_sample_class_gets_unit_mass(self):
        table = export_density(self.corpus(), "number_of_loops")
        assert table.frequencies(ComplexityClass.LINEAR) == {1: 1.0}

    def test_split_mass(self):
        corpus = self.corpus() + [
            (FeatureVector(number_of_loops=9, nested_loop_depth=1),
             ComplexityClass.LINEAR),
        ]
        freq = export_density(corpus, "number_of_loops").frequencies(
            ComplexityClass.LINEAR
        )
        assert freq == {1: 0.5, 9: 0.5}

    def test_frequencies_sum_to_one(self):
        table = export_density(self.corpus(), "number_of_statements")
        for cls in ComplexityClass:
            total = sum(table.frequencies(cls).values())
            assert abs(total - 1.0) < 1e-9

    def test_missing_class_raises(self):
        corpus = [(FeatureVector(), ComplexityClass.CONSTANT)]
        with pytest.raises(EmptyClass):
            export_density(corpus, "number_of_loops")

    def test_unknown_feature_rejected(self):
        with pytest.raises(ValueError):
            export_density(self.corpus(), "number_of_lambdas")

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            export_density([], "number_of_loops")


def test_feature_extractor_transformer():
    roots = [parse(u) for u in golden_units()[:4]]
    extractor = FeatureExtractor()
    matrix = extractor.fit_transform(roots)
    assert matrix.shape == (4, 14)


def test_feature_extractor_accepts_source_units():
    units = golden_units()[:4]
    from_units = FeatureExtractor().fit_transform(units)
    from_roots = FeatureExtractor().fit_transform([parse(u) for u in units])
    assert (from_units == from_roots).all()
