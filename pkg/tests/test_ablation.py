"""Source-level ablation transforms and the ablation suite.

The renaming transform must be a pure relabeling: same tree shape, same
feature vector, bit for bit. That invariance is the backbone of the
robustness comparison, so it gets the heaviest coverage here.
"""

import numpy as np
import pytest
from conftest import golden_units, make_mini_units

from bigo.ablation import (
    PIPELINES,
    TECHNIQUES,
    AblationReport,
    NoInputDetected,
    constant_inputs,
    remove_substructures,
    rename_identifiers,
    run_ablation_suite,
    shuffle_labels,
    write_ablation_table,
)
from bigo.embedding import EmbeddingConfig
from bigo.features import extract_features_from_unit
from bigo.jast import NodeKind, SourceUnit, parse, same_shape
from bigo.model_selection import stratified_split

READS = """
import java.util.Scanner;
public class R {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        long total = sc.nextLong();
        for (int i = 0; i < n; i++) { total += i; }
        System.out.println(total);
    }
}
"""


def unit(text, uid="t.java", label=None):
    return SourceUnit(id=uid, text=text, label=label)


# ---- identifier renaming --------------------------------------------------------


@pytest.mark.parametrize("source", golden_units(), ids=lambda u: u.id)
def test_rename_preserves_feature_vector(source):
    before = extract_features_from_unit(parse(source)).as_array()
    after = extract_features_from_unit(parse(rename_identifiers(source))).as_array()
    np.testing.assert_array_equal(before, after)


@pytest.mark.parametrize("source", golden_units(), ids=lambda u: u.id)
def test_rename_preserves_tree_shape(source):
    renamed = rename_identifiers(source)
    assert same_shape(parse(source), parse(renamed), compare_values=False)


def test_rename_actually_renames():
    renamed = rename_identifiers(unit(READS))
    assert "v0" in renamed.text
    assert "total" not in renamed.text
    assert renamed.text.count("sc") == 0 or "sc" not in renamed.text.split()


def test_rename_keeps_protected_names():
    src = """
public class Keep {
    public static void main(String[] args) {
        java.util.HashMap<String, Integer> m = new java.util.HashMap<>();
        int[] xs = {3, 1, 2};
        java.util.Arrays.sort(xs);
        helper(xs.length);
    }
    static void helper(int count) { System.out.println(count); }
}
"""
    renamed = rename_identifiers(unit(src))
    for name in ("main", "sort", "HashMap", "Keep"):
        assert name in renamed.text
    assert "helper" not in renamed.text
    assert "m0" in renamed.text


def test_rename_is_consistent_across_uses():
    src = """
public class C {
    static int twice(int x) { return x + x; }
    public static void main(String[] args) { System.out.println(twice(21)); }
}
"""
    renamed = rename_identifiers(unit(src))
    assert "twice" not in renamed.text
    assert renamed.text.count("m0") == 2  # declaration and call site


def test_rename_avoids_existing_identifiers():
    src = """
public class C {
    public static void main(String[] args) {
        int v0 = 1;
        int other = v0 + 1;
        System.out.println(other);
    }
}
"""
    renamed = rename_identifiers(unit(src))
    # v0 is taken by the source, so the first fresh variable is v1
    assert "v1" in renamed.text
    tree = parse(renamed)
    names = [
        n.value
        for n in tree.walk()
        if n.kind is NodeKind.VARIABLE_DECLARATION and not n.meta.get("single")
    ]
    assert len(names) == len(set(names))


def test_rename_is_deterministic():
    assert rename_identifiers(unit(READS)).text == rename_identifiers(unit(READS)).text


# ---- constant inputs ------------------------------------------------------------


def test_constant_inputs_removes_all_reads():
    replaced = constant_inputs(unit(READS))
    tree = parse(replaced)
    reads = [
        n
        for n in tree.walk()
        if n.kind is NodeKind.METHOD_INVOCATION and n.value in ("nextInt", "nextLong")
    ]
    assert reads == []
    assert "10" in replaced.text


def test_constant_inputs_custom_literal():
    replaced = constant_inputs(unit(READS), literal=7)
    assert "7" in replaced.text and "nextInt" not in replaced.text


def test_constant_inputs_outermost_only():
    src = """
import java.util.Scanner;
public class N {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt(sc.nextInt());
        System.out.println(n);
    }
}
"""
    replaced = constant_inputs(unit(src))
    assert "int n = 10;" in replaced.text
    assert "10(10)" not in replaced.text


def test_constant_inputs_requires_a_read():
    with pytest.raises(NoInputDetected):
        constant_inputs(unit("public class C { public static void main(String[] a) {} }"))


def test_constant_inputs_output_reparses():
    replaced = constant_inputs(unit(READS))
    parse(replaced)  # must not raise


# ---- substructure removal -------------------------------------------------------


def test_removal_p_zero_is_identity_up_to_printing():
    for source in golden_units():
        kept = remove_substructures(source, p=0.0, seed=1)
        assert same_shape(parse(kept), parse(source))


def test_removal_p_one_strips_all_control_flow():
    src = golden_units()[0]
    combo = """
public class All {
    public static void main(String[] args) {
        int n = 20;
        for (int i = 0; i < n; i++) {
            while (n > 0) { n--; }
        }
        if (n == 0) { System.out.println(n); }
        do { n++; } while (n < 5);
    }
}
"""
    stripped = remove_substructures(unit(combo), p=1.0, seed=0)
    tree = parse(stripped)
    control = {
        NodeKind.FOR_LOOP,
        NodeKind.WHILE_LOOP,
        NodeKind.DO_LOOP,
        NodeKind.IF,
        NodeKind.ENHANCED_FOR_LOOP,
    }
    assert not [n for n in tree.walk() if n.kind in control]
    remove_substructures(src, p=1.0, seed=0)  # golden file also survives


def test_removal_is_deterministic():
    src = golden_units()[5]
    a = remove_substructures(src, p=0.5, seed=9).text
    b = remove_substructures(src, p=0.5, seed=9).text
    assert a == b


def test_removal_probability_validated():
    with pytest.raises(ValueError):
        remove_substructures(golden_units()[0], p=1.5, seed=0)


def test_removal_output_reparses():
    for seed in range(5):
        out = remove_substructures(golden_units()[5], p=0.5, seed=seed)
        parse(out)  # must not raise


# ---- label shuffling ------------------------------------------------------------


def split_fixture():
    rng = np.random.default_rng(0)
    ids = [f"u{i}" for i in range(20)]
    X = rng.normal(size=(20, 3))
    y = np.repeat([0, 1], 10)
    return stratified_split(ids, X, y, ratio=0.8, seed=1)


def test_shuffle_preserves_label_multiset():
    split = split_fixture()
    shuffled = shuffle_labels(split, seed=4)
    assert sorted(shuffled.y_train) == sorted(split.y_train)
    assert not np.array_equal(shuffled.y_train, split.y_train)


def test_shuffle_leaves_everything_else():
    split = split_fixture()
    shuffled = shuffle_labels(split, seed=4)
    np.testing.assert_array_equal(shuffled.X_train, split.X_train)
    np.testing.assert_array_equal(shuffled.y_test, split.y_test)
    assert shuffled.train_ids == split.train_ids


# ---- report object and suite ----------------------------------------------------


def test_report_validates_fields():
    with pytest.raises(ValueError):
        AblationReport("typo", "features", 50.0)
    with pytest.raises(ValueError):
        AblationReport("label_shuffle", "typo", 50.0)
    with pytest.raises(ValueError):
        AblationReport("label_shuffle", "features", 120.0)
    assert AblationReport("name_alteration", "features", None).value is None


@pytest.fixture(scope="module")
def suite_reports():
    units = make_mini_units(per_class=4)
    cfg = EmbeddingConfig(dimension=8, wl_depth=1, epochs=3, seed=0)
    return run_ablation_suite(
        units, seed=0, embedding_cfg=cfg, n_samples=5, removal_p=0.2
    )


def test_suite_covers_full_grid(suite_reports):
    cells = {(r.technique, r.pipeline) for r in suite_reports}
    assert cells == {(t, p) for t in TECHNIQUES for p in PIPELINES}
    assert len(suite_reports) == len(TECHNIQUES) * len(PIPELINES)


def test_suite_na_cells_are_exactly_the_feature_transforms(suite_reports):
    na = {(r.technique, r.pipeline) for r in suite_reports if r.value is None}
    assert na == {
        ("name_alteration", "features"),
        ("constant_inputs", "features"),
    }


def test_suite_values_are_percentages(suite_reports):
    for report in suite_reports:
        if report.value is not None:
            assert 0.0 <= report.value <= 100.0


def test_table_writer_layout(suite_reports, tmp_path):
    path = tmp_path / "ablation.csv"
    write_ablation_table(suite_reports, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0].startswith("Ablation Technique,Feature Engineering")
    assert len(lines) == 1 + len(TECHNIQUES)
    assert lines[2].split(",")[1] == "NA"  # name alteration x features
    assert lines[3].split(",")[1] == "NA"  # constant inputs x features
