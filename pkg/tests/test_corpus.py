"""Corpus ingestion, the class-directory adapter, and dataset CSV round-trips."""

import hashlib

import pytest
from conftest import make_mini_units

from bigo.corpus import (
    EXPECTED_CLASS_COUNTS,
    CorpusManifest,
    EmptyCorpus,
    MissingFile,
    UnknownLabel,
    compare_class_counts,
    ingest,
    labels_from_class_dirs,
    load_units,
    locate_public_corpus,
    read_feature_csv,
    write_feature_csv,
    write_labels_csv,
)
from bigo.features import DensityTable, extract_features_from_unit
from bigo.corpus import write_density_csv
from bigo.jast import parse
from bigo.labels import ComplexityClass

HELLO = 'public class A { public static void main(String[] x) { System.out.println("hi"); } }'


@pytest.fixture()
def corpus(tmp_path):
    root = tmp_path / "corpus"
    root.mkdir()
    (root / "A.java").write_text(HELLO)
    (root / "B.java").write_text(HELLO.replace("class A", "class B"))
    labels = tmp_path / "labels.csv"
    labels.write_text("file,label\nA.java,1\nB.java,n\n")
    return root, labels


def test_ingest_happy_path(corpus):
    root, labels = corpus
    manifest = ingest(root, labels)
    assert len(manifest) == 2
    assert manifest.entries[0] == ("A.java", ComplexityClass.CONSTANT)
    assert manifest.entries[1] == ("B.java", ComplexityClass.LINEAR)


def test_ingest_records_sha256(corpus):
    root, labels = corpus
    manifest = ingest(root, labels)
    want = hashlib.sha256((root / "A.java").read_bytes()).hexdigest()
    assert manifest.checksums["A.java"] == want


def test_ingest_missing_file(corpus):
    root, labels = corpus
    labels.write_text("file,label\nA.java,1\nGone.java,n\n")
    with pytest.raises(MissingFile):
        ingest(root, labels)


def test_ingest_unknown_label(corpus):
    root, labels = corpus
    labels.write_text("file,label\nA.java,n_cube\n")
    with pytest.raises(UnknownLabel):
        ingest(root, labels)


def test_ingest_empty_labels(corpus):
    root, labels = corpus
    labels.write_text("file,label\n")
    with pytest.raises(EmptyCorpus):
        ingest(root, labels)


def test_ingest_bad_header(corpus):
    root, labels = corpus
    labels.write_text("path,complexity\nA.java,1\n")
    with pytest.raises(ValueError):
        ingest(root, labels)


def test_ingest_rejects_undecodable_source(corpus):
    root, labels = corpus
    (root / "A.java").write_bytes(b"\xff\xfe\x00bad")
    with pytest.raises(UnicodeDecodeError):
        ingest(root, labels)


def test_ingest_accepts_subdirectories(tmp_path):
    root = tmp_path / "c"
    (root / "deep").mkdir(parents=True)
    (root / "deep" / "A.java").write_text(HELLO)
    labels = tmp_path / "labels.csv"
    labels.write_text("file,label\ndeep/A.java,logn\n")
    manifest = ingest(root, labels)
    assert manifest.entries == (("deep/A.java", ComplexityClass.LOGARITHMIC),)


def test_manifest_requires_checksums():
    with pytest.raises(ValueError):
        CorpusManifest(
            root=None, entries=(("A.java", ComplexityClass.CONSTANT),), checksums={}
        )


def test_class_counts(corpus):
    root, labels = corpus
    counts = ingest(root, labels).class_counts()
    assert counts[ComplexityClass.CONSTANT] == 1
    assert counts[ComplexityClass.LINEAR] == 1
    assert counts[ComplexityClass.QUADRATIC] == 0


def test_load_units(corpus):
    root, labels = corpus
    units = load_units(ingest(root, labels))
    assert [u.id for u in units] == ["A.java", "B.java"]
    assert units[0].label == "1"
    assert units[0].text == HELLO


# ---- directory-per-class adapter -------------------------------------------------


def test_adapter_layout(mini_corpus_dir):
    rows = labels_from_class_dirs(mini_corpus_dir)
    assert len(rows) == 15
    tokens = {t for _, t in rows}
    assert tokens == {"1", "logn", "n", "nlogn", "n_square"}
    assert rows == sorted(rows)


def test_adapter_normalizes_names(tmp_path):
    for name, token in [
        ("O(1)", "1"),
        ("O(logn)", "logn"),
        ("N Square", "n_square"),
        ("n2", "n_square"),
        ("Linear", "n"),
    ]:
        d = tmp_path / name
        d.mkdir()
        (d / "X.java").write_text(HELLO)
        assert labels_from_class_dirs(tmp_path) == [(f"{name}/X.java", token)]
        (d / "X.java").unlink()
        d.rmdir()


def test_adapter_skips_unknown_directories(tmp_path):
    (tmp_path / "notes").mkdir()
    (tmp_path / "notes" / "X.java").write_text(HELLO)
    assert labels_from_class_dirs(tmp_path) == []


def test_adapter_rows_ingest_cleanly(mini_corpus_dir, tmp_path):
    rows = labels_from_class_dirs(mini_corpus_dir)
    labels = tmp_path / "labels.csv"
    write_labels_csv(rows, labels)
    manifest = ingest(mini_corpus_dir, labels)
    assert len(manifest) == 15
    assert all(count == 3 for count in manifest.class_counts().values())


# ---- validation report ------------------------------------------------------------


def test_expected_counts_documented_values():
    assert EXPECTED_CLASS_COUNTS[ComplexityClass.LINEAR] == 385
    assert sum(EXPECTED_CLASS_COUNTS.values()) == 933


def test_compare_class_counts_lines(corpus):
    root, labels = corpus
    lines = compare_class_counts(ingest(root, labels))
    assert lines[0] == "n: 1 (expected 385)"
    assert lines[-1] == "total: 2"
    assert len(lines) == 6  # five classes plus the total


def test_locate_public_corpus_env(tmp_path, monkeypatch):
    monkeypatch.setenv("CORCOD_DIR", str(tmp_path))
    assert locate_public_corpus() == tmp_path
    monkeypatch.setenv("CORCOD_DIR", str(tmp_path / "missing"))
    monkeypatch.chdir(tmp_path)
    assert locate_public_corpus() is None


# ---- dataset CSVs -----------------------------------------------------------------


def test_feature_csv_round_trip(tmp_path):
    units = make_mini_units(per_class=2)
    rows = [
        (
            u.id,
            extract_features_from_unit(parse(u)),
            ComplexityClass.from_token(u.label),
        )
        for u in units
    ]
    path = tmp_path / "features.csv"
    write_feature_csv(rows, path)
    assert read_feature_csv(path) == rows


def test_feature_csv_header(tmp_path):
    units = make_mini_units(per_class=1)
    rows = [
        (
            u.id,
            extract_features_from_unit(parse(u)),
            ComplexityClass.from_token(u.label),
        )
        for u in units
    ]
    path = tmp_path / "features.csv"
    write_feature_csv(rows, path)
    header = path.read_text().splitlines()[0].split(",")
    assert header[0] == "id" and header[-1] == "label"
    assert len(header) == 16


def test_feature_csv_empty_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    write_feature_csv([], path)
    with pytest.raises(EmptyCorpus):
        read_feature_csv(path)


def test_density_csv_exact_frequencies(tmp_path):
    table = DensityTable(
        feature="number_of_loops",
        per_class={
            ComplexityClass.CONSTANT: ((0, 1.0),),
            ComplexityClass.LINEAR: ((1, 0.5), (2, 0.5)),
        },
    )
    path = tmp_path / "density.csv"
    write_density_csv([table], path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "feature,class,value,frequency"
    assert "number_of_loops,1,0,1.0" in lines
    assert "number_of_loops,n,1,0.5" in lines
    # repr() keeps frequencies exact for reading back
    assert all(line.count(",") == 3 for line in lines)
