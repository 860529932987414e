"""Corpus ingestion: labels CSV, manifest validation, and dataset CSV writers.

The canonical corpus format is a root directory plus a labels CSV with
columns ``file,label``. A directory-per-class checkout (the layout the
public CoRCoD corpus ships in) is supported through
:func:`labels_from_class_dirs`, which synthesizes the same rows.
"""

from __future__ import annotations

import csv
import hashlib
import os
from dataclasses import dataclass
from pathlib import Path

from .features import FEATURE_NAMES, DensityTable, FeatureVector
from .jast.nodes import SourceUnit
from .labels import ALL_CLASSES, ComplexityClass


class MissingFile(ValueError):
    """A labels row points at a file that does not exist under the root."""


class UnknownLabel(ValueError):
    """A labels row carries a label outside the five complexity classes."""


class EmptyCorpus(ValueError):
    """No labeled files were found."""


# documented per-class sample counts for the CoRCoD corpus
EXPECTED_CLASS_COUNTS: dict[ComplexityClass, int] = {
    ComplexityClass.LINEAR: 385,
    ComplexityClass.QUADRATIC: 200,
    ComplexityClass.LINEARITHMIC: 150,
    ComplexityClass.CONSTANT: 143,
    ComplexityClass.LOGARITHMIC: 55,
}

# directory names (normalized) accepted by the class-directory adapter
_DIR_ALIASES = {
    "1": "1",
    "o1": "1",
    "constant": "1",
    "logn": "logn",
    "ologn": "logn",
    "n": "n",
    "on": "n",
    "linear": "n",
    "nlogn": "nlogn",
    "onlogn": "nlogn",
    "nsquare": "n_square",
    "n2": "n_square",
    "onsquare": "n_square",
    "quadratic": "n_square",
}


@dataclass(frozen=True)
class CorpusManifest:
    """Validated corpus listing: root, (relative path, class) pairs, checksums."""

    root: Path
    entries: tuple[tuple[str, ComplexityClass], ...]
    checksums: dict[str, str]

    def __post_init__(self) -> None:
        if not self.entries:
            raise EmptyCorpus("manifest has no entries")
        for relpath, _ in self.entries:
            if relpath not in self.checksums:
                raise ValueError(f"missing checksum for {relpath}")

    def class_counts(self) -> dict[ComplexityClass, int]:
        counts = {cls: 0 for cls in ALL_CLASSES}
        for _, cls in self.entries:
            counts[cls] += 1
        return counts

    def __len__(self) -> int:
        return len(self.entries)


def ingest(root: str | Path, labels_file: str | Path) -> CorpusManifest:
    """Read the labels CSV, check every file, and build a manifest."""
    root = Path(root)
    rows = _read_labels_csv(labels_file)
    if not rows:
        raise EmptyCorpus(f"no rows in {labels_file}")
    entries: list[tuple[str, ComplexityClass]] = []
    checksums: dict[str, str] = {}
    for relpath, token in rows:
        try:
            cls = ComplexityClass.from_token(token)
        except ValueError as exc:
            raise UnknownLabel(f"{relpath}: {exc}") from exc
        path = root / relpath
        if not path.is_file():
            raise MissingFile(str(path))
        data = path.read_bytes()
        data.decode("utf-8")  # UnicodeDecodeError surfaces undecodable files
        entries.append((relpath, cls))
        checksums[relpath] = hashlib.sha256(data).hexdigest()
    return CorpusManifest(root=root, entries=tuple(entries), checksums=checksums)


def _read_labels_csv(path: str | Path) -> list[tuple[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return []
        if [h.strip().lower() for h in header[:2]] != ["file", "label"]:
            raise ValueError(
                f"labels file must have columns file,label; got {header!r}"
            )
        return [(row[0].strip(), row[1].strip()) for row in reader if row]


def labels_from_class_dirs(root: str | Path) -> list[tuple[str, str]]:
    """Adapter for a directory-per-class checkout: one subdirectory per label.

    Returns ``(relative path, label token)`` rows sorted by path; write them
    with :func:`write_labels_csv` to get the canonical format.
    """
    root = Path(root)
    rows: list[tuple[str, str]] = []
    for child in sorted(root.iterdir()):
        if not child.is_dir():
            continue
        key = "".join(c for c in child.name.lower() if c.isalnum())
        token = _DIR_ALIASES.get(key) or _DIR_ALIASES.get(key.lstrip("o"))
        if token is None:
            continue
        for java in sorted(child.rglob("*.java")):
            rows.append((str(java.relative_to(root)), token))
    return rows


def write_labels_csv(rows: list[tuple[str, str]], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["file", "label"])
        writer.writerows(rows)


def load_units(manifest: CorpusManifest) -> list[SourceUnit]:
    """Materialize every manifest entry as a labeled SourceUnit."""
    units = []
    for relpath, cls in manifest.entries:
        text = (manifest.root / relpath).read_text(encoding="utf-8")
        units.append(SourceUnit(id=relpath, text=text, label=cls.token))
    return units


def compare_class_counts(manifest: CorpusManifest) -> list[str]:
    """Per-class actual-versus-documented lines for the validation report.

    The documented per-class counts sum to one more than the corpus's
    documented total, so the comparison only reports what is actually on
    disk and never fails on a mismatch.
    """
    counts = manifest.class_counts()
    lines = []
    for cls in sorted(EXPECTED_CLASS_COUNTS, key=lambda c: -EXPECTED_CLASS_COUNTS[c]):
        expected = EXPECTED_CLASS_COUNTS[cls]
        actual = counts[cls]
        mark = "ok" if actual == expected else f"expected {expected}"
        lines.append(f"{cls.token}: {actual} ({mark})")
    lines.append(f"total: {len(manifest)}")
    return lines


def locate_public_corpus() -> Path | None:
    """Find a CoRCoD checkout: $CORCOD_DIR, else data/corcod near the cwd."""
    env = os.environ.get("CORCOD_DIR")
    if env:
        path = Path(env)
        if path.is_dir():
            return path
    for base in (Path.cwd(), Path(__file__).resolve().parents[2]):
        candidate = base / "data" / "corcod"
        if candidate.is_dir():
            return candidate
    return None


# ---- dataset CSV writers -----------------------------------------------------


def write_feature_csv(
    rows: list[tuple[str, FeatureVector, ComplexityClass]], path: str | Path
) -> None:
    """One row per unit: id, the 14 feature counts, label token."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", *FEATURE_NAMES, "label"])
        for uid, vector, cls in rows:
            counts = vector.as_dict()
            writer.writerow([uid, *(counts[f] for f in FEATURE_NAMES), cls.token])


def read_feature_csv(
    path: str | Path,
) -> list[tuple[str, FeatureVector, ComplexityClass]]:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            vector = FeatureVector(**{f: int(row[f]) for f in FEATURE_NAMES})
            rows.append((row["id"], vector, ComplexityClass.from_token(row["label"])))
    if not rows:
        raise EmptyCorpus(f"no rows in {path}")
    return rows


def write_density_csv(tables: list[DensityTable], path: str | Path) -> None:
    """Long-form histogram rows: feature, class, value, frequency."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["feature", "class", "value", "frequency"])
        for table in tables:
            for cls in ALL_CLASSES:
                for value, freq in table.per_class.get(cls, ()):
                    writer.writerow([table.feature, cls.token, value, repr(freq)])
