"""Data-ablation transforms and the four-technique experiment runner.

Four probes of what the trained pipelines actually rely on:

- label_shuffle: retrain with permuted training labels, report test accuracy
- name_alteration: rename declared method/variable names to synthetic
  tokens, report the fraction of samples whose prediction is unchanged
- constant_inputs: replace input-read expressions with a literal, report
  the fraction of samples newly predicted constant-time
- substructure_removal: delete loop/if statements with probability p,
  report the fraction of samples still predicted correctly

Transforms are token-splicing (rename, constant inputs) or AST-level with
re-printing (substructure removal); both routes guarantee re-parseable
output.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .embedding import EmbeddingConfig, embed_corpus
from .features import extract_features_from_unit
from .graphs import LabelMode
from .jast.callgraph import build_call_graph
from .jast.lexer import TOK_IDENT, tokenize
from .jast.nodes import AstNode, NodeKind, ParseError, SourceUnit
from .jast.parser import parse
from .jast.printer import print_unit
from .labels import ComplexityClass
from .metrics import evaluate
from .model_selection import DatasetSplit, stratified_split
from .classifiers import make_classifier

TECHNIQUES = (
    "label_shuffle",
    "name_alteration",
    "constant_inputs",
    "substructure_removal",
)

PIPELINES = ("features", "embeddings_concat", "embeddings_selective")

# syntactic input-read idioms (scanner/reader method names)
READ_METHODS = frozenset(
    {
        "next",
        "nextInt",
        "nextLong",
        "nextDouble",
        "nextFloat",
        "nextShort",
        "nextByte",
        "nextBoolean",
        "nextBigInteger",
        "nextLine",
        "read",
        "readLine",
        "readInt",
        "readLong",
        "readDouble",
        "readString",
    }
)

# names never renamed: the entry point and the library names features key on
PRESERVED_NAMES = frozenset({"main", "sort", "HashMap", "HashSet", "PriorityQueue"})

REMOVABLE_KINDS = frozenset(
    {
        NodeKind.FOR_LOOP,
        NodeKind.ENHANCED_FOR_LOOP,
        NodeKind.WHILE_LOOP,
        NodeKind.DO_LOOP,
        NodeKind.IF,
    }
)


class NoInputDetected(ValueError):
    """constant_inputs found no input-read expression to replace."""


# ---- transforms -------------------------------------------------------------


def shuffle_labels(split: DatasetSplit, seed: int) -> DatasetSplit:
    """Permute training labels uniformly; vectors and test set untouched."""
    rng = np.random.default_rng(seed)
    permuted = split.y_train[rng.permutation(split.y_train.shape[0])]
    return split.with_train_labels(permuted)


def rename_identifiers(unit: SourceUnit, seed: int = 0) -> SourceUnit:
    """Consistently rename declared method and variable names.

    Methods become m0, m1, ... and variables v0, v1, ... in declaration
    order; replacement is token-level, so comments and spacing survive.
    Names also used as type names, plus the preserved library names, are
    left alone.
    """
    root = parse(unit)
    protected = set(PRESERVED_NAMES)
    method_names: list[str] = []
    variable_names: list[str] = []
    for node in root.walk():
        if node.kind is NodeKind.CLASS_DECLARATION and node.value:
            protected.add(node.value)
        elif node.kind is NodeKind.TYPE_REFERENCE and node.value:
            protected.add(node.value)
        elif node.kind is NodeKind.OBJECT_CREATION and node.value:
            protected.add(node.value)
        elif node.kind is NodeKind.METHOD_DECLARATION and node.value:
            if not node.meta.get("ctor") and node.value not in method_names:
                method_names.append(node.value)
        elif node.kind is NodeKind.VARIABLE_DECLARATION and node.value:
            if node.value not in variable_names:
                variable_names.append(node.value)

    tokens = tokenize(unit.text)
    taken = {t.text for t in tokens if t.type == TOK_IDENT}
    mapping: dict[str, str] = {}

    def fresh(prefix: str, counter: int) -> tuple[str, int]:
        while f"{prefix}{counter}" in taken:
            counter += 1
        name = f"{prefix}{counter}"
        taken.add(name)
        return name, counter + 1

    mi = vi = 0
    for name in method_names:
        if name in protected or name in mapping:
            continue
        mapping[name], mi = fresh("m", mi)
    for name in variable_names:
        if name in protected or name in mapping:
            continue
        mapping[name], vi = fresh("v", vi)

    if not mapping:
        return unit
    pieces: list[str] = []
    cursor = 0
    for tok in tokens:
        if tok.type == TOK_IDENT and tok.text in mapping:
            pieces.append(unit.text[cursor : tok.offset])
            pieces.append(mapping[tok.text])
            cursor = tok.end
    pieces.append(unit.text[cursor:])
    return SourceUnit(id=unit.id, text="".join(pieces), label=unit.label)


def constant_inputs(unit: SourceUnit, literal: int = 10) -> SourceUnit:
    """Replace each outermost input-read expression with a fixed literal."""
    root = parse(unit)
    spans: list[tuple[int, int]] = []
    for node in root.walk():
        if (
            node.kind is NodeKind.METHOD_INVOCATION
            and node.value in READ_METHODS
            and "off" in node.meta
        ):
            spans.append(tuple(node.meta["off"]))
    if not spans:
        raise NoInputDetected(f"{unit.id}: no input-read expression found")
    spans.sort()
    outermost: list[tuple[int, int]] = []
    for span in spans:
        if outermost and span[0] < outermost[-1][1]:
            continue  # nested inside the previous replacement
        outermost.append(span)
    pieces: list[str] = []
    cursor = 0
    for start, end in outermost:
        pieces.append(unit.text[cursor:start])
        pieces.append(str(literal))
        cursor = end
    pieces.append(unit.text[cursor:])
    return SourceUnit(id=unit.id, text="".join(pieces), label=unit.label)


def remove_substructures(unit: SourceUnit, p: float, seed: int) -> SourceUnit:
    """Delete loop/if statements independently with probability p, top-down.

    The tree is pretty-printed afterwards, so the output always re-parses.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be a probability")
    root = parse(unit)
    rng = np.random.default_rng(seed)

    def prune(node: AstNode) -> None:
        kept: list[AstNode] = []
        for child in node.children:
            if child.kind in REMOVABLE_KINDS and rng.random() < p:
                continue  # drop the whole subtree, never resampled
            kept.append(child)
        node.children = kept
        for child in node.children:
            prune(child)

    prune(root)
    return SourceUnit(id=unit.id, text=print_unit(root), label=unit.label)


# ---- suite ------------------------------------------------------------------


@dataclass(frozen=True)
class AblationReport:
    technique: str
    pipeline: str
    value: float | None  # percent; None renders as NA
    sample_ids: tuple[str, ...] = ()
    detail: dict[str, tuple[int, int]] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.technique not in TECHNIQUES:
            raise ValueError(f"unknown technique {self.technique!r}")
        if self.pipeline not in PIPELINES:
            raise ValueError(f"unknown pipeline {self.pipeline!r}")
        if self.value is not None and not 0.0 <= self.value <= 100.0:
            raise ValueError("value must be a percentage")


@dataclass
class _Pipeline:
    """A trained baseline: vectors for each unit, one classifier, one split."""

    name: str
    algorithm: str
    vectors: dict[str, np.ndarray]
    split: DatasetSplit
    model: object
    test_pred: dict[str, int]
    correct_ids: list[str]


def run_ablation_suite(
    units: list[SourceUnit],
    seed: int = 42,
    ratio: float = 0.8,
    embedding_cfg: EmbeddingConfig | None = None,
    feature_algorithm: str = "random_forest",
    embedding_algorithm: str = "svm",
    removal_p: float = 0.1,
    n_samples: int = 50,
) -> list[AblationReport]:
    """Run all four techniques against all three trained baselines."""
    if embedding_cfg is None:
        embedding_cfg = EmbeddingConfig(seed=seed)
    units = [u for u in units if u.label is not None]
    labels_by_id = {
        u.id: int(ComplexityClass.from_token(u.label)) for u in units
    }
    parseable = []
    for u in units:
        try:
            root = parse(u)
        except ParseError:
            continue
        if not build_call_graph(root).declarations:
            continue  # no methods, so no feature vector; keep pipelines aligned
        parseable.append(u)
    units = parseable
    units_by_id = {u.id: u for u in units}

    pipelines = {
        "features": _fit_feature_pipeline(
            units, labels_by_id, feature_algorithm, ratio, seed
        ),
        "embeddings_concat": _fit_embedding_pipeline(
            units, labels_by_id, LabelMode.CONCATENATED, embedding_cfg,
            embedding_algorithm, ratio, seed,
        ),
        "embeddings_selective": _fit_embedding_pipeline(
            units, labels_by_id, LabelMode.SELECTIVE, embedding_cfg,
            embedding_algorithm, ratio, seed,
        ),
    }

    reports: list[AblationReport] = []
    for name, pipe in pipelines.items():
        shuffled = shuffle_labels(pipe.split, seed)
        model = make_classifier(pipe.algorithm, seed=seed)
        model.fit(shuffled.X_train, shuffled.y_train)
        classes = tuple(int(c) for c in np.unique(shuffled.y_train))
        report = evaluate(shuffled.y_test, model.predict(shuffled.X_test), classes)
        reports.append(
            AblationReport(
                technique="label_shuffle",
                pipeline=name,
                value=report.accuracy,
                sample_ids=tuple(pipe.split.test_ids),
            )
        )

    rng = np.random.default_rng(seed)
    for name, pipe in pipelines.items():
        if name == "features":
            reports.append(
                AblationReport("name_alteration", name, None)
            )
            continue
        chosen = _choose(pipe.correct_ids, n_samples, rng)
        transformed = {
            uid: rename_identifiers(units_by_id[uid], seed) for uid in chosen
        }
        after = _reembed_and_predict(
            units, transformed, labels_by_id, pipe, embedding_cfg, seed
        )
        same = sum(
            1 for uid in chosen if after[uid] == pipe.test_pred[uid]
        )
        reports.append(
            AblationReport(
                technique="name_alteration",
                pipeline=name,
                value=100.0 * same / len(chosen) if chosen else 0.0,
                sample_ids=tuple(chosen),
                detail={u: (pipe.test_pred[u], after[u]) for u in chosen},
            )
        )

    constant_cls = int(ComplexityClass.CONSTANT)
    rng = np.random.default_rng(seed + 1)
    for name, pipe in pipelines.items():
        if name == "features":
            reports.append(
                AblationReport("constant_inputs", name, None)
            )
            continue
        candidates = [
            uid for uid in pipe.correct_ids if labels_by_id[uid] != constant_cls
        ]
        transformed: dict[str, SourceUnit] = {}
        for uid in _choose(candidates, n_samples * 2, rng):
            if len(transformed) >= n_samples:
                break
            try:
                transformed[uid] = constant_inputs(units_by_id[uid])
            except NoInputDetected:
                continue
        chosen = sorted(transformed)
        after = _reembed_and_predict(
            units, transformed, labels_by_id, pipe, embedding_cfg, seed
        )
        converted = sum(1 for uid in chosen if after[uid] == constant_cls)
        reports.append(
            AblationReport(
                technique="constant_inputs",
                pipeline=name,
                value=100.0 * converted / len(chosen) if chosen else 0.0,
                sample_ids=tuple(chosen),
                detail={u: (pipe.test_pred[u], after[u]) for u in chosen},
            )
        )

    rng = np.random.default_rng(seed + 2)
    for name, pipe in pipelines.items():
        chosen = _choose(pipe.correct_ids, n_samples, rng)
        transformed = {
            uid: remove_substructures(units_by_id[uid], removal_p, seed)
            for uid in chosen
        }
        if name == "features":
            after = {}
            for uid in chosen:
                vec = extract_features_from_unit(
                    parse(transformed[uid])
                ).as_array()
                after[uid] = int(pipe.model.predict(vec.reshape(1, -1))[0])
        else:
            after = _reembed_and_predict(
                units, transformed, labels_by_id, pipe, embedding_cfg, seed
            )
        still = sum(1 for uid in chosen if after[uid] == labels_by_id[uid])
        reports.append(
            AblationReport(
                technique="substructure_removal",
                pipeline=name,
                value=100.0 * still / len(chosen) if chosen else 0.0,
                sample_ids=tuple(chosen),
                detail={u: (pipe.test_pred[u], after[u]) for u in chosen},
            )
        )

    return reports


def _choose(candidates: list[str], n: int, rng) -> list[str]:
    ordered = sorted(candidates)
    if len(ordered) <= n:
        return ordered
    picked = rng.choice(len(ordered), size=n, replace=False)
    return sorted(ordered[i] for i in picked)


def _fit_feature_pipeline(
    units: list[SourceUnit],
    labels_by_id: dict[str, int],
    algorithm: str,
    ratio: float,
    seed: int,
) -> _Pipeline:
    vectors = {
        u.id: extract_features_from_unit(parse(u)).as_array() for u in units
    }
    return _fit_pipeline("features", algorithm, vectors, labels_by_id, ratio, seed)


def _fit_embedding_pipeline(
    units: list[SourceUnit],
    labels_by_id: dict[str, int],
    mode: LabelMode,
    cfg: EmbeddingConfig,
    algorithm: str,
    ratio: float,
    seed: int,
) -> _Pipeline:
    vectors = embed_corpus(units, mode, cfg)
    name = (
        "embeddings_concat"
        if mode is LabelMode.CONCATENATED
        else "embeddings_selective"
    )
    return _fit_pipeline(name, algorithm, vectors, labels_by_id, ratio, seed)


def _fit_pipeline(
    name: str,
    algorithm: str,
    vectors: dict[str, np.ndarray],
    labels_by_id: dict[str, int],
    ratio: float,
    seed: int,
) -> _Pipeline:
    ids = sorted(vectors)
    X = np.vstack([vectors[i] for i in ids])
    y = np.array([labels_by_id[i] for i in ids], dtype=np.int64)
    split = stratified_split(ids, X, y, ratio=ratio, seed=seed)
    model = make_classifier(algorithm, seed=seed)
    model.fit(split.X_train, split.y_train)
    pred = model.predict(split.X_test)
    test_pred = {uid: int(p) for uid, p in zip(split.test_ids, pred)}
    correct = [
        uid for uid in split.test_ids if test_pred[uid] == labels_by_id[uid]
    ]
    return _Pipeline(
        name=name,
        algorithm=algorithm,
        vectors=vectors,
        split=split,
        model=model,
        test_pred=test_pred,
        correct_ids=correct,
    )


def _reembed_and_predict(
    units: list[SourceUnit],
    transformed: dict[str, SourceUnit],
    labels_by_id: dict[str, int],
    pipe: _Pipeline,
    cfg: EmbeddingConfig,
    seed: int,
) -> dict[str, int]:
    """Swap transformed units into the corpus, re-embed, retrain, predict."""
    mode = (
        LabelMode.CONCATENATED
        if pipe.name == "embeddings_concat"
        else LabelMode.SELECTIVE
    )
    swapped = [transformed.get(u.id, u) for u in units]
    vectors = embed_corpus(swapped, mode, cfg)
    train_ids = [uid for uid in pipe.split.train_ids if uid in vectors]
    X_train = np.vstack([vectors[uid] for uid in train_ids])
    y_train = np.array([labels_by_id[uid] for uid in train_ids], dtype=np.int64)
    model = make_classifier(pipe.algorithm, seed=seed)
    model.fit(X_train, y_train)
    out: dict[str, int] = {}
    for uid in transformed:
        if uid not in vectors:
            out[uid] = -1  # transformed unit failed to parse; count as changed
            continue
        out[uid] = int(model.predict(vectors[uid].reshape(1, -1))[0])
    return out


def write_ablation_table(reports: list[AblationReport], path) -> None:
    """Technique rows, pipeline columns, NA where not applicable."""
    display = {
        "label_shuffle": "Label Shuffling",
        "name_alteration": "Method/Variable Name Alteration",
        "constant_inputs": "Replacing Input Variables with Constant Literals",
        "substructure_removal": "Removing Graph Substructures",
    }
    cells: dict[tuple[str, str], str] = {}
    for report in reports:
        value = "NA" if report.value is None else f"{report.value:.2f}"
        cells[(report.technique, report.pipeline)] = value
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "Ablation Technique",
                "Feature Engineering",
                "Graph2vec: With Concatenation",
                "Graph2vec: Without Concatenation",
            ]
        )
        present = {report.technique for report in reports}
        for tech in TECHNIQUES:
            if tech not in present:
                continue
            writer.writerow(
                [display[tech]]
                + [cells.get((tech, p), "NA") for p in PIPELINES]
            )
