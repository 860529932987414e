"""Command-line entry point: ingest/features/embed/train/report/ablate/predict.

All artifacts land under ``<out>/run-<seed>/``; the default output root is
``$BIGO_OUT`` or ``./out``. Outputs carry no timestamps, so rerunning a
command with identical inputs and seeds rewrites byte-identical files.

Exit codes: 0 success, 1 usage error, 2 data error. Per-file parse
failures never abort a corpus run; they are logged and the file skipped.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ablation import TECHNIQUES, run_ablation_suite, write_ablation_table
from .classifiers import ALGORITHM_ORDER, ALGORITHMS, load_model, make_classifier, save_model
from .corpus import (
    CorpusManifest,
    EmptyCorpus,
    compare_class_counts,
    ingest,
    labels_from_class_dirs,
    load_units,
    write_density_csv,
    write_feature_csv,
    write_labels_csv,
)
from .embedding import EmbeddingConfig, embed_corpus, write_embeddings_csv
from .experiments import (
    class_subset_experiment,
    embedding_experiment,
    per_feature_analysis,
    run_grid,
    write_algorithm_table,
    write_embedding_table,
    write_per_feature_table,
)
from .features import (
    FEATURE_NAMES,
    EmptyClass,
    export_density,
    extract_features_from_unit,
)
from .graphs import LabelMode
from .jast.nodes import AstNode, ParseError, SourceUnit
from .jast.parser import parse
from .labels import ComplexityClass
from .metrics import evaluate
from .model_selection import stratified_split
from .validation import DimensionMismatch

log = logging.getLogger("bigo")

OUTPUT_ENV = "BIGO_OUT"
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_SUBSETS = {
    # the two 3-class comparisons: easily separated vs log-flavored classes
    5: (ComplexityClass.CONSTANT, ComplexityClass.LINEAR, ComplexityClass.QUADRATIC),
    6: (
        ComplexityClass.CONSTANT,
        ComplexityClass.LOGARITHMIC,
        ComplexityClass.LINEARITHMIC,
    ),
}


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs beyond its own flags."""

    out: Path
    root: Path | None = None
    labels: Path | None = None
    seed: int = 42
    ratio: float = 0.8
    features: tuple[str, ...] = FEATURE_NAMES
    embedding: EmbeddingConfig = field(default_factory=EmbeddingConfig)
    removal_p: float = 0.1
    ablation_samples: int = 50

    def __post_init__(self) -> None:
        if not 0.0 < self.ratio < 1.0:
            raise ValueError("ratio must be in (0, 1)")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if not 0.0 <= self.removal_p <= 1.0:
            raise ValueError("removal probability must be in [0, 1]")
        unknown = set(self.features) - set(FEATURE_NAMES)
        if unknown:
            raise ValueError(f"unknown feature names: {sorted(unknown)}")

    @property
    def run_dir(self) -> Path:
        return self.out / f"run-{self.seed}"


# ---- argument plumbing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bigo",
        description="Predict worst-case runtime complexity classes of Java sources.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--root", type=Path, help="corpus root directory")
    common.add_argument(
        "--labels",
        type=Path,
        help="labels CSV (file,label); omit to scan class-named subdirectories",
    )
    common.add_argument(
        "--out",
        type=Path,
        default=None,
        help=f"output root (default: ${OUTPUT_ENV} or ./out)",
    )
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--ratio", type=float, default=0.8, help="train fraction")

    embed_opts = argparse.ArgumentParser(add_help=False)
    embed_opts.add_argument("--dim", type=int, default=1024, help="embedding size")
    embed_opts.add_argument("--wl-depth", type=int, default=3)
    embed_opts.add_argument("--epochs", type=int, default=10)
    embed_opts.add_argument("--lr", type=float, default=0.025)
    embed_opts.add_argument("--negatives", type=int, default=5)

    p = sub.add_parser("ingest", parents=[common], help="validate a corpus")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser(
        "features", parents=[common], help="write feature and density CSVs"
    )
    p.add_argument(
        "--select", default=None, help="comma-separated feature subset (default all)"
    )
    p.set_defaults(func=_cmd_features)

    p = sub.add_parser(
        "embed", parents=[common, embed_opts], help="train graph embeddings"
    )
    p.add_argument(
        "--mode", choices=["concat", "selective"], default="concat",
        help="node label style: kind::value concatenation or selective values",
    )
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser(
        "train", parents=[common, embed_opts], help="fit classifiers and score them"
    )
    p.add_argument("--input", choices=["features", "embeddings"], required=True)
    p.add_argument(
        "--algo", choices=[*sorted(ALGORITHMS), "all"], default="all"
    )
    p.add_argument("--mode", choices=["concat", "selective"], default="concat")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser(
        "report",
        parents=[common, embed_opts],
        help="write one of the numbered report tables as CSV",
    )
    p.add_argument(
        "--table",
        type=int,
        choices=[3, 4, 5, 6, 7, 8],
        required=True,
        help=(
            "3: algorithm grid on features; 4: per-feature accuracy; "
            "5/6: three-class subsets; 7: embedding label modes; 8: ablations"
        ),
    )
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser(
        "ablate", parents=[common, embed_opts], help="run data-ablation probes"
    )
    p.add_argument("--technique", choices=[*TECHNIQUES, "all"], default="all")
    p.add_argument("--removal-p", type=float, default=0.1)
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=_cmd_ablate)

    p = sub.add_parser(
        "predict", parents=[common], help="classify one file with a saved model"
    )
    p.add_argument("file", type=Path)
    p.add_argument("--model", type=Path, required=True)
    p.set_defaults(func=_cmd_predict)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    out = args.out or Path(os.environ.get(OUTPUT_ENV, "out"))
    features = FEATURE_NAMES
    if getattr(args, "select", None):
        features = tuple(name.strip() for name in args.select.split(","))
    embedding = EmbeddingConfig(
        dimension=getattr(args, "dim", 1024),
        wl_depth=getattr(args, "wl_depth", 3),
        epochs=getattr(args, "epochs", 10),
        learning_rate=getattr(args, "lr", 0.025),
        negative_samples=getattr(args, "negatives", 5),
        seed=args.seed,
    )
    return RunConfig(
        out=out,
        root=args.root,
        labels=args.labels,
        seed=args.seed,
        ratio=args.ratio,
        features=features,
        embedding=embedding,
        removal_p=getattr(args, "removal_p", 0.1),
        ablation_samples=getattr(args, "samples", 50),
    )


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s: %(message)s"
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg.run_dir.mkdir(parents=True, exist_ok=True)
    try:
        return args.func(cfg, args)
    except (ValueError, ParseError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


# ---- shared corpus plumbing ----------------------------------------------------


def _manifest(cfg: RunConfig) -> CorpusManifest:
    if cfg.root is None:
        raise ValueError("--root is required for corpus commands")
    labels = cfg.labels
    if labels is None:
        rows = labels_from_class_dirs(cfg.root)
        if not rows:
            raise EmptyCorpus(
                f"{cfg.root}: no labels file given and no class-named "
                "subdirectories with .java files found"
            )
        labels = cfg.run_dir / "labels.csv"
        write_labels_csv(rows, labels)
    return ingest(cfg.root, labels)


def _parsed_units(units: list[SourceUnit]) -> list[tuple[SourceUnit, AstNode]]:
    parsed = []
    failures = 0
    for unit in units:
        try:
            parsed.append((unit, parse(unit)))
        except ParseError as exc:
            failures += 1
            log.warning("skipping %s: %s", unit.id, exc)
    if failures:
        log.info("parsed %d/%d files", len(parsed), len(units))
    return parsed


def _feature_dataset(cfg: RunConfig):
    """ids, matrix (selected columns), labels, and the full CSV rows."""
    manifest = _manifest(cfg)
    parsed = _parsed_units(load_units(manifest))
    if not parsed:
        raise EmptyCorpus(f"{cfg.root}: no file parsed successfully")
    rows = []
    for unit, root in parsed:
        try:
            vector = extract_features_from_unit(root)
        except ValueError as exc:  # e.g. a type with no methods at all
            log.warning("skipping %s: %s", unit.id, exc)
            continue
        rows.append((unit.id, vector, ComplexityClass.from_token(unit.label)))
    if not rows:
        raise EmptyCorpus(f"{cfg.root}: no file yielded a feature vector")
    ids = [uid for uid, _, _ in rows]
    columns = [FEATURE_NAMES.index(name) for name in cfg.features]
    X = np.vstack([vector.as_array()[columns] for _, vector, _ in rows])
    y = np.array([int(cls) for _, _, cls in rows], dtype=np.int64)
    return ids, X, y, rows


def _embedding_dataset(cfg: RunConfig, mode: LabelMode):
    manifest = _manifest(cfg)
    units = load_units(manifest)
    vectors = embed_corpus(units, mode, cfg.embedding)
    if not vectors:
        raise EmptyCorpus(f"{cfg.root}: no file parsed successfully")
    labels_by_id = {
        u.id: int(ComplexityClass.from_token(u.label)) for u in units
    }
    ids = sorted(vectors)
    X = np.vstack([vectors[uid] for uid in ids])
    y = np.array([labels_by_id[uid] for uid in ids], dtype=np.int64)
    return ids, X, y, vectors


# ---- commands ------------------------------------------------------------------


def _cmd_ingest(cfg: RunConfig, args: argparse.Namespace) -> int:
    manifest = _manifest(cfg)
    with open(cfg.run_dir / "manifest.csv", "w", newline="") as fh:
        fh.write("file,label,sha256\n")
        for relpath, cls in manifest.entries:
            fh.write(f"{relpath},{cls.token},{manifest.checksums[relpath]}\n")
    parsed = _parsed_units(load_units(manifest))
    report_lines = compare_class_counts(manifest)
    report_lines.append(f"parsed: {len(parsed)}/{len(manifest)}")
    (cfg.run_dir / "validation.txt").write_text("\n".join(report_lines) + "\n")
    print("\n".join(report_lines))
    return EXIT_OK


def _cmd_features(cfg: RunConfig, args: argparse.Namespace) -> int:
    _, _, _, rows = _feature_dataset(cfg)
    write_feature_csv(rows, cfg.run_dir / "features.csv")
    corpus = [(vector, cls) for _, vector, cls in rows]
    try:
        tables = [export_density(corpus, name) for name in cfg.features]
        write_density_csv(tables, cfg.run_dir / "density.csv")
    except EmptyClass as exc:
        log.warning("density export skipped: %s", exc)
    print(f"wrote features for {len(rows)} files to {cfg.run_dir}")
    return EXIT_OK


def _cmd_embed(cfg: RunConfig, args: argparse.Namespace) -> int:
    mode = LabelMode.from_token(args.mode)
    _, _, _, vectors = _embedding_dataset(cfg, mode)
    path = cfg.run_dir / f"embeddings-{mode.value}.csv"
    write_embeddings_csv(vectors, path)
    print(f"wrote {len(vectors)} embeddings to {path}")
    return EXIT_OK


def _cmd_train(cfg: RunConfig, args: argparse.Namespace) -> int:
    if args.input == "features":
        ids, X, y, _ = _feature_dataset(cfg)
        stem = "features"
    else:
        mode = LabelMode.from_token(args.mode)
        ids, X, y, _ = _embedding_dataset(cfg, mode)
        stem = f"embeddings-{mode.value}"
    split = stratified_split(ids, X, y, ratio=cfg.ratio, seed=cfg.seed)
    classes = tuple(int(c) for c in np.unique(y))
    algorithms = ALGORITHM_ORDER if args.algo == "all" else (args.algo,)
    for algo in algorithms:
        model = make_classifier(algo, seed=cfg.seed)
        model.fit(split.X_train, split.y_train)
        report = evaluate(split.y_test, model.predict(split.X_test), classes)
        save_model(model, cfg.run_dir / f"model-{stem}-{algo}.bin")
        (cfg.run_dir / f"eval-{stem}-{algo}.json").write_text(report.to_json())
        print(f"{algo}: accuracy {report.accuracy:.2f}")
    return EXIT_OK


def _cmd_report(cfg: RunConfig, args: argparse.Namespace) -> int:
    path = cfg.run_dir / f"table-{args.table}.csv"
    if args.table == 3:
        ids, X, y, _ = _feature_dataset(cfg)
        write_algorithm_table(
            run_grid(ids, X, y, ratio=cfg.ratio, seed=cfg.seed), path
        )
    elif args.table == 4:
        ids, X, y, _ = _feature_dataset(cfg)
        write_per_feature_table(
            per_feature_analysis(ids, X, y, ratio=cfg.ratio, seed=cfg.seed), path
        )
    elif args.table in _SUBSETS:
        ids, X, y, _ = _feature_dataset(cfg)
        results = class_subset_experiment(
            ids, X, y, _SUBSETS[args.table], ratio=cfg.ratio, seed=cfg.seed
        )
        write_algorithm_table(results, path)
    elif args.table == 7:
        vectors_by_mode = {}
        labels_by_id = {}
        for mode in (LabelMode.CONCATENATED, LabelMode.SELECTIVE):
            ids, _, y, vectors = _embedding_dataset(cfg, mode)
            vectors_by_mode[mode.value] = vectors
            labels_by_id.update(zip(ids, (int(v) for v in y)))
        reports = embedding_experiment(
            vectors_by_mode, labels_by_id, ratio=cfg.ratio, seed=cfg.seed
        )
        write_embedding_table(reports, path)
    else:
        return _write_ablation_outputs(cfg, TECHNIQUES, path)
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_ablate(cfg: RunConfig, args: argparse.Namespace) -> int:
    wanted = TECHNIQUES if args.technique == "all" else (args.technique,)
    return _write_ablation_outputs(cfg, wanted, cfg.run_dir / "ablation.csv")


def _write_ablation_outputs(
    cfg: RunConfig, techniques: tuple[str, ...], path: Path
) -> int:
    manifest = _manifest(cfg)
    reports = run_ablation_suite(
        load_units(manifest),
        seed=cfg.seed,
        ratio=cfg.ratio,
        embedding_cfg=cfg.embedding,
        removal_p=cfg.removal_p,
        n_samples=cfg.ablation_samples,
    )
    reports = [r for r in reports if r.technique in techniques]
    write_ablation_table(reports, path)
    entries = [
        {
            "technique": r.technique,
            "pipeline": r.pipeline,
            "value": r.value,
            "samples": {
                uid: {"before": before, "after": after}
                for uid, (before, after) in sorted(r.detail.items())
            },
        }
        for r in reports
    ]
    log_path = path.with_suffix(".json")
    log_path.write_text(json.dumps(entries, indent=2) + "\n")
    print(f"wrote {path} and {log_path}")
    return EXIT_OK


def _cmd_predict(cfg: RunConfig, args: argparse.Namespace) -> int:
    model = load_model(args.model)
    text = args.file.read_text(encoding="utf-8")
    root = parse(SourceUnit(id=args.file.name, text=text))
    vector = extract_features_from_unit(root).as_array().reshape(1, -1)
    try:
        prediction = int(model.predict(vector)[0])
    except DimensionMismatch as exc:
        raise DimensionMismatch(
            f"{exc}; single-file prediction needs a feature-pipeline model "
            "(embedding models score only corpus members)"
        ) from exc
    print(ComplexityClass(prediction).token)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
