"""Skipgram graph embeddings over WL rooted-subgraph contexts.

Each graph is a "document" whose "words" are its rooted subgraphs. Training
maximizes sigma(graph_vec . subgraph_vec) for observed pairs against
negatives drawn from the unigram subgraph distribution raised to 3/4, by
stochastic gradient ascent with a per-epoch linearly decaying rate.

The reference update loop is single-threaded and seeded, so runs are
bit-identical. The hot loop is JIT-compiled when numba is importable and
falls back to the same arithmetic in pure Python otherwise.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .base import BaseEstimator, TransformerMixin, check_is_fitted
from .graphs import LabeledGraph, LabelMode, ast_to_graph, extract_rooted_subgraphs
from .jast.nodes import ParseError, SourceUnit
from .jast.parser import parse

log = logging.getLogger(__name__)

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def deco(fn):
            return fn

        return deco if not (args and callable(args[0])) else args[0]


class EmptyVocabulary(ValueError):
    """No subgraphs were extracted from the corpus."""


@dataclass(frozen=True)
class EmbeddingConfig:
    dimension: int = 1024
    wl_depth: int = 3
    epochs: int = 10
    learning_rate: float = 0.025
    negative_samples: int = 5
    seed: int = 42

    def __post_init__(self) -> None:
        if self.dimension <= 0:
            raise ValueError("dimension must be positive")
        if self.wl_depth < 0:
            raise ValueError("wl_depth must be non-negative")
        if self.negative_samples < 1:
            raise ValueError("negative_samples must be at least 1")
        if self.epochs < 0:
            raise ValueError("epochs must be non-negative")


@dataclass
class SubgraphVocabulary:
    """Dense ids for subgraph labels plus per-graph context multisets."""

    entries: dict[str, int]
    counts: np.ndarray  # occurrences per id across the corpus
    contexts: dict[str, Counter[int]]  # graph id -> multiset of subgraph ids

    @property
    def total_count(self) -> int:
        return int(self.counts.sum())

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def build(cls, graphs: list[LabeledGraph], wl_depth: int) -> "SubgraphVocabulary":
        entries: dict[str, int] = {}
        contexts: dict[str, Counter[int]] = {}
        raw_counts: list[int] = []
        for graph in graphs:
            multiset = extract_rooted_subgraphs(graph, wl_depth)
            ctx: Counter[int] = Counter()
            for label, count in multiset.items():
                sid = entries.get(label)
                if sid is None:
                    sid = len(entries)
                    entries[label] = sid
                    raw_counts.append(0)
                raw_counts[sid] += count
                ctx[sid] += count
            contexts[graph.graph_id] = ctx
        return cls(
            entries=entries,
            counts=np.array(raw_counts, dtype=np.int64),
            contexts=contexts,
        )

    def noise_distribution(self) -> np.ndarray:
        powered = self.counts.astype(np.float64) ** 0.75
        return powered / powered.sum()


@dataclass
class EmbeddingModel:
    dimension: int
    graph_vectors: dict[str, np.ndarray]
    subgraph_vectors: dict[int, np.ndarray]
    config: EmbeddingConfig
    objective_history: list[float] = field(default_factory=list)

    def matrix(self, ids: list[str]) -> np.ndarray:
        return np.vstack([self.graph_vectors[i] for i in ids])


@njit(cache=True)
def _sgns_epoch_jit(gvecs, svecs, pair_g, pair_s, negatives, lr):  # pragma: no cover
    n_pairs = pair_g.shape[0]
    n_neg = negatives.shape[1]
    dim = gvecs.shape[1]
    for p in range(n_pairs):
        gi = pair_g[p]
        accum = np.zeros(dim)
        for t in range(n_neg + 1):
            if t == 0:
                si = pair_s[p]
                label = 1.0
            else:
                si = negatives[p, t - 1]
                label = 0.0
            dot = 0.0
            for d in range(dim):
                dot += gvecs[gi, d] * svecs[si, d]
            f = 1.0 / (1.0 + np.exp(-dot))
            coef = lr * (label - f)
            for d in range(dim):
                accum[d] += coef * svecs[si, d]
                svecs[si, d] += coef * gvecs[gi, d]
        for d in range(dim):
            gvecs[gi, d] += accum[d]


def _sgns_epoch_py(gvecs, svecs, pair_g, pair_s, negatives, lr):
    n_neg = negatives.shape[1]
    for p in range(pair_g.shape[0]):
        gi = int(pair_g[p])
        accum = np.zeros(gvecs.shape[1])
        for t in range(n_neg + 1):
            if t == 0:
                si = int(pair_s[p])
                label = 1.0
            else:
                si = int(negatives[p, t - 1])
                label = 0.0
            dot = float(np.dot(gvecs[gi], svecs[si]))
            f = 1.0 / (1.0 + np.exp(-dot))
            coef = lr * (label - f)
            accum += coef * svecs[si]
            svecs[si] += coef * gvecs[gi]
        gvecs[gi] += accum


_sgns_epoch = _sgns_epoch_jit if _HAVE_NUMBA else _sgns_epoch_py


def train_embeddings(
    graphs: list[LabeledGraph], cfg: EmbeddingConfig
) -> EmbeddingModel:
    """Learn graph and subgraph vectors over the full corpus (transductive)."""
    vocab = SubgraphVocabulary.build(graphs, cfg.wl_depth)
    if vocab.size == 0:
        raise EmptyVocabulary("no subgraphs extracted; corpus is empty")
    graph_ids = [g.graph_id for g in graphs]
    rng = np.random.default_rng(cfg.seed)
    scale = 0.5 / cfg.dimension
    gvecs = rng.uniform(-scale, scale, size=(len(graphs), cfg.dimension))
    svecs = rng.uniform(-scale, scale, size=(vocab.size, cfg.dimension))

    pair_g_list: list[int] = []
    pair_s_list: list[int] = []
    for gi, gid in enumerate(graph_ids):
        for sid in sorted(vocab.contexts[gid]):
            count = vocab.contexts[gid][sid]
            pair_g_list.extend([gi] * count)
            pair_s_list.extend([sid] * count)
    pair_g = np.array(pair_g_list, dtype=np.int64)
    pair_s = np.array(pair_s_list, dtype=np.int64)
    noise = vocab.noise_distribution()

    eval_rng = np.random.default_rng(cfg.seed + 1)
    eval_negs = eval_rng.choice(
        vocab.size, size=(pair_g.shape[0], cfg.negative_samples), p=noise
    )

    history: list[float] = []
    for epoch in range(cfg.epochs):
        lr = cfg.learning_rate * (1.0 - epoch / max(cfg.epochs, 1))
        order = rng.permutation(pair_g.shape[0])
        negatives = rng.choice(
            vocab.size, size=(pair_g.shape[0], cfg.negative_samples), p=noise
        )
        _sgns_epoch(gvecs, svecs, pair_g[order], pair_s[order], negatives, lr)
        history.append(
            _surrogate_objective(gvecs, svecs, pair_g, pair_s, eval_negs)
        )

    return EmbeddingModel(
        dimension=cfg.dimension,
        graph_vectors={gid: gvecs[i].copy() for i, gid in enumerate(graph_ids)},
        subgraph_vectors={sid: svecs[sid].copy() for sid in range(vocab.size)},
        config=cfg,
        objective_history=history,
    )


def _surrogate_objective(gvecs, svecs, pair_g, pair_s, negatives) -> float:
    """Mean of log sigma(positive) + sum of log sigma(-negative) per pair.

    Computed in blocks to keep memory flat at large dimension.
    """
    n = pair_g.shape[0]
    block = max(1, 1 << 22 >> max(gvecs.shape[1].bit_length(), 1))
    total = 0.0
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        g = gvecs[pair_g[lo:hi]]
        pos = np.einsum("ij,ij->i", g, svecs[pair_s[lo:hi]])
        part = -np.logaddexp(0.0, -pos)
        for k in range(negatives.shape[1]):
            neg = np.einsum("ij,ij->i", g, svecs[negatives[lo:hi, k]])
            part = part - np.logaddexp(0.0, neg)
        total += float(part.sum())
    return total / n


def embed_corpus(
    units: list[SourceUnit],
    mode: LabelMode,
    cfg: EmbeddingConfig | None = None,
) -> dict[str, np.ndarray]:
    """Parse, convert, extract, and train; returns id -> vector.

    Units that fail to parse are logged and skipped, not fatal.
    """
    if cfg is None:
        cfg = EmbeddingConfig()
    graphs: list[LabeledGraph] = []
    for unit in units:
        try:
            root = parse(unit)
        except ParseError as exc:
            log.warning("skipping %s: %s", unit.id, exc)
            continue
        graphs.append(ast_to_graph(root, mode, graph_id=unit.id))
    if not graphs:
        return {}
    model = train_embeddings(graphs, cfg)
    return dict(model.graph_vectors)


class GraphEmbedder(BaseEstimator, TransformerMixin):
    """Estimator wrapper: fit on source units or labeled graphs, look vectors
    up by id.

    Embeddings are transductive; transform only answers for graphs that
    were part of fit. It accepts graph ids directly as well as the units or
    graphs they came from.
    """

    def __init__(
        self,
        dimension: int = 1024,
        wl_depth: int = 3,
        epochs: int = 10,
        learning_rate: float = 0.025,
        negative_samples: int = 5,
        seed: int = 42,
        label_mode: str = "concat",
    ):
        self.dimension = dimension
        self.wl_depth = wl_depth
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.negative_samples = negative_samples
        self.seed = seed
        self.label_mode = label_mode

    def _config(self) -> EmbeddingConfig:
        return EmbeddingConfig(
            dimension=self.dimension,
            wl_depth=self.wl_depth,
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            negative_samples=self.negative_samples,
            seed=self.seed,
        )

    def fit(self, X, y=None) -> "GraphEmbedder":
        mode = LabelMode.from_token(self.label_mode)
        graphs = [
            ast_to_graph(parse(item), mode, graph_id=item.id)
            if isinstance(item, SourceUnit)
            else item
            for item in X
        ]
        self.model_ = train_embeddings(graphs, self._config())
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "model_")
        ids = [
            item
            if isinstance(item, str)
            else (item.id if isinstance(item, SourceUnit) else item.graph_id)
            for item in X
        ]
        missing = [gid for gid in ids if gid not in self.model_.graph_vectors]
        if missing:
            raise KeyError(
                f"graphs not seen during fit (transductive embeddings): {missing[:3]}"
            )
        return self.model_.matrix(ids)


# ---- serialization ----------------------------------------------------------


def write_embeddings_csv(vectors: dict[str, np.ndarray], path) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        first = next(iter(vectors.values())) if vectors else np.array([])
        writer.writerow(["id"] + [f"e{i}" for i in range(len(first))])
        for uid in sorted(vectors):
            writer.writerow([uid] + [repr(float(v)) for v in vectors[uid]])


def read_embeddings_csv(path) -> dict[str, np.ndarray]:
    import csv

    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:1] != ["id"]:
            raise ValueError("embedding CSV must start with an id column")
        return {
            row[0]: np.array([float(v) for v in row[1:]], dtype=np.float64)
            for row in reader
        }


def write_embeddings_binary(vectors: dict[str, np.ndarray], path) -> None:
    """Header line "dimension count\\n", then per record an id line followed
    by dimension little-endian float32 values."""
    ids = sorted(vectors)
    dim = len(vectors[ids[0]]) if ids else 0
    with open(path, "wb") as fh:
        fh.write(f"{dim} {len(ids)}\n".encode("utf-8"))
        for uid in ids:
            fh.write(uid.encode("utf-8") + b"\n")
            fh.write(vectors[uid].astype("<f4").tobytes())


def read_embeddings_binary(path) -> dict[str, np.ndarray]:
    result: dict[str, np.ndarray] = {}
    with open(path, "rb") as fh:
        dim, count = (int(x) for x in fh.readline().split())
        for _ in range(count):
            uid = fh.readline().rstrip(b"\n").decode("utf-8")
            data = fh.read(4 * dim)
            result[uid] = np.frombuffer(data, dtype="<f4").astype(np.float64)
    return result
