"""Dense embedding tables, the textual vector interchange format, and a
skip-gram negative-sampling trainer.

The supervised table is shared by word and n-gram indices through disjoint
offset ranges (the network owns the offset arithmetic).  Pretrained vectors
live in a separate read-only map keyed by surface form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import FormatError, TrainingError
from .numerics import safe_log, sigmoid
from .util import derive_seed

INIT_RANGE = 0.2  # supervised rows start uniform in [-INIT_RANGE, INIT_RANGE]


@dataclass
class EmbeddingTable:
    """Trainable (num_entries x dim) matrix; the rows listed in
    ``pad_rows`` are pinned at zero and must receive zero gradient."""

    weights: np.ndarray
    pad_rows: tuple[int, ...] = (0,)

    @property
    def num_entries(self) -> int:
        return self.weights.shape[0]

    @property
    def dim(self) -> int:
        return self.weights.shape[1]

    def copy(self) -> "EmbeddingTable":
        return EmbeddingTable(self.weights.copy(), self.pad_rows)


def init_embedding(
    num_entries: int, dim: int, seed: int, pad_rows: tuple[int, ...] = (0,)
) -> EmbeddingTable:
    """Fresh table with non-pad rows uniform in [-0.2, 0.2] and pad rows
    zeroed; deterministic under the seed."""
    if num_entries < 2:
        raise ValueError(f"num_entries must be >= 2, got {num_entries}")
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    rng = np.random.default_rng(derive_seed(seed, "embedding-init"))
    weights = rng.uniform(-INIT_RANGE, INIT_RANGE, size=(num_entries, dim))
    for r in pad_rows:
        weights[r] = 0.0
    return EmbeddingTable(weights, tuple(pad_rows))


def lookup_concat(table: EmbeddingTable, indices: Sequence[int]) -> np.ndarray:
    """Concatenation of the table rows named by ``indices``, in order."""
    ix = np.asarray(indices, dtype=np.int64)
    if ix.size and (ix.min() < 0 or ix.max() >= table.num_entries):
        raise IndexError(
            f"embedding index out of range [0, {table.num_entries}): "
            f"{ix.min()}..{ix.max()}"
        )
    return table.weights[ix].reshape(-1)


@dataclass
class PretrainedEmbeddings:
    """Read-only word -> vector map; absent words look up as zero."""

    dim: int
    vectors: dict[str, np.ndarray]

    def __len__(self) -> int:
        return len(self.vectors)


def lookup_pretrained(pe: PretrainedEmbeddings, word: str) -> np.ndarray:
    """Stored vector for ``word``, or an all-zeros vector if absent.
    Matching is exact (case-sensitive)."""
    vec = pe.vectors.get(word)
    if vec is None:
        return np.zeros(pe.dim)
    return vec


def load_embeddings_text(stream: Iterable[str]) -> PretrainedEmbeddings:
    """Parse the textual vector format: a ``<count> <dim>`` header, then one
    ``<token> <v1> ... <vdim>`` line per entry."""
    lines = iter(enumerate(stream, start=1))
    header = None
    for line_no, raw in lines:
        if raw.strip():
            header = (line_no, raw)
            break
    if header is None:
        raise FormatError("empty embedding file")
    parts = header[1].split()
    if len(parts) != 2:
        raise FormatError("header must be '<count> <dim>'", header[0])
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError("non-numeric header field", header[0]) from None
    if count < 0 or dim < 1:
        raise FormatError(f"bad header values count={count} dim={dim}", header[0])

    vectors: dict[str, np.ndarray] = {}
    for line_no, raw in lines:
        if not raw.strip():
            continue
        fields = raw.split()
        if len(fields) != dim + 1:
            raise FormatError(
                f"expected token plus {dim} values, got {len(fields) - 1}", line_no
            )
        token = fields[0]
        if token in vectors:
            raise FormatError(f"duplicate token {token!r}", line_no)
        try:
            vec = np.array([float(x) for x in fields[1:]], dtype=np.float64)
        except ValueError:
            raise FormatError("non-numeric vector field", line_no) from None
        if not np.all(np.isfinite(vec)):
            raise FormatError(f"non-finite value for token {token!r}", line_no)
        vectors[token] = vec
    if len(vectors) != count:
        raise FormatError(
            f"header promises {count} entries but file holds {len(vectors)}"
        )
    return PretrainedEmbeddings(dim, vectors)


def save_embeddings_text(pe: PretrainedEmbeddings, stream: IO[str]) -> None:
    """Emit the textual vector format with 17 significant digits, which
    round-trips float64 values bit-exactly."""
    stream.write(f"{len(pe.vectors)} {pe.dim}\n")
    for token, vec in pe.vectors.items():
        stream.write(token + " " + " ".join(f"{x:.17g}" for x in vec) + "\n")


@dataclass(frozen=True)
class SgnsParams:
    dim: int = 100
    window: int = 5
    negatives: int = 5
    learning_rate: float = 0.025
    min_learning_rate: float = 1e-4
    epochs: int = 5
    seed: int = 0
    min_count: int = 1

    def __post_init__(self):
        for name in ("dim", "window", "epochs", "min_count"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.negatives < 0:
            raise ValueError("negatives must be >= 0")
        if not 0 < self.min_learning_rate <= self.learning_rate:
            raise ValueError("need 0 < min_learning_rate <= learning_rate")


def sgns_pair_loss(v_w: np.ndarray, u_c: np.ndarray, u_neg: np.ndarray) -> float:
    """Loss of one (center, context) pair against k sampled negatives:
    -log s(u_c.v_w) - sum_i log s(-u_i.v_w), logs clamped at LOG_CLAMP."""
    loss = -safe_log(sigmoid(np.array(u_c @ v_w)))
    if len(u_neg):
        loss = loss - safe_log(sigmoid(-(u_neg @ v_w))).sum()
    return float(loss)


def sgns_pair_grads(
    v_w: np.ndarray, u_c: np.ndarray, u_neg: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gradients of sgns_pair_loss w.r.t. (v_w, u_c, each u_neg row)."""
    g_pos = float(sigmoid(np.array(u_c @ v_w))) - 1.0
    if len(u_neg):
        g_neg = sigmoid(u_neg @ v_w)  # (k,)
        g_v = g_pos * u_c + g_neg @ u_neg
        g_u_neg = np.outer(g_neg, v_w)
    else:
        g_v = g_pos * u_c
        g_u_neg = np.zeros((0, v_w.shape[0]))
    return g_v, g_pos * v_w, g_u_neg


def train_skipgram(
    corpus: Iterable[Sequence[str]], p: SgnsParams
) -> PretrainedEmbeddings:
    """Train skip-gram-with-negative-sampling vectors over tokenized text.

    One SGD step per (center, context) pair inside the window; negatives are
    drawn i.i.d. from the unigram distribution raised to 0.75.  The learning
    rate decays linearly over the total number of updates down to
    ``min_learning_rate``.  Deterministic under the seed.
    """
    sentences = [list(s) for s in corpus]
    counts: dict[str, int] = {}
    for s in sentences:
        for w in s:
            counts[w] = counts.get(w, 0) + 1
    retained = sorted(
        (w for w, c in counts.items() if c >= p.min_count),
        key=lambda w: (-counts[w], w),
    )
    if len(retained) < 2:
        raise TrainingError(
            f"degenerate corpus: {len(retained)} retained words, need >= 2"
        )
    word_id = {w: i for i, w in enumerate(retained)}
    encoded = [[word_id[w] for w in s if w in word_id] for s in sentences]
    encoded = [s for s in encoded if len(s) >= 2]
    if not encoded:
        raise TrainingError("degenerate corpus: no sentence has 2 retained words")

    freq = np.array([counts[w] for w in retained], dtype=np.float64)
    noise = freq ** 0.75
    noise_cdf = np.cumsum(noise / noise.sum())

    rng = np.random.default_rng(derive_seed(p.seed, "sgns"))
    n = len(retained)
    v = (rng.random((n, p.dim)) - 0.5) / p.dim  # input vectors
    u = np.zeros((n, p.dim))  # output vectors

    pairs_per_epoch = sum(
        min(len(s) - 1, t + p.window) - max(0, t - p.window)
        for s in encoded
        for t in range(len(s))
    )
    total_steps = max(1, pairs_per_epoch * p.epochs)

    step = 0
    for _ in range(p.epochs):
        for s in encoded:
            for t, w in enumerate(s):
                lo = max(0, t - p.window)
                hi = min(len(s), t + p.window + 1)
                for j in range(lo, hi):
                    if j == t:
                        continue
                    c = s[j]
                    lr = max(
                        p.min_learning_rate,
                        p.learning_rate * (1.0 - step / total_steps),
                    )
                    step += 1
                    if p.negatives:
                        negs = np.searchsorted(
                            noise_cdf, rng.random(p.negatives)
                        ).astype(np.int64)
                    else:
                        negs = np.zeros(0, dtype=np.int64)
                    g_v, g_uc, g_uneg = sgns_pair_grads(v[w], u[c], u[negs])
                    v[w] -= lr * g_v
                    u[c] -= lr * g_uc
                    if len(negs):
                        # negatives may repeat; accumulate, don't overwrite
                        np.subtract.at(u, negs, lr * g_uneg)

    return PretrainedEmbeddings(p.dim, {w: v[word_id[w]].copy() for w in retained})
