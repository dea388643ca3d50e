"""Elman- and Jordan-type recurrent token taggers built on plain numpy.

The input at each position is the concatenation of 7 context-word
embeddings, optionally 12 character n-gram embeddings drawn from the same
table through an index offset, and optionally a fixed pretrained vector for
the current word fed straight to the hidden layer.  The hidden layer is
sigmoid, the output softmax; the recurrent state is the previous hidden
vector (Elman) or the previous output distribution (Jordan), zeroed at
every sentence start.

Training is plain SGD over per-token cross-entropy with truncated
backpropagation through time: the error signal born at each position
travels through at most ``bptt_depth`` recurrent hops.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .corpus import Dataset, LabelScheme, Sentence, Token, Vocab, build_vocab
from .embeddings import (
    EmbeddingTable,
    PretrainedEmbeddings,
    init_embedding,
    lookup_concat,
    lookup_pretrained,
)
from .errors import (
    AlignmentError,
    CompatibilityError,
    DimensionError,
    FormatError,
    NumericError,
    TrainingError,
)
from .features import (
    NUM_NGRAM_SLOTS,
    NUM_WORD_SLOTS,
    NgramVocab,
    build_ngram_vocab,
    encode_position,
)
from .numerics import safe_log, sigmoid, softmax
from .util import derive_seed, max_rel_error

ELMAN = "elman"
JORDAN = "jordan"

MODEL_FORMAT_TAG = "csrnn/1"

TENSOR_NAMES = ("table", "W_in", "W_rec", "b_h", "W_out", "b_o")


@dataclass(frozen=True)
class RnnConfig:
    num_labels: int
    arch: str = ELMAN
    dim_emb: int = 100
    hidden: int = 100
    window_radius: int = 3
    ngram_slots: int = 12
    bptt_depth: int = 9
    use_ngrams: bool = False
    use_pretrained: bool = False
    pretrained_dim: int = 100
    learning_rate: float = 0.1
    lr_decay: float = 0.95
    max_epochs: int = 50
    patience: int = 10
    seed: int = 0
    lowercase: bool = False
    min_count: int = 1

    def __post_init__(self):
        if self.arch not in (ELMAN, JORDAN):
            raise ValueError(f"arch must be '{ELMAN}' or '{JORDAN}', got {self.arch!r}")
        for name in ("num_labels", "dim_emb", "hidden", "pretrained_dim",
                     "max_epochs", "patience", "min_count"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.bptt_depth < 1:
            raise ValueError("bptt_depth must be >= 1")
        # the feature extractor implements exactly these slot layouts
        if self.window_radius != 3 or self.ngram_slots != NUM_NGRAM_SLOTS:
            raise ValueError("window_radius is fixed at 3 and ngram_slots at 12")

    @property
    def num_slots(self) -> int:
        return NUM_WORD_SLOTS + (NUM_NGRAM_SLOTS if self.use_ngrams else 0)

    @property
    def input_dim(self) -> int:
        return self.num_slots * self.dim_emb + (
            self.pretrained_dim if self.use_pretrained else 0
        )

    @property
    def state_dim(self) -> int:
        return self.hidden if self.arch == ELMAN else self.num_labels


@dataclass
class RnnParams:
    """All trainable tensors.  ``num_words`` is the word portion of the
    shared table's index space; n-gram rows start right after it."""

    table: EmbeddingTable
    W_in: np.ndarray   # (hidden, input_dim)
    W_rec: np.ndarray  # (hidden, state_dim)
    b_h: np.ndarray    # (hidden,)
    W_out: np.ndarray  # (num_labels, hidden)
    b_o: np.ndarray    # (num_labels,)
    num_words: int

    def tensors(self) -> dict[str, np.ndarray]:
        return {
            "table": self.table.weights,
            "W_in": self.W_in,
            "W_rec": self.W_rec,
            "b_h": self.b_h,
            "W_out": self.W_out,
            "b_o": self.b_o,
        }

    def copy(self) -> "RnnParams":
        return RnnParams(
            self.table.copy(),
            self.W_in.copy(),
            self.W_rec.copy(),
            self.b_h.copy(),
            self.W_out.copy(),
            self.b_o.copy(),
            self.num_words,
        )


@dataclass
class RnnGrads:
    """Gradient tensors mirroring RnnParams, plus the sentence loss that
    produced them."""

    table: np.ndarray
    W_in: np.ndarray
    W_rec: np.ndarray
    b_h: np.ndarray
    W_out: np.ndarray
    b_o: np.ndarray
    loss: float

    def tensors(self) -> dict[str, np.ndarray]:
        return {
            "table": self.table,
            "W_in": self.W_in,
            "W_rec": self.W_rec,
            "b_h": self.b_h,
            "W_out": self.W_out,
            "b_o": self.b_o,
        }


def _glorot(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    bound = np.sqrt(6.0 / (rows + cols))
    return rng.uniform(-bound, bound, size=(rows, cols))


def init_params(cfg: RnnConfig, num_words: int, num_ngrams: int, seed: int) -> RnnParams:
    """Fresh parameters: uniform Glorot weights, zero biases, and one shared
    embedding table covering the word range then the n-gram range."""
    if cfg.use_ngrams and num_ngrams < 2:
        raise ValueError("use_ngrams requires an n-gram vocabulary")
    entries = num_words + (num_ngrams if cfg.use_ngrams else 0)
    pad_rows = (0, num_words) if cfg.use_ngrams else (0,)
    table = init_embedding(entries, cfg.dim_emb, derive_seed(seed, "table"), pad_rows)
    rng = np.random.default_rng(derive_seed(seed, "weights"))
    return RnnParams(
        table=table,
        W_in=_glorot(rng, cfg.hidden, cfg.input_dim),
        W_rec=_glorot(rng, cfg.hidden, cfg.state_dim),
        b_h=np.zeros(cfg.hidden),
        W_out=_glorot(rng, cfg.num_labels, cfg.hidden),
        b_o=np.zeros(cfg.num_labels),
        num_words=num_words,
    )


@dataclass
class EncodedSentence:
    """Feature view of one sentence: per-position indices into the shared
    table, the optional pretrained vector per position, and gold labels."""

    slot_indices: np.ndarray            # (T, num_slots) int64
    pretrained: np.ndarray | None       # (T, pretrained_dim) float64
    gold: np.ndarray | None             # (T,) int64

    def __len__(self) -> int:
        return self.slot_indices.shape[0]


def encode_sentence(
    s: Sentence,
    vocab: Vocab,
    ngram_vocab: NgramVocab | None,
    cfg: RnnConfig,
    pretrained: PretrainedEmbeddings | None = None,
) -> EncodedSentence:
    if cfg.use_ngrams and ngram_vocab is None:
        raise CompatibilityError("config uses n-grams but no n-gram vocabulary given")
    if cfg.use_pretrained:
        if pretrained is None:
            raise CompatibilityError("config uses pretrained vectors but none given")
        if pretrained.dim != cfg.pretrained_dim:
            raise CompatibilityError(
                f"pretrained dim {pretrained.dim} != config dim {cfg.pretrained_dim}"
            )
    offset = len(vocab)
    rows = []
    for t in range(len(s.tokens)):
        feats = encode_position(s, t, vocab, ngram_vocab or _EMPTY_NGRAMS,
                                lowercase=cfg.lowercase)
        row = list(feats.word_slots)
        if cfg.use_ngrams:
            row.extend(offset + g for g in feats.ngram_slots)
        rows.append(row)
    pre = None
    if cfg.use_pretrained:
        pre = np.stack([lookup_pretrained(pretrained, t.text) for t in s.tokens])
    labels = s.labels()
    gold = None
    if all(g is not None for g in labels):
        gold = np.array(labels, dtype=np.int64)
    return EncodedSentence(np.array(rows, dtype=np.int64), pre, gold)


_EMPTY_NGRAMS = NgramVocab((), {})


@dataclass
class ForwardTrace:
    """Per-position caches of one forward pass, enough to rerun BPTT."""

    x: np.ndarray        # (T, input_dim) inputs
    a: np.ndarray        # (T, hidden) pre-activations
    h: np.ndarray        # (T, hidden) hidden vectors
    y: np.ndarray        # (T, num_labels) output distributions
    s_prev: np.ndarray   # (T, state_dim) recurrent input at each position
    slot_indices: np.ndarray  # (T, num_slots)


@dataclass
class Prediction:
    """Argmax labels (ties go to the lowest label id) with the per-token
    distributions behind them."""

    labels: np.ndarray                  # (T,) int64
    probabilities: np.ndarray | None    # (T, num_labels)


def forward_token(
    p: RnnParams, x_t: np.ndarray, s_prev: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One recurrence step; returns (y_t, h_t, a_t)."""
    if x_t.shape != (p.W_in.shape[1],):
        raise DimensionError(
            f"input has shape {x_t.shape}, expected ({p.W_in.shape[1]},)"
        )
    if s_prev.shape != (p.W_rec.shape[1],):
        raise DimensionError(
            f"state has shape {s_prev.shape}, expected ({p.W_rec.shape[1]},)"
        )
    a = p.W_in @ x_t + p.W_rec @ s_prev + p.b_h
    h = sigmoid(a)
    y = softmax(p.W_out @ h + p.b_o)
    if not np.all(np.isfinite(y)):
        raise NumericError("non-finite output distribution")
    return y, h, a


def _input_vector(p: RnnParams, enc: EncodedSentence, t: int) -> np.ndarray:
    x = lookup_concat(p.table, enc.slot_indices[t])
    if enc.pretrained is not None:
        x = np.concatenate([x, enc.pretrained[t]])
    return x


def forward_sentence(
    p: RnnParams, cfg: RnnConfig, enc: EncodedSentence
) -> tuple[ForwardTrace, Prediction]:
    """Left-to-right pass with the recurrent state zeroed at the start."""
    T = len(enc)
    X = np.empty((T, cfg.input_dim))
    A = np.empty((T, cfg.hidden))
    H = np.empty((T, cfg.hidden))
    Y = np.empty((T, cfg.num_labels))
    S_prev = np.empty((T, cfg.state_dim))
    s = np.zeros(cfg.state_dim)
    for t in range(T):
        x = _input_vector(p, enc, t)
        y, h, a = forward_token(p, x, s)
        X[t], A[t], H[t], Y[t], S_prev[t] = x, a, h, y, s
        s = h if cfg.arch == ELMAN else y
    trace = ForwardTrace(X, A, H, Y, S_prev, enc.slot_indices)
    return trace, Prediction(np.argmax(Y, axis=1), Y)


def sentence_loss(trace: ForwardTrace, gold: Sequence[int]) -> float:
    """Summed per-token cross-entropy, log arguments clamped."""
    T = trace.y.shape[0]
    if len(gold) != T:
        raise AlignmentError(f"{len(gold)} gold labels for {T} positions")
    g = np.asarray(gold, dtype=np.int64)
    return float(-safe_log(trace.y[np.arange(T), g]).sum())


def bptt_sentence(
    p: RnnParams,
    cfg: RnnConfig,
    enc: EncodedSentence,
    gold: Sequence[int] | None = None,
) -> RnnGrads:
    """Gradients of the sentence loss under depth-limited BPTT.

    The backward sweep carries, per hop count r = 1..depth, the error each
    later loss term has pushed onto the current recurrent state.  All carry
    rows pass through the same local Jacobians, so each position costs one
    (depth x hidden) batched matrix product; contributions older than
    ``bptt_depth`` hops are dropped.  Embedding gradients accumulate only
    into looked-up rows, and the table's pad rows are pinned at zero.
    """
    if gold is None:
        gold = enc.gold
    if gold is None:
        raise TrainingError("sentence has no gold labels")
    gold = np.asarray(gold, dtype=np.int64)

    trace, _ = forward_sentence(p, cfg, enc)
    T = len(enc)
    depth = cfg.bptt_depth
    H, Y, S_prev, X = trace.h, trace.y, trace.s_prev, trace.x
    sig_prime = H * (1.0 - H)
    jordan = cfg.arch == JORDAN

    # pre-softmax errors per position; Jordan recurrence adds to these
    DZ = Y.copy()
    DZ[np.arange(T), gold] -= 1.0

    D = np.zeros((T, cfg.hidden))  # total pre-activation error per position
    # carry[r-1] = error on the state emitted at the current position that
    # has already traveled r hops (r = 1..depth)
    carry = np.zeros((depth, cfg.state_dim))
    for k in range(T - 1, -1, -1):
        if jordan:
            # state is y_k: route the carried error through the softmax
            # Jacobian and the output layer
            dz_rows = carry * Y[k] - np.outer(carry @ Y[k], Y[k])
            DZ[k] += dz_rows.sum(axis=0)
            dh_rows = dz_rows @ p.W_out
            dh_own = (Y[k] - _one_hot(gold[k], cfg.num_labels)) @ p.W_out
        else:
            dh_rows = carry
            dh_own = DZ[k] @ p.W_out
        # ages 0..depth, youngest first
        all_dh = np.vstack([dh_own[None, :], dh_rows])
        da_rows = all_dh * sig_prime[k]
        D[k] = da_rows.sum(axis=0)
        if k > 0:
            # hop: age r becomes r+1; the age-depth row falls off
            carry = da_rows[:depth] @ p.W_rec

    d_table = np.zeros_like(p.table.weights)
    emb_cols = cfg.num_slots * cfg.dim_emb
    dX = D @ p.W_in
    blocks = dX[:, :emb_cols].reshape(T * cfg.num_slots, cfg.dim_emb)
    np.add.at(d_table, enc.slot_indices.reshape(-1), blocks)
    for r in p.table.pad_rows:
        d_table[r] = 0.0

    grads = RnnGrads(
        table=d_table,
        W_in=D.T @ X,
        W_rec=D.T @ S_prev,
        b_h=D.sum(axis=0),
        W_out=DZ.T @ H,
        b_o=DZ.sum(axis=0),
        loss=sentence_loss(trace, gold),
    )
    for name, g in grads.tensors().items():
        if not np.all(np.isfinite(g)):
            raise NumericError(f"non-finite gradient in tensor {name}")
    return grads


def _one_hot(i: int, n: int) -> np.ndarray:
    v = np.zeros(n)
    v[i] = 1.0
    return v


def sgd_step(p: RnnParams, grads: RnnGrads, lr: float) -> RnnParams:
    """In-place update theta <- theta - lr * grad on every trainable tensor."""
    params = p.tensors()
    for name, g in grads.tensors().items():
        params[name] -= lr * g
    return p


def finite_difference_grads(
    p: RnnParams,
    cfg: RnnConfig,
    enc: EncodedSentence,
    gold: Sequence[int] | None = None,
    eps: float = 1e-5,
) -> RnnGrads:
    """Central-difference gradients of the sentence loss, the independent
    oracle for bptt_sentence.  Table pad rows are zeroed to mirror the
    masking contract (those rows are pinned, not trained)."""
    if gold is None:
        gold = enc.gold

    def loss() -> float:
        trace, _ = forward_sentence(p, cfg, enc)
        return sentence_loss(trace, gold)

    out = {}
    for name, tensor in p.tensors().items():
        g = np.zeros_like(tensor)
        flat = tensor.reshape(-1)
        gflat = g.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + eps
            up = loss()
            flat[i] = orig - eps
            down = loss()
            flat[i] = orig
            gflat[i] = (up - down) / (2.0 * eps)
        out[name] = g
    for r in p.table.pad_rows:
        out["table"][r] = 0.0
    return RnnGrads(**out, loss=loss())


@dataclass
class EpochStats:
    epoch: int
    train_loss: float      # mean per-token cross-entropy over the epoch
    val_accuracy: float
    learning_rate: float   # rate used during this epoch
    improved: bool


@dataclass
class RnnModel:
    """A trained tagger: configuration, vocabularies, scheme, parameters."""

    config: RnnConfig
    vocab: Vocab
    ngram_vocab: NgramVocab | None
    scheme: LabelScheme
    params: RnnParams


def train(
    cfg: RnnConfig,
    train_ds: Dataset,
    val_ds: Dataset,
    pretrained: PretrainedEmbeddings | None = None,
) -> tuple[RnnModel, list[EpochStats]]:
    """SGD training with validation-based model selection.

    Vocabularies are built from the training split only.  Each epoch
    shuffles sentences under the seed, runs BPTT + SGD per sentence, then
    scores validation token accuracy; the best-scoring parameters are kept.
    The learning rate is multiplied by ``lr_decay`` after each epoch without
    improvement, and training stops after ``patience`` such epochs in a row.
    """
    if not train_ds.sentences or not val_ds.sentences:
        raise TrainingError("training and validation datasets must be non-empty")
    if train_ds.scheme != val_ds.scheme:
        raise TrainingError("training and validation schemes differ")
    if not train_ds.is_labeled() or not val_ds.is_labeled():
        raise TrainingError("training requires fully labeled data")
    if cfg.num_labels != len(train_ds.scheme):
        raise TrainingError(
            f"config expects {cfg.num_labels} labels but scheme has "
            f"{len(train_ds.scheme)}"
        )

    vocab = build_vocab(train_ds, cfg.min_count)
    ngram_vocab = build_ngram_vocab(train_ds, cfg.lowercase) if cfg.use_ngrams else None
    params = init_params(
        cfg, len(vocab), len(ngram_vocab) if ngram_vocab else 0, cfg.seed
    )
    enc_train = [
        encode_sentence(s, vocab, ngram_vocab, cfg, pretrained) for s in train_ds
    ]
    enc_val = [encode_sentence(s, vocab, ngram_vocab, cfg, pretrained) for s in val_ds]

    rng = np.random.default_rng(derive_seed(cfg.seed, "epoch-shuffle"))
    best_params = params.copy()
    best_acc = -1.0
    bad_epochs = 0
    lr = cfg.learning_rate
    history: list[EpochStats] = []
    for epoch in range(cfg.max_epochs):
        order = rng.permutation(len(enc_train))
        total_loss = 0.0
        total_tokens = 0
        for i in order:
            grads = bptt_sentence(params, cfg, enc_train[i])
            sgd_step(params, grads, lr)
            total_loss += grads.loss
            total_tokens += len(enc_train[i])
        val_acc = _token_accuracy(params, cfg, enc_val)
        improved = val_acc > best_acc
        history.append(
            EpochStats(epoch, total_loss / total_tokens, val_acc, lr, improved)
        )
        if improved:
            best_acc = val_acc
            best_params = params.copy()
            bad_epochs = 0
        else:
            bad_epochs += 1
            lr *= cfg.lr_decay
            if bad_epochs >= cfg.patience:
                break
    model = RnnModel(cfg, vocab, ngram_vocab, train_ds.scheme, best_params)
    return model, history


def _token_accuracy(
    params: RnnParams, cfg: RnnConfig, encoded: list[EncodedSentence]
) -> float:
    correct = 0
    total = 0
    for enc in encoded:
        _, pred = forward_sentence(params, cfg, enc)
        correct += int((pred.labels == enc.gold).sum())
        total += len(enc)
    return correct / total


def tag(
    model: RnnModel,
    ds: Dataset,
    pretrained: PretrainedEmbeddings | None = None,
) -> list[Prediction]:
    """Greedy per-token argmax labels for every sentence; read-only."""
    preds = []
    for s in ds.sentences:
        enc = encode_sentence(s, model.vocab, model.ngram_vocab, model.config,
                              pretrained)
        _, pred = forward_sentence(model.params, model.config, enc)
        preds.append(pred)
    return preds


def gradient_check(
    cfg: RnnConfig,
    seed: int,
    sentence_length: int = 4,
    vocab_words: int = 10,
    eps: float = 1e-5,
    corrupt: str | None = None,
) -> dict[str, float]:
    """Max guarded relative error of BPTT vs central differences, per tensor.

    Builds a random instance (vocabulary, sentence, parameters, pretrained
    vectors) from the seed.  ``corrupt`` names a tensor whose analytic
    gradient gets perturbed, as a self-test of the check itself.
    """
    rng = random.Random(derive_seed(seed, "grad-check"))
    letters = "abcdefghijklmnopqrstuvwxyz"
    words: list[str] = []
    while len(words) < vocab_words:
        w = "".join(rng.choice(letters) for _ in range(rng.randint(2, 7)))
        if w not in words:
            words.append(w)
    scheme = LabelScheme(tuple(f"l{i}" for i in range(cfg.num_labels)))
    corpus_tokens = [Token(w, rng.randrange(cfg.num_labels)) for w in words]
    ds = Dataset((Sentence(tuple(corpus_tokens), "a"),), scheme)
    vocab = build_vocab(ds, 1)
    ngram_vocab = build_ngram_vocab(ds) if cfg.use_ngrams else None

    sent_words = [rng.choice(words) for _ in range(sentence_length - 1)]
    sent_words.append("zzqx")  # one out-of-vocabulary word for UNK coverage
    sentence = Sentence(
        tuple(Token(w, rng.randrange(cfg.num_labels)) for w in sent_words), "a"
    )
    pretrained = None
    if cfg.use_pretrained:
        nprng = np.random.default_rng(derive_seed(seed, "grad-check-pretrained"))
        pretrained = PretrainedEmbeddings(
            cfg.pretrained_dim,
            {w: nprng.uniform(-0.5, 0.5, cfg.pretrained_dim) for w in sent_words},
        )
    enc = encode_sentence(sentence, vocab, ngram_vocab, cfg, pretrained)
    params = init_params(
        cfg, len(vocab), len(ngram_vocab) if ngram_vocab else 0,
        derive_seed(seed, "grad-check-params"),
    )

    analytic = bptt_sentence(params, cfg, enc)
    if corrupt is not None:
        if corrupt not in TENSOR_NAMES:
            raise ValueError(f"unknown tensor {corrupt!r}")
        analytic.tensors()[corrupt] += 1e-2
    numeric = finite_difference_grads(params, cfg, enc, eps=eps)
    return {
        name: max_rel_error(analytic.tensors()[name], numeric.tensors()[name])
        for name in TENSOR_NAMES
    }


# ---------------------------------------------------------------------------
# model container: one self-describing binary file, tag "csrnn/1"

def save_model(model: RnnModel, path: str) -> None:
    """Write the model container: a tag line, a JSON header, then raw
    little-endian float64 tensor bytes.  Identical models produce
    byte-identical files."""
    tensors = model.params.tensors()
    header = {
        "format": MODEL_FORMAT_TAG,
        "config": asdict(model.config),
        "scheme": list(model.scheme.labels),
        "vocab": {
            "words": list(model.vocab.words),
            "counts": [model.vocab.counts[w] for w in model.vocab.words],
        },
        "ngram_vocab": None if model.ngram_vocab is None else {
            "ngrams": list(model.ngram_vocab.ngrams),
            "counts": [model.ngram_vocab.counts[g] for g in model.ngram_vocab.ngrams],
        },
        "num_words": model.params.num_words,
        "pad_rows": list(model.params.table.pad_rows),
        "tensors": [
            {"name": name, "shape": list(t.shape)} for name, t in tensors.items()
        ],
    }
    with open(path, "wb") as f:
        f.write(MODEL_FORMAT_TAG.encode() + b"\n")
        f.write(json.dumps(header, sort_keys=True, ensure_ascii=True).encode() + b"\n")
        for t in tensors.values():
            f.write(np.ascontiguousarray(t, dtype="<f8").tobytes())


def load_model(path: str) -> RnnModel:
    """Read a model container written by save_model; tensors round-trip
    bit-exactly."""
    with open(path, "rb") as f:
        tag = f.readline().decode("ascii", errors="replace").rstrip("\n")
        if tag != MODEL_FORMAT_TAG:
            raise CompatibilityError(
                f"unsupported model format tag {tag!r}, expected {MODEL_FORMAT_TAG!r}"
            )
        header = json.loads(f.readline().decode())
        tensors = {}
        for entry in header["tensors"]:
            shape = tuple(entry["shape"])
            nbytes = int(np.prod(shape)) * 8 if shape else 8
            raw = f.read(nbytes)
            if len(raw) != nbytes:
                raise FormatError("model file truncated")
            tensors[entry["name"]] = (
                np.frombuffer(raw, dtype="<f8").reshape(shape).copy()
            )
    missing = [n for n in TENSOR_NAMES if n not in tensors]
    if missing:
        raise FormatError(f"model file is missing tensors {missing}")
    cfg = RnnConfig(**header["config"])
    vx = header["vocab"]
    vocab = Vocab(tuple(vx["words"]), dict(zip(vx["words"], vx["counts"])))
    ngram_vocab = None
    if header["ngram_vocab"] is not None:
        nx = header["ngram_vocab"]
        ngram_vocab = NgramVocab(
            tuple(nx["ngrams"]), dict(zip(nx["ngrams"], nx["counts"]))
        )
    params = RnnParams(
        table=EmbeddingTable(tensors["table"], tuple(header["pad_rows"])),
        W_in=tensors["W_in"],
        W_rec=tensors["W_rec"],
        b_h=tensors["b_h"],
        W_out=tensors["W_out"],
        b_o=tensors["b_o"],
        num_words=header["num_words"],
    )
    return RnnModel(cfg, vocab, ngram_vocab, LabelScheme(tuple(header["scheme"])),
                    params)
