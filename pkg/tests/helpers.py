"""Shared builders and independent reference implementations for the tests.

The reference implementations here deliberately avoid the library's own
vectorized code paths so they can serve as oracles.
"""

import random

import numpy as np

from csrnn.corpus import Dataset, LabelScheme, Sentence, SynthLanguage, SynthSpec, Token
from csrnn.rnn import forward_sentence

SPANISH = ("casa", "perro", "gato", "sol", "luna", "mar", "rio", "pan",
           "flor", "cielo", "verde", "rojo", "azul", "noche", "dia",
           "agua", "fuego", "tierra", "viento", "nube")
ENGLISH = ("dog", "cat", "house", "sun", "moon", "sea", "river", "bread",
           "tree", "sky", "green", "red", "blue", "night", "day",
           "water", "fire", "earth", "wind", "cloud")


def two_language_spec(num_sentences=50, mean_length=8, switch_probability=0.3,
                      num_authors=10) -> SynthSpec:
    """Disjoint-vocabulary lang1/lang2 generator spec."""
    return SynthSpec(
        num_sentences=num_sentences,
        mean_length=mean_length,
        switch_probability=switch_probability,
        num_authors=num_authors,
        languages=(
            SynthLanguage("lang1", words=SPANISH),
            SynthLanguage("lang2", words=ENGLISH),
        ),
    )


def random_sentence(words, num_labels, length, rng) -> Sentence:
    return Sentence(
        tuple(Token(rng.choice(words), rng.randrange(num_labels)) for _ in range(length)),
        "a",
    )


def tiny_tagging_setup(seed=0, num_labels=3, vocab_size=8, sentence_length=6):
    """Small random vocabulary, dataset and sentence for network tests."""
    rng = random.Random(seed)
    letters = "abcdefghijklmnopqrstuvwxyz"
    words = []
    while len(words) < vocab_size:
        w = "".join(rng.choice(letters) for _ in range(rng.randint(2, 6)))
        if w not in words:
            words.append(w)
    scheme = LabelScheme(tuple(f"l{i}" for i in range(num_labels)))
    corpus = Dataset(
        (Sentence(tuple(Token(w, rng.randrange(num_labels)) for w in words), "a"),),
        scheme,
    )
    sentence = random_sentence(words, num_labels, sentence_length, rng)
    return words, scheme, corpus, sentence


def naive_truncated_bptt(p, cfg, enc, gold, depth):
    """Per-loss-position backward walk: the slow, obviously-correct way to
    compute depth-truncated gradients.  Used as an oracle for the batched
    implementation."""
    trace, _ = forward_sentence(p, cfg, enc)
    T = len(enc)
    H, Y, S_prev, X = trace.h, trace.y, trace.s_prev, trace.x
    g = {name: np.zeros_like(t) for name, t in p.tensors().items()}
    emb_cols = cfg.num_slots * cfg.dim_emb
    for t in range(T):
        dz = Y[t].copy()
        dz[gold[t]] -= 1.0
        g["W_out"] += np.outer(dz, H[t])
        g["b_o"] += dz
        dh = dz @ p.W_out
        k = t
        hops = 0
        while True:
            da = dh * H[k] * (1.0 - H[k])
            g["W_in"] += np.outer(da, X[k])
            g["b_h"] += da
            g["W_rec"] += np.outer(da, S_prev[k])
            dx = da @ p.W_in
            blocks = dx[:emb_cols].reshape(cfg.num_slots, cfg.dim_emb)
            np.add.at(g["table"], enc.slot_indices[k], blocks)
            if k == 0 or hops == depth:
                break
            ds = da @ p.W_rec
            hops += 1
            k -= 1
            if cfg.arch == "jordan":
                y = Y[k]
                dzr = ds * y - y * (ds @ y)
                g["W_out"] += np.outer(dzr, H[k])
                g["b_o"] += dzr
                dh = dzr @ p.W_out
            else:
                dh = ds
    for r in p.table.pad_rows:
        g["table"][r] = 0.0
    return g
