"""Fixed-width character n-gram slots and context-window encoding.

Every token position encodes to 7 word indices (a radius-3 context window)
plus 12 character n-gram indices extracted from the current word.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .corpus import PAD_INDEX, Dataset, Sentence, Vocab
from .errors import FeatureError

WINDOW_RADIUS = 3
NUM_WORD_SLOTS = 2 * WINDOW_RADIUS + 1  # 7
NUM_NGRAM_SLOTS = 12

PAD_NGRAM_INDEX = 0
UNK_NGRAM_INDEX = 1
PAD_NGRAM = "<pad-ngram>"
UNK_NGRAM = "<unk-ngram>"


def char_ngrams(word: str, lowercase: bool = False) -> list[str | None]:
    """The 12 fixed n-gram slots of one word; None marks an empty slot.

    Slot layout for a word ``w`` of length ``n`` (a slot is None when its
    window does not fit inside the word):

      0-2    leading trigrams   w[i:i+3]      for i = 0, 1, 2
      3-5    leading bigrams    w[i:i+2]      for i = 0, 1, 2
      6-8    trailing trigrams  w[n-3-i:n-i]  for i = 0, 1, 2
      9-11   trailing bigrams   w[n-2-i:n-i]  for i = 0, 1, 2

    Trailing slots run outermost-first: the word-final window comes first,
    then the window shifted one character inward, and so on.  Windows are
    over Unicode scalar values, never bytes.
    """
    if not word:
        raise FeatureError("cannot extract n-grams from an empty word")
    if lowercase:
        word = word.lower()
    n = len(word)
    slots: list[str | None] = []
    for i in range(3):
        slots.append(word[i:i + 3] if i + 3 <= n else None)
    for i in range(3):
        slots.append(word[i:i + 2] if i + 2 <= n else None)
    for i in range(3):
        slots.append(word[n - 3 - i:n - i] if n - 3 - i >= 0 else None)
    for i in range(3):
        slots.append(word[n - 2 - i:n - i] if n - 2 - i >= 0 else None)
    return slots


@dataclass(frozen=True)
class NgramVocab:
    """Bijection between retained n-grams and indices 2..N+1; index 0 is
    the padding n-gram and index 1 the unknown n-gram."""

    ngrams: tuple[str, ...]
    counts: Mapping[str, int]
    _stoi: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_stoi", {g: i + 2 for i, g in enumerate(self.ngrams)}
        )

    def index(self, ngram: str) -> int:
        return self._stoi.get(ngram, UNK_NGRAM_INDEX)

    def ngram(self, idx: int) -> str:
        if idx == PAD_NGRAM_INDEX:
            return PAD_NGRAM
        if idx == UNK_NGRAM_INDEX:
            return UNK_NGRAM
        return self.ngrams[idx - 2]

    def __len__(self) -> int:
        return len(self.ngrams) + 2

    def __contains__(self, ngram: str) -> bool:
        return ngram in self._stoi


def build_ngram_vocab(ds: Dataset, lowercase: bool = False) -> NgramVocab:
    """Collect every non-empty n-gram slot value over the dataset.

    Ordering is deterministic: descending occurrence count, then
    lexicographic.
    """
    if not ds.sentences:
        raise ValueError("cannot build an n-gram vocabulary from an empty dataset")
    counts: Counter[str] = Counter()
    for s in ds.sentences:
        for t in s.tokens:
            counts.update(g for g in char_ngrams(t.text, lowercase) if g is not None)
    ordered = sorted(counts, key=lambda g: (-counts[g], g))
    return NgramVocab(tuple(ordered), dict(counts))


@dataclass(frozen=True)
class TokenFeatureIndices:
    """Per-position index bundle: 7 word slots and 12 n-gram slots."""

    word_slots: tuple[int, ...]
    ngram_slots: tuple[int, ...]

    def __post_init__(self):
        if len(self.word_slots) != NUM_WORD_SLOTS:
            raise FeatureError(f"expected {NUM_WORD_SLOTS} word slots")
        if len(self.ngram_slots) != NUM_NGRAM_SLOTS:
            raise FeatureError(f"expected {NUM_NGRAM_SLOTS} n-gram slots")


def encode_position(
    s: Sentence,
    t: int,
    vocab: Vocab,
    ngram_vocab: NgramVocab,
    lowercase: bool = False,
) -> TokenFeatureIndices:
    """Index bundle for position ``t``: context words padded with PAD where
    the window leaves the sentence, unknown words mapped to UNK, and the
    current word's n-gram slots in the same convention."""
    n = len(s.tokens)
    if not 0 <= t < n:
        raise IndexError(f"position {t} out of range for a {n}-token sentence")
    word_slots = []
    for k in range(NUM_WORD_SLOTS):
        j = t - WINDOW_RADIUS + k
        if j < 0 or j >= n:
            word_slots.append(PAD_INDEX)
        else:
            word_slots.append(vocab.index(s.tokens[j].text))
    ngram_slots = [
        PAD_NGRAM_INDEX if g is None else ngram_vocab.index(g)
        for g in char_ngrams(s.tokens[t].text, lowercase)
    ]
    return TokenFeatureIndices(tuple(word_slots), tuple(ngram_slots))
