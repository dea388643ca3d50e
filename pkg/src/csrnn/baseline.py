"""Deterministic frequency-lookup baseline tagger.

For each training word it counts lang1 and lang2 occurrences; prediction is
the more frequent of the two, ``other`` for unseen words, and the
corpus-level majority language on a tie.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Mapping

import numpy as np

from .corpus import Dataset
from .errors import FormatError, SchemeError
from .rnn import Prediction

LANG1 = "lang1"
LANG2 = "lang2"
OTHER = "other"


@dataclass(frozen=True)
class LexiconBaseline:
    counts: Mapping[str, tuple[int, int]]  # word -> (lang1 count, lang2 count)
    majority_language: str                 # "lang1" or "lang2"


def fit_baseline(train: Dataset) -> LexiconBaseline:
    """Count per-word lang1/lang2 occurrences; all other labels are ignored.
    The corpus-level majority breaks prediction ties (itself tied: lang1)."""
    scheme = train.scheme
    if LANG1 not in scheme or LANG2 not in scheme:
        raise SchemeError(
            f"baseline needs labels '{LANG1}' and '{LANG2}'; scheme has "
            f"{list(scheme.labels)}"
        )
    i1, i2 = scheme.index(LANG1), scheme.index(LANG2)
    counts: dict[str, list[int]] = {}
    total1 = total2 = 0
    for s in train.sentences:
        for t in s.tokens:
            if t.gold_label == i1:
                counts.setdefault(t.text, [0, 0])[0] += 1
                total1 += 1
            elif t.gold_label == i2:
                counts.setdefault(t.text, [0, 0])[1] += 1
                total2 += 1
    majority = LANG1 if total1 >= total2 else LANG2
    return LexiconBaseline({w: (c[0], c[1]) for w, c in counts.items()}, majority)


def predict_baseline(m: LexiconBaseline, word: str) -> str:
    """Label for one word: argmax of its two counts, ``other`` when the word
    was never seen with a language label, the majority language on a tie."""
    c1, c2 = m.counts.get(word, (0, 0))
    if c1 == 0 and c2 == 0:
        return OTHER
    if c1 > c2:
        return LANG1
    if c2 > c1:
        return LANG2
    return m.majority_language


def tag_dataset(m: LexiconBaseline, ds: Dataset) -> list[Prediction]:
    """Per-sentence predictions under the dataset's scheme, with one-hot
    probability rows so they plug into the shared evaluation path."""
    scheme = ds.scheme
    for name in (LANG1, LANG2, OTHER):
        if name not in scheme:
            raise SchemeError(f"scheme lacks label {name!r} needed by the baseline")
    num = len(scheme)
    preds = []
    for s in ds.sentences:
        ids = np.array(
            [scheme.index(predict_baseline(m, t.text)) for t in s.tokens],
            dtype=np.int64,
        )
        probs = np.zeros((len(ids), num))
        probs[np.arange(len(ids)), ids] = 1.0
        preds.append(Prediction(ids, probs))
    return preds


def save_baseline(m: LexiconBaseline, stream: IO[str]) -> None:
    """Serialize as a majority header plus sorted word/count lines."""
    stream.write(f"# majority={m.majority_language}\n")
    for w in sorted(m.counts):
        c1, c2 = m.counts[w]
        stream.write(f"{w}\t{c1}\t{c2}\n")


def load_baseline(stream: Iterable[str]) -> LexiconBaseline:
    lines = iter(enumerate(stream, start=1))
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise FormatError("empty baseline file") from None
    header = header.rstrip("\n")
    if not header.startswith("# majority="):
        raise FormatError("expected '# majority=<lang>' header", line_no)
    majority = header[len("# majority="):]
    if majority not in (LANG1, LANG2):
        raise FormatError(f"bad majority language {majority!r}", line_no)
    counts: dict[str, tuple[int, int]] = {}
    for line_no, raw in lines:
        line = raw.rstrip("\n")
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise FormatError(f"expected 3 tab-separated fields", line_no)
        try:
            counts[fields[0]] = (int(fields[1]), int(fields[2]))
        except ValueError:
            raise FormatError("non-integer count", line_no) from None
    return LexiconBaseline(counts, majority)
