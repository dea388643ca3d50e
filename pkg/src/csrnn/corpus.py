"""Token/label corpora: parsing, vocabularies, author splits, synthetic data.

The on-disk token format is one token per line as ``token<TAB>label``, a
blank line between sentences, and an optional ``# author=<id>`` line opening
a sentence block.  Everything in this module is immutable after construction
and safe to share across threads.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import GeneratorError, LabelError, ParseError, SplitError
from .util import derive_seed

PAD_INDEX = 0
UNK_INDEX = 1
PAD_WORD = "<pad>"
UNK_WORD = "<unk>"

AUTHOR_PREFIX = "# author="


@dataclass(frozen=True)
class LabelScheme:
    """Ordered list of distinct label strings; list order defines label ids."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise LabelError(f"duplicate labels in scheme: {list(self.labels)}")
        if not self.labels:
            raise LabelError("a label scheme needs at least one label")

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(
                f"unknown label {label!r}; scheme defines {list(self.labels)}"
            ) from None

    def label(self, idx: int) -> str:
        return self.labels[idx]

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self.labels


# The six-way code-switch scheme and the per-language id scheme.
CS6 = LabelScheme(("lang1", "lang2", "ambiguous", "mixed", "other", "ne"))
LANGID = LabelScheme(("en", "msa", "ne", "es", "arz", "other"))

SCHEMES: Mapping[str, LabelScheme] = {"cs6": CS6, "langid": LANGID}


@dataclass(frozen=True)
class Token:
    """One token with its gold label id (None for unlabeled input)."""

    text: str
    gold_label: int | None

    def __post_init__(self):
        if not self.text:
            raise ValueError("token text must be non-empty")
        if any(c.isspace() for c in self.text):
            raise ValueError(f"token text contains whitespace: {self.text!r}")


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    author_id: str = ""

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("a sentence needs at least one token")

    def __len__(self) -> int:
        return len(self.tokens)

    def words(self) -> list[str]:
        return [t.text for t in self.tokens]

    def labels(self) -> list[int | None]:
        return [t.gold_label for t in self.tokens]


@dataclass(frozen=True)
class Dataset:
    sentences: tuple[Sentence, ...]
    scheme: LabelScheme

    def __post_init__(self):
        n = len(self.scheme)
        for s in self.sentences:
            for t in s.tokens:
                if t.gold_label is not None and not 0 <= t.gold_label < n:
                    raise LabelError(
                        f"label id {t.gold_label} out of range for scheme "
                        f"{list(self.scheme.labels)}"
                    )

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def num_tokens(self) -> int:
        return sum(len(s) for s in self.sentences)

    def authors(self) -> list[str]:
        """Distinct author ids in order of first appearance."""
        seen: dict[str, None] = {}
        for s in self.sentences:
            seen.setdefault(s.author_id)
        return list(seen)

    def is_labeled(self) -> bool:
        return all(t.gold_label is not None for s in self.sentences for t in s.tokens)


def parse_token_file(
    stream: Iterable[str], scheme: LabelScheme, require_labels: bool = True
) -> Dataset:
    """Parse the tab-separated token/label format into a Dataset.

    ``stream`` is any iterable of lines (an open text file qualifies).  With
    ``require_labels=False``, lines holding a bare token (no tab) are
    accepted and yield tokens without gold labels.
    """
    sentences: list[Sentence] = []
    tokens: list[Token] = []
    author = ""
    author_set = False
    author_line = 0

    def flush():
        nonlocal tokens, author, author_set
        if tokens:
            sentences.append(Sentence(tuple(tokens), author))
        elif author_set:
            raise ParseError(author_line, "author header without any tokens")
        tokens = []
        author = ""
        author_set = False

    line_no = 0
    for line_no, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if line == "":
            flush()
            continue
        if line.startswith(AUTHOR_PREFIX):
            if tokens or author_set:
                raise ParseError(
                    line_no, "author header must be the first line of a sentence block"
                )
            author = line[len(AUTHOR_PREFIX):]
            author_set = True
            author_line = line_no
            continue
        fields = line.split("\t")
        if len(fields) == 1 and not require_labels:
            text, label = fields[0], None
        elif len(fields) == 2:
            text, label = fields
        else:
            raise ParseError(
                line_no, f"expected token<TAB>label, got {len(fields)} fields"
            )
        if not text or any(c.isspace() for c in text):
            raise ParseError(line_no, f"bad token text {text!r}")
        if label is not None:
            if label not in scheme:
                raise LabelError(f"line {line_no}: unknown label {label!r}")
            gold = scheme.index(label)
        else:
            gold = None
        tokens.append(Token(text, gold))
    flush()
    return Dataset(tuple(sentences), scheme)


def serialize_dataset(ds: Dataset) -> str:
    """Canonical text form of a dataset; parse(serialize(ds)) == ds."""
    blocks = []
    for s in ds.sentences:
        lines = []
        if s.author_id:
            lines.append(AUTHOR_PREFIX + s.author_id)
        for t in s.tokens:
            if t.gold_label is None:
                lines.append(t.text)
            else:
                lines.append(f"{t.text}\t{ds.scheme.label(t.gold_label)}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def split_by_author(
    ds: Dataset, ratios: tuple[float, float, float], seed: int
) -> tuple[Dataset, Dataset, Dataset]:
    """Partition sentences into three author-disjoint splits.

    Authors are shuffled under the seed and greedily assigned to whichever
    split is furthest under its sentence-count target, so split sizes
    approximate the ratios while every author lands wholly in one split.
    """
    if len(ratios) != 3:
        raise SplitError(f"need exactly 3 ratios, got {len(ratios)}")
    if any(r <= 0 for r in ratios):
        raise SplitError(f"ratios must be positive: {ratios}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise SplitError(f"ratios must sum to 1: {ratios}")
    authors = ds.authors()
    if len(authors) < 3:
        raise SplitError(f"need at least 3 distinct authors, got {len(authors)}")

    by_author: dict[str, list[Sentence]] = {a: [] for a in authors}
    for s in ds.sentences:
        by_author[s.author_id].append(s)

    rng = random.Random(derive_seed(seed, "author-split"))
    order = list(authors)
    rng.shuffle(order)

    total = len(ds.sentences)
    targets = [r * total for r in ratios]
    counts = [0, 0, 0]
    assignment: dict[str, int] = {}
    for a in order:
        # most under-target split; ties go to the lowest split index
        k = max(range(3), key=lambda i: targets[i] - counts[i])
        assignment[a] = k
        counts[k] += len(by_author[a])

    buckets: list[list[Sentence]] = [[], [], []]
    for s in ds.sentences:  # preserve corpus order within each split
        buckets[assignment[s.author_id]].append(s)
    return tuple(Dataset(tuple(b), ds.scheme) for b in buckets)


@dataclass(frozen=True)
class Vocab:
    """Bijection between retained words and indices 2..N+1.

    Index 0 is PAD and index 1 is UNK; they are positional and can never
    collide with a corpus word.  ``counts`` covers every corpus word, also
    the ones below the retention threshold.
    """

    words: tuple[str, ...]
    counts: Mapping[str, int]
    _stoi: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_stoi", {w: i + 2 for i, w in enumerate(self.words)}
        )

    def index(self, word: str) -> int:
        return self._stoi.get(word, UNK_INDEX)

    def word(self, idx: int) -> str:
        if idx == PAD_INDEX:
            return PAD_WORD
        if idx == UNK_INDEX:
            return UNK_WORD
        return self.words[idx - 2]

    def __len__(self) -> int:
        """Size of the index space, reserved entries included."""
        return len(self.words) + 2

    def __contains__(self, word: str) -> bool:
        return word in self._stoi


def build_vocab(ds: Dataset, min_count: int = 1) -> Vocab:
    """Count words and retain those with count >= min_count.

    Index order is deterministic: descending count, ties broken
    lexicographically.
    """
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    if not ds.sentences:
        raise ValueError("cannot build a vocabulary from an empty dataset")
    counts = Counter(t.text for s in ds.sentences for t in s.tokens)
    retained = sorted(
        (w for w, c in counts.items() if c >= min_count),
        key=lambda w: (-counts[w], w),
    )
    return Vocab(tuple(retained), dict(counts))


@dataclass(frozen=True)
class SynthLanguage:
    """Word inventory for one language: an explicit list, or a character
    grammar (random words over ``alphabet`` with lengths in
    ``word_length``).  With ``num_words`` set the grammar pre-generates a
    fixed inventory; without it every draw may mint a fresh word."""

    label: str
    words: tuple[str, ...] = ()
    alphabet: str = ""
    word_length: tuple[int, int] = (3, 8)
    num_words: int | None = None


@dataclass(frozen=True)
class SynthSpec:
    num_sentences: int
    mean_length: int
    languages: tuple[SynthLanguage, ...]
    switch_probability: float
    num_authors: int = 10
    scheme: LabelScheme = CS6


def synth_corpus(spec: SynthSpec, seed: int) -> Dataset:
    """Generate a seeded code-switched corpus.

    Within a sentence the token language follows a first-order chain: with
    ``switch_probability`` the next token switches to a uniformly chosen
    *other* language.  A pure function of (spec, seed); the draw order below
    is part of the determinism contract.
    """
    if len(spec.languages) < 2:
        raise GeneratorError("need at least 2 languages")
    if not 0.0 <= spec.switch_probability <= 1.0:
        raise GeneratorError(
            f"switch_probability must be in [0,1]: {spec.switch_probability}"
        )
    if spec.mean_length < 1:
        raise GeneratorError(f"mean_length must be >= 1: {spec.mean_length}")
    if spec.num_authors < 1:
        raise GeneratorError(f"num_authors must be >= 1: {spec.num_authors}")
    for lang in spec.languages:
        if not lang.words and not lang.alphabet:
            raise GeneratorError(f"empty word inventory for language {lang.label!r}")
        if lang.label not in spec.scheme:
            raise GeneratorError(
                f"language label {lang.label!r} not in the active scheme"
            )

    rng = random.Random(derive_seed(seed, "synth"))

    def grammar_word(lang: SynthLanguage) -> str:
        lo, hi = lang.word_length
        n = rng.randint(lo, hi)
        return "".join(rng.choice(lang.alphabet) for _ in range(n))

    inventories: list[tuple[str, ...] | None] = []
    for lang in spec.languages:
        if lang.words:
            inventories.append(lang.words)
        elif lang.num_words is not None:
            inventories.append(tuple(grammar_word(lang) for _ in range(lang.num_words)))
        else:
            inventories.append(None)  # mint a fresh word per draw

    def draw_word(li: int) -> str:
        inv = inventories[li]
        if inv is None:
            return grammar_word(spec.languages[li])
        return rng.choice(inv)

    label_ids = [spec.scheme.index(lang.label) for lang in spec.languages]
    num_langs = len(spec.languages)
    sentences = []
    for _ in range(spec.num_sentences):
        author = f"a{rng.randrange(spec.num_authors):03d}"
        length = rng.randint(1, 2 * spec.mean_length - 1)
        li = rng.randrange(num_langs)
        tokens = []
        for pos in range(length):
            if pos > 0 and rng.random() < spec.switch_probability:
                step = rng.randrange(num_langs - 1)
                li = (li + 1 + step) % num_langs
            tokens.append(Token(draw_word(li), label_ids[li]))
        sentences.append(Sentence(tuple(tokens), author))
    return Dataset(tuple(sentences), spec.scheme)


def load_synth_spec(stream: Iterable[str]) -> tuple[SynthSpec, int]:
    """Read a generator spec from line-based ``key = value`` text.

    A ``[label]`` line opens a per-language block; inside it the keys are
    ``words``, ``alphabet``, ``word_length`` (two ints) and ``num_words``.
    Returns the spec together with the file's ``seed``.
    """
    top: dict[str, str] = {}
    langs: list[dict[str, str]] = []
    current: dict[str, str] | None = None
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = {"label": line[1:-1].strip()}
            langs.append(current)
            continue
        if "=" not in line:
            raise ParseError(line_no, f"expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        target = top if current is None else current
        if key in target:
            raise ParseError(line_no, f"duplicate key {key!r}")
        target[key] = value

    def need(key: str) -> str:
        if key not in top:
            raise GeneratorError(f"generator spec is missing key {key!r}")
        return top[key]

    try:
        scheme = SCHEMES[top.get("scheme", "cs6")]
    except KeyError:
        raise GeneratorError(f"unknown scheme {top['scheme']!r}") from None
    try:
        spec = SynthSpec(
            num_sentences=int(need("num_sentences")),
            mean_length=int(need("mean_length")),
            switch_probability=float(need("switch_probability")),
            num_authors=int(top.get("num_authors", 10)),
            scheme=scheme,
            languages=tuple(_parse_synth_language(block) for block in langs),
        )
        seed = int(need("seed"))
    except ValueError as e:
        raise GeneratorError(f"bad value in generator spec: {e}") from None
    return spec, seed


def _parse_synth_language(block: dict[str, str]) -> SynthLanguage:
    kwargs: dict = {"label": block["label"]}
    if "words" in block:
        kwargs["words"] = tuple(block["words"].split())
    if "alphabet" in block:
        kwargs["alphabet"] = block["alphabet"]
    if "word_length" in block:
        lo, hi = block["word_length"].split()
        kwargs["word_length"] = (int(lo), int(hi))
    if "num_words" in block:
        kwargs["num_words"] = int(block["num_words"])
    return SynthLanguage(**kwargs)
