"""Loading, tokenizing and normalizing labeled e-mail corpora.

Two on-disk layouts are supported, both the same directory convention:
any nesting of subdirectories, every regular file one message, basename
prefix ``spmsg`` (case-sensitive) marking spam.  File content is an
optional ``Subject:`` first line, a blank line, then the body.
A deterministic synthetic fixture generator produces corpora in the same
shape for tests and demos that must run without the real Ling-Spam data.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from pathlib import Path
from random import Random
from typing import Iterable

from .errors import CorpusError

_WORD_RE = re.compile(r"[A-Za-z]+")

# Light suffix stripping: longest applicable suffix first, repeated until no
# rule applies, never leaving a stem shorter than 3 characters.  A cheap,
# reproducible stand-in for a real lemmatizer.
_SUFFIXES = ("ing", "ed", "es", "ly", "s")
_MIN_STEM = 3


class Label(enum.IntEnum):
    """Message class; LEGITIMATE < SPAM gives the deterministic tie order."""

    LEGITIMATE = 0
    SPAM = 1

    def __str__(self) -> str:
        return "spam" if self is Label.SPAM else "legitimate"


@dataclass(frozen=True)
class RawMessage:
    """One decoded message before tokenization."""

    subject: str
    body: str
    source_id: str = ""


@dataclass(frozen=True)
class NormalizerConfig:
    """Token normalization switches.

    stemming is "none" or "light"; tokens shorter than min_token_length
    after normalization are dropped.
    """

    lowercase: bool = True
    stemming: str = "light"
    min_token_length: int = 1

    def __post_init__(self) -> None:
        if self.stemming not in ("none", "light"):
            raise ValueError(f"unknown stemming mode: {self.stemming!r}")
        if self.min_token_length < 1:
            raise ValueError("min_token_length must be >= 1")


@dataclass(frozen=True)
class Document:
    """An ordered list of normalized tokens plus the gold label."""

    tokens: tuple[str, ...]
    label: Label
    source_id: str

    @property
    def token_set(self) -> frozenset[str]:
        # Cached on first use; binary attributes only care about presence.
        cached = self.__dict__.get("_token_set")
        if cached is None:
            cached = frozenset(self.tokens)
            self.__dict__["_token_set"] = cached
        return cached


@dataclass(frozen=True)
class Corpus:
    """Documents in deterministic order (sorted by source_id) plus label tallies."""

    documents: tuple[Document, ...]
    n_legit: int
    n_spam: int

    @classmethod
    def from_documents(cls, documents: Iterable[Document]) -> "Corpus":
        docs = tuple(sorted(documents, key=lambda d: d.source_id))
        n_spam = sum(1 for d in docs if d.label is Label.SPAM)
        return cls(documents=docs, n_legit=len(docs) - n_spam, n_spam=n_spam)

    def __len__(self) -> int:
        return len(self.documents)

    def labels(self) -> list[Label]:
        return [d.label for d in self.documents]

    def vocabulary(self) -> set[str]:
        vocab: set[str] = set()
        for doc in self.documents:
            vocab.update(doc.token_set)
        return vocab


@dataclass(frozen=True)
class CorpusStats:
    n_legit: int
    n_spam: int
    spam_rate: float
    vocabulary_size: int


def parse_message(raw: bytes | str, source_id: str = "") -> RawMessage:
    """Split a message file into subject and body.

    The text before the first blank line, when it starts with "Subject:",
    becomes the subject (prefix stripped); the remainder is the body.
    Without a Subject header the whole text is the body.  Invalid byte
    sequences are decoded lossily.
    """
    text = raw.decode("utf-8", errors="replace") if isinstance(raw, bytes) else raw
    if not text:
        raise CorpusError(f"empty message: {source_id}" if source_id else "empty message")

    lines = text.split("\n")
    blank = next((i for i, line in enumerate(lines) if not line.strip()), None)
    head = "\n".join(lines[:blank]) if blank is not None else text
    if head.startswith("Subject:"):
        subject = head[len("Subject:"):].strip()
        body = "\n".join(lines[blank + 1:]) if blank is not None else ""
    else:
        subject = ""
        body = text
    return RawMessage(subject=subject, body=body, source_id=source_id)


def tokenize(text: str) -> list[str]:
    """Maximal runs of ASCII letters, in order; everything else separates."""
    return _WORD_RE.findall(text)


def _strip_suffixes(token: str) -> str:
    while True:
        for suffix in _SUFFIXES:
            if token.endswith(suffix) and len(token) - len(suffix) >= _MIN_STEM:
                token = token[: -len(suffix)]
                break
        else:
            return token


def normalize_token(token: str, config: NormalizerConfig) -> str | None:
    """Normalize one token, or drop it (None) if it falls below the length floor."""
    if config.lowercase:
        token = token.lower()
    if config.stemming == "light":
        token = _strip_suffixes(token)
    if len(token) < config.min_token_length:
        return None
    return token


def normalize_tokens(tokens: Iterable[str], config: NormalizerConfig) -> list[str]:
    out = []
    for token in tokens:
        normalized = normalize_token(token, config)
        if normalized is not None:
            out.append(normalized)
    return out


def document_from_message(
    message: RawMessage, label: Label, config: NormalizerConfig
) -> Document:
    """Subject and body tokens are concatenated and not distinguished."""
    tokens = normalize_tokens(tokenize(message.subject + " " + message.body), config)
    return Document(tokens=tuple(tokens), label=label, source_id=message.source_id)


def label_for_filename(name: str) -> Label:
    return Label.SPAM if name.startswith("spmsg") else Label.LEGITIMATE


LAYOUTS = ("lingspam", "fixture")


def load_corpus(
    directory: str | Path,
    layout: str = "lingspam",
    config: NormalizerConfig | None = None,
) -> Corpus:
    """Load every regular file under a corpus root, recursively.

    Both layouts share the directory convention; the id is validated only.
    Documents come back sorted by their path relative to the root.
    """
    if layout not in LAYOUTS:
        raise CorpusError(f"unknown corpus layout: {layout!r}")
    config = config or NormalizerConfig()
    root = Path(directory)
    if not root.is_dir():
        raise CorpusError(f"unreadable directory: {root}")

    documents = []
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        source_id = path.relative_to(root).as_posix()
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise CorpusError(f"unreadable message file {source_id}: {exc}")
        message = parse_message(raw, source_id=source_id)
        documents.append(
            document_from_message(message, label_for_filename(path.name), config)
        )
    if not documents:
        raise CorpusError(f"empty corpus: {root}")
    return Corpus.from_documents(documents)


def corpus_stats(corpus: Corpus) -> CorpusStats:
    total = corpus.n_legit + corpus.n_spam
    return CorpusStats(
        n_legit=corpus.n_legit,
        n_spam=corpus.n_spam,
        spam_rate=corpus.n_spam / total if total else 0.0,
        vocabulary_size=len(corpus.vocabulary()),
    )


@dataclass(frozen=True)
class FixtureParams:
    """Shape of the synthetic corpus.

    The vocabulary is split into a legit-typical pool, a shared pool and a
    spam-typical pool; ``overlap`` is the probability that a token is drawn
    from the shared pool instead of the class pool.  Within a pool, word
    probabilities fall off harmonically, so the two class distributions are
    skewed multinomials over the same vocabulary.
    """

    vocab_size: int = 120
    shared_fraction: float = 0.2
    overlap: float = 0.3
    doc_len_min: int = 20
    doc_len_max: int = 60

    def __post_init__(self) -> None:
        if not 3 <= self.vocab_size <= 26**3:
            raise ValueError("vocab_size must be in [3, 17576]")
        if not 0.0 <= self.shared_fraction < 1.0:
            raise ValueError("shared_fraction must be in [0, 1)")
        if not 0.0 <= self.overlap <= 1.0:
            raise ValueError("overlap must be in [0, 1]")
        if not 1 <= self.doc_len_min <= self.doc_len_max:
            raise ValueError("need 1 <= doc_len_min <= doc_len_max")


def _fixture_word(index: int) -> str:
    # Base-26 letters with a fixed final "o" so no stemming rule ever
    # applies; fixture tokens survive write + reload byte-identically.
    letters = []
    i = index
    for _ in range(3):
        letters.append(chr(ord("a") + i % 26))
        i //= 26
    return "".join(reversed(letters)) + "o"


def _fixture_pools(params: FixtureParams) -> tuple[list[str], list[str], list[str]]:
    words = [_fixture_word(i) for i in range(params.vocab_size)]
    n_shared = round(params.vocab_size * params.shared_fraction)
    n_class = (params.vocab_size - n_shared) // 2
    legit_pool = words[:n_class]
    shared_pool = words[n_class : n_class + n_shared]
    spam_pool = words[n_class + n_shared : n_class + n_shared + n_class]
    return legit_pool, shared_pool, spam_pool


def _harmonic_weights(n: int) -> list[float]:
    return [1.0 / (rank + 1) for rank in range(n)]


def generate_fixture_corpus(
    seed: int,
    n_legit: int,
    n_spam: int,
    params: FixtureParams | None = None,
    out_dir: str | Path | None = None,
) -> Corpus:
    """Deterministic synthetic corpus; same seed, same corpus, byte for byte.

    With ``out_dir`` the corpus is also persisted in the standard directory
    convention (legit files ``msgNNNN.txt``, spam files ``spmsgNNNN.txt``)
    and reloading it reproduces the returned corpus exactly.
    """
    if n_legit < 0 or n_spam < 0 or n_legit + n_spam < 1:
        raise CorpusError("fixture corpus needs at least one document")
    params = params or FixtureParams()
    rng = Random(seed)
    legit_pool, shared_pool, spam_pool = _fixture_pools(params)

    documents = []
    for label, count, pool in (
        (Label.LEGITIMATE, n_legit, legit_pool),
        (Label.SPAM, n_spam, spam_pool),
    ):
        own = pool if pool else shared_pool
        own_weights = _harmonic_weights(len(own))
        shared_weights = _harmonic_weights(len(shared_pool))
        for i in range(count):
            length = rng.randint(params.doc_len_min, params.doc_len_max)
            tokens = []
            for _ in range(length):
                if shared_pool and rng.random() < params.overlap:
                    tokens.append(rng.choices(shared_pool, shared_weights)[0])
                else:
                    tokens.append(rng.choices(own, own_weights)[0])
            name = f"spmsg{i:04d}.txt" if label is Label.SPAM else f"msg{i:04d}.txt"
            documents.append(Document(tokens=tuple(tokens), label=label, source_id=name))

    corpus = Corpus.from_documents(documents)
    if out_dir is not None:
        write_fixture_corpus(corpus, out_dir)
    return corpus


def write_fixture_corpus(corpus: Corpus, out_dir: str | Path) -> None:
    """Persist a corpus in the standard layout, one file per document.

    The first tokens go on the Subject line and the rest into the body, so
    subject+body tokenization reproduces the document token list.
    """
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    for doc in corpus.documents:
        head = " ".join(doc.tokens[:3])
        rest = doc.tokens[3:]
        body_lines = [" ".join(rest[i : i + 12]) for i in range(0, len(rest), 12)]
        (root / doc.source_id).write_text(
            f"Subject: {head}\n\n" + "\n".join(body_lines) + "\n", encoding="ascii"
        )
