"""CoNLL-U ingestion: tokens, sentences, corpus.

Input is pre-parsed text in CoNLL-U format (10 tab-separated columns,
blank-line sentence separation, ``#`` comment lines). Multiword-token
ranges (``i-j`` ids) and empty nodes (``i.j`` ids) are skipped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import IO, Iterable

from .errors import ParseError

_RANGE_ID = re.compile(r"^\d+-\d+$")
_EMPTY_ID = re.compile(r"^\d+\.\d+$")


def _normalize_lemma(lemma: str) -> str:
    """Lowercase a lemma; hyphenated lexical units become underscore-joined.

    Purely punctuational lemmas (e.g. a literal "-") are left alone.
    """
    lemma = lemma.lower()
    if "-" in lemma and any(ch.isalnum() for ch in lemma):
        lemma = lemma.replace("-", "_")
    return lemma


@dataclass(frozen=True)
class Token:
    index: int          # 1-based position in sentence
    surface: str
    lemma: str          # lowercase, hyphen-normalized
    pos: str            # coarse (UPOS) tag
    head: int           # governor index, 0 = root
    deprel: str


@dataclass(frozen=True)
class Sentence:
    id: str
    tokens: tuple[Token, ...]
    text: str = ""      # original text if a "# text" comment was present

    def token_at(self, index: int) -> Token:
        return self.tokens[index - 1]

    def children(self, head_index: int) -> list[Token]:
        return [t for t in self.tokens if t.head == head_index]

    def surface_text(self) -> str:
        return self.text if self.text else " ".join(t.surface for t in self.tokens)


@dataclass
class Corpus:
    sentences: list[Sentence] = field(default_factory=list)
    _by_id: dict[str, Sentence] = field(default_factory=dict, repr=False)

    def add(self, sentence: Sentence) -> None:
        if sentence.id in self._by_id:
            raise ParseError(f"duplicate sentence id {sentence.id!r}")
        self.sentences.append(sentence)
        self._by_id[sentence.id] = sentence

    def get(self, sentence_id: str) -> Sentence | None:
        return self._by_id.get(sentence_id)

    def __len__(self) -> int:
        return len(self.sentences)

    def token_count(self) -> int:
        return sum(len(s.tokens) for s in self.sentences)


def _finish_block(
    rows: list[tuple[int, str]],
    comments: dict[str, str],
    source: str,
    ordinal: int,
) -> Sentence:
    tokens = []
    for lineno, line in rows:
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(
                f"{source}:{lineno}: expected 10 tab-separated columns, got {len(cols)}",
                line=lineno,
            )
        tok_id = cols[0]
        if _RANGE_ID.match(tok_id) or _EMPTY_ID.match(tok_id):
            continue
        try:
            index = int(tok_id)
        except ValueError:
            raise ParseError(f"{source}:{lineno}: bad token id {tok_id!r}", line=lineno)
        try:
            head = int(cols[6])
        except ValueError:
            raise ParseError(f"{source}:{lineno}: bad head index {cols[6]!r}", line=lineno)
        surface = cols[1]
        lemma = cols[2]
        if lemma == "_" or lemma == "":
            lemma = surface
        tokens.append(
            Token(
                index=index,
                surface=surface,
                lemma=_normalize_lemma(lemma),
                pos=cols[3],
                head=head,
                deprel=cols[7],
            )
        )

    n = len(tokens)
    first_line = rows[0][0]
    for pos, tok in enumerate(tokens, start=1):
        if tok.index != pos:
            raise ParseError(
                f"{source}:{first_line}: token indices not contiguous "
                f"(expected {pos}, got {tok.index})",
                line=first_line,
            )
        if tok.head < 0 or tok.head > n:
            raise ParseError(
                f"{source}:{first_line}: head index {tok.head} out of range 1..{n}",
                line=first_line,
            )
        if tok.head == tok.index:
            raise ParseError(
                f"{source}:{first_line}: token {tok.index} is its own head",
                line=first_line,
            )

    sent_id = comments.get("sent_id", f"{source}:{ordinal}")
    return Sentence(id=sent_id, tokens=tuple(tokens), text=comments.get("text", ""))


def parse_conllu(stream: IO[str] | Iterable[str], source: str = "stream") -> Corpus:
    """Parse a CoNLL-U character stream into a Corpus.

    Sentence ids default to ``<source>:<block ordinal>``; a ``# sent_id``
    comment takes precedence. Empty input yields an empty Corpus.
    """
    corpus = Corpus()
    rows: list[tuple[int, str]] = []
    comments: dict[str, str] = {}
    ordinal = 0

    def flush() -> None:
        nonlocal ordinal
        if rows:
            ordinal += 1
            corpus.add(_finish_block(rows, comments, source, ordinal))
        rows.clear()
        comments.clear()

    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip():
            flush()
        elif line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                comments[key.strip()] = value.strip()
        else:
            rows.append((lineno, line))
    flush()
    return corpus


def load_corpus(paths: Iterable[str]) -> Corpus:
    """Read one or more CoNLL-U files into a single Corpus."""
    import os

    corpus = Corpus()
    for path in paths:
        name = os.path.basename(path)
        with open(path, encoding="utf-8") as fh:
            for sentence in parse_conllu(fh, source=name).sentences:
                corpus.add(sentence)
    return corpus
