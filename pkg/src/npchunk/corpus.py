"""Tagged-sentence data model plus corpus readers and writers.

Two interchange formats are supported.

Bracketed text, one sentence per line. Tokens are ``word/TAG`` fields
separated by single spaces, and a base NP is enclosed in ``[`` and ``]``
fields that stand alone::

    When/WRB [ it/PRP ] is/VBZ [ time/NN ] ./.

The rightmost ``/`` of a field splits word from tag, so words may
themselves contain slashes. Brackets never nest: base NPs are flat.

IOB2, tab-separated lines ``word<TAB>tag<TAB>label`` with label ``B``
(chunk start), ``I`` (chunk continuation) or ``O`` (outside), and a
blank line after each sentence.
"""

import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, TextIO


class ParseError(ValueError):
    """Raised for malformed corpus or grammar files."""

    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    """A word paired with its part-of-speech tag."""

    word: str
    tag: str

    def __post_init__(self) -> None:
        # Words must survive the space-delimited bracketed format; tags
        # additionally delimit the word with '/'.
        if not self.word or any(c.isspace() for c in self.word):
            raise ValueError(f"invalid token word {self.word!r}")
        if not self.tag or "/" in self.tag or any(c.isspace() for c in self.tag):
            raise ValueError(f"invalid token tag {self.tag!r}")


@dataclass(frozen=True, order=True)
class Span:
    """Half-open token index interval [start, end) marking one base NP."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end <= self.start:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end


@dataclass(frozen=True)
class Sentence:
    """An ordered token sequence with non-overlapping, sorted NP spans."""

    tokens: tuple[Token, ...]
    nps: tuple[Span, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "nps", tuple(self.nps))
        if not self.tokens:
            raise ValueError("sentence must contain at least one token")
        previous_end = 0
        for span in self.nps:
            if span.start < previous_end:
                raise ValueError(f"spans unsorted or overlapping at {span}")
            if span.end > len(self.tokens):
                raise ValueError(f"{span} extends past sentence of length {len(self.tokens)}")
            previous_end = span.end

    def __len__(self) -> int:
        return len(self.tokens)

    @cached_property
    def tags(self) -> tuple[str, ...]:
        return tuple(token.tag for token in self.tokens)

    @cached_property
    def words(self) -> tuple[str, ...]:
        return tuple(token.word for token in self.tokens)

    def with_nps(self, nps) -> "Sentence":
        """Copy of this sentence with the NP spans replaced."""
        return Sentence(self.tokens, tuple(nps))


@dataclass(frozen=True)
class Corpus:
    """An immutable, ordered collection of sentences."""

    sentences: tuple[Sentence, ...]
    source: str = field(default="<memory>", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sentences", tuple(self.sentences))

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    @property
    def token_count(self) -> int:
        return sum(len(s) for s in self.sentences)

    @property
    def np_count(self) -> int:
        return sum(len(s.nps) for s in self.sentences)


def merge_corpora(parts, source: str = "<merged>") -> Corpus:
    sentences: list[Sentence] = []
    for part in parts:
        sentences.extend(part.sentences)
    return Corpus(tuple(sentences), source)


_FIELD = re.compile(r"\S+")


def read_bracketed(stream: TextIO, source: str = "<stream>") -> Corpus:
    """Parse bracketed text, one sentence per nonempty line."""
    sentences: list[Sentence] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        tokens: list[Token] = []
        spans: list[Span] = []
        open_start: int | None = None
        open_column = 0
        for match in _FIELD.finditer(line):
            text = match.group()
            column = match.start() + 1
            if text == "[":
                if open_start is not None:
                    raise ParseError("nested '['", lineno, column)
                open_start = len(tokens)
                open_column = column
            elif text == "]":
                if open_start is None:
                    raise ParseError("']' without matching '['", lineno, column)
                if open_start == len(tokens):
                    raise ParseError("empty brackets", lineno, column)
                spans.append(Span(open_start, len(tokens)))
                open_start = None
            else:
                cut = text.rfind("/")
                if cut <= 0 or cut == len(text) - 1:
                    raise ParseError(
                        f"malformed token {text!r} (expected word/TAG)", lineno, column
                    )
                tokens.append(Token(text[:cut], text[cut + 1 :]))
        if open_start is not None:
            raise ParseError("unclosed '['", lineno, open_column)
        sentences.append(Sentence(tuple(tokens), tuple(spans)))
    return Corpus(tuple(sentences), source)


def format_bracketed(sentence: Sentence) -> str:
    """Render one sentence as a bracketed-format line."""
    starts = {span.start for span in sentence.nps}
    ends = {span.end for span in sentence.nps}
    parts: list[str] = []
    for i, token in enumerate(sentence.tokens):
        if i in starts:
            parts.append("[")
        parts.append(f"{token.word}/{token.tag}")
        if i + 1 in ends:
            parts.append("]")
    return " ".join(parts)


def write_bracketed(corpus: Corpus, stream: TextIO) -> None:
    for sentence in corpus:
        stream.write(format_bracketed(sentence))
        stream.write("\n")


def read_iob2(stream: TextIO, source: str = "<stream>") -> Corpus:
    """Parse IOB2 tab-separated text; blank lines separate sentences."""
    sentences: list[Sentence] = []
    tokens: list[Token] = []
    spans: list[Span] = []
    open_start: int | None = None

    def flush() -> None:
        nonlocal tokens, spans, open_start
        if open_start is not None:
            spans.append(Span(open_start, len(tokens)))
            open_start = None
        if tokens:
            sentences.append(Sentence(tuple(tokens), tuple(spans)))
        tokens = []
        spans = []

    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            flush()
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError("expected word<TAB>tag<TAB>label", lineno)
        word, tag, label = fields
        if label == "B":
            if open_start is not None:
                spans.append(Span(open_start, len(tokens)))
            open_start = len(tokens)
        elif label == "I":
            if open_start is None:
                raise ParseError("'I' may not follow 'O' or start a sentence", lineno)
        elif label == "O":
            if open_start is not None:
                spans.append(Span(open_start, len(tokens)))
                open_start = None
        else:
            raise ParseError(f"unknown chunk label {label!r}", lineno)
        try:
            tokens.append(Token(word, tag))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from exc
    flush()
    return Corpus(tuple(sentences), source)


def write_iob2(corpus: Corpus, stream: TextIO) -> None:
    for sentence in corpus:
        starts = {span.start for span in sentence.nps}
        inside = {
            i for span in sentence.nps for i in range(span.start + 1, span.end)
        }
        for i, token in enumerate(sentence.tokens):
            label = "B" if i in starts else "I" if i in inside else "O"
            stream.write(f"{token.word}\t{token.tag}\t{label}\n")
        stream.write("\n")


def split_folds(corpus: Corpus, k: int, seed: int) -> list[Corpus]:
    """Partition sentences into k folds of near-equal size.

    A seeded shuffle assigns sentences round-robin, so the split is
    deterministic for a given seed; within each fold the original
    sentence order is preserved.
    """
    if k < 2:
        raise ValueError(f"fold count must be at least 2, got {k}")
    if len(corpus) < k:
        raise ValueError(f"need at least {k} sentences to make {k} folds, have {len(corpus)}")
    order = list(range(len(corpus)))
    random.Random(seed).shuffle(order)
    folds: list[Corpus] = []
    for i in range(k):
        indices = sorted(order[i::k])
        folds.append(
            Corpus(
                tuple(corpus.sentences[j] for j in indices),
                source=f"{corpus.source}#fold{i}",
            )
        )
    return folds
