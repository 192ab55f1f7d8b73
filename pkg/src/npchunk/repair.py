"""Local post-bracketing repairs: NP merges and quantifier splits.

Three heuristics run per sentence, in a fixed order:

1. merge-consecutive: strictly adjacent NPs merge unless either one
   looks like a time expression.
2. date-merge: ``[Month] , [CD]`` and ``[Month CD] , [CD]`` collapse to
   a single NP absorbing the comma.
3. quantifier-of-split: a bare quantifier directly before ``of`` + NP
   becomes its own NP.

Only span boundaries change; tokens are never edited.
"""

from dataclasses import dataclass
from typing import TextIO

from .corpus import Corpus, Sentence, Span, Token

MONTH_WORDS = frozenset(
    """january february march april may june july august september
    october november december""".split()
)

TIME_WORDS = MONTH_WORDS | frozenset(
    """monday tuesday wednesday thursday friday saturday sunday
    yesterday today tomorrow week month quarter year morning afternoon
    night""".split()
)

QUANTIFIER_WORDS = frozenset(
    "some many most all several few much none each any both".split()
)


def load_lexicon(stream: TextIO) -> frozenset[str]:
    """Read a word-per-line lexicon, lowercased, blank lines skipped."""
    return frozenset(
        line.strip().lower() for line in stream if line.strip()
    )


@dataclass(frozen=True)
class RepairConfig:
    merge_consecutive: bool = True
    date_merge: bool = True
    quantifier_of_split: bool = True
    time_words: frozenset[str] = TIME_WORDS
    month_words: frozenset[str] = MONTH_WORDS
    quantifier_words: frozenset[str] = QUANTIFIER_WORDS

    def __post_init__(self) -> None:
        if self.merge_consecutive and not self.time_words:
            raise ValueError("merge-consecutive requires a nonempty time lexicon")
        if self.date_merge and not self.month_words:
            raise ValueError("date-merge requires a nonempty month lexicon")
        if self.quantifier_of_split and not self.quantifier_words:
            raise ValueError("quantifier-of-split requires a nonempty quantifier lexicon")


def _is_time_span(
    tokens: tuple[Token, ...], span: Span, time_words: frozenset[str]
) -> bool:
    """A span might be a time expression if it holds a time word, or a
    number next to one."""
    for i in range(span.start, span.end):
        if tokens[i].word.lower() in time_words:
            return True
        if tokens[i].tag == "CD":
            for j in (i - 1, i + 1):
                if 0 <= j < len(tokens) and tokens[j].word.lower() in time_words:
                    return True
    return False


def _merge_consecutive(
    tokens: tuple[Token, ...], spans: list[Span], time_words: frozenset[str]
) -> list[Span]:
    if not spans:
        return spans
    merged: list[Span] = []
    current = spans[0]
    for nxt in spans[1:]:
        if (
            current.end == nxt.start
            and not _is_time_span(tokens, current, time_words)
            and not _is_time_span(tokens, nxt, time_words)
        ):
            current = Span(current.start, nxt.end)
        else:
            merged.append(current)
            current = nxt
    merged.append(current)
    return merged


def _is_comma(token: Token) -> bool:
    return token.tag == "," or token.word == ","


def _merge_dates(
    tokens: tuple[Token, ...], spans: list[Span], month_words: frozenset[str]
) -> list[Span]:
    merged: list[Span] = []
    i = 0
    while i < len(spans):
        first = spans[i]
        second = spans[i + 1] if i + 1 < len(spans) else None
        if (
            second is not None
            and second.start == first.end + 1
            and len(second) == 1
            and tokens[second.start].tag == "CD"
            and _is_comma(tokens[first.end])
            and tokens[first.start].word.lower() in month_words
            and (
                len(first) == 1
                or (len(first) == 2 and tokens[first.start + 1].tag == "CD")
            )
        ):
            merged.append(Span(first.start, second.end))
            i += 2
        else:
            merged.append(first)
            i += 1
    return merged


def _split_quantifier_of(
    tokens: tuple[Token, ...], spans: list[Span], quantifier_words: frozenset[str]
) -> list[Span]:
    covered = {i for span in spans for i in range(span.start, span.end)}
    ends = {span.end for span in spans}
    result = list(spans)
    # Right-to-left so a freshly split quantifier NP can itself anchor a
    # ``quantifier of NP`` pattern on its left.
    queue = sorted(spans, key=lambda s: -s.start)
    qi = 0
    while qi < len(queue):
        span = queue[qi]
        qi += 1
        q, o = span.start - 2, span.start - 1
        if q < 0 or q in covered or o in covered:
            continue
        quantifier, of = tokens[q], tokens[o]
        if quantifier.word.lower() not in quantifier_words:
            continue
        if quantifier.tag == "CD":  # a number reading, not a quantifier use
            continue
        if of.word.lower() != "of" or of.tag != "IN":
            continue
        if q in ends:  # an NP abuts the quantifier; leave the pair alone
            continue
        new = Span(q, q + 1)
        result.append(new)
        queue.append(new)
        covered.add(q)
        ends.add(new.end)
    return sorted(result)


def repair_sentence(sentence: Sentence, config: RepairConfig = RepairConfig()) -> Sentence:
    spans = list(sentence.nps)
    if config.merge_consecutive:
        spans = _merge_consecutive(sentence.tokens, spans, config.time_words)
    if config.date_merge:
        spans = _merge_dates(sentence.tokens, spans, config.month_words)
    if config.quantifier_of_split:
        spans = _split_quantifier_of(sentence.tokens, spans, config.quantifier_words)
    return sentence.with_nps(spans)


def repair(corpus: Corpus, config: RepairConfig = RepairConfig()) -> Corpus:
    """Apply the enabled repair heuristics to every sentence."""
    return Corpus(
        tuple(repair_sentence(s, config) for s in corpus),
        corpus.source,
    )
