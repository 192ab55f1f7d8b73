"""Greedy longest-match identification of base NPs in tagged text."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .corpus import Corpus, Sentence, Span
from .grammar import MatchStats, Rule, RuleTrie


@dataclass(frozen=True)
class BracketedOutput:
    """Proposed NP spans in scan order, with the rule behind each span."""

    spans: tuple[Span, ...]
    rule_of: dict[Span, Rule]


def bracket(
    tags: Sequence[str],
    trie: RuleTrie,
    stats: MatchStats | None = None,
) -> BracketedOutput:
    """Scan left to right, taking the longest rule match at each position.

    A match of length L at position i yields the span [i, i + L) and the
    scan resumes at i + L; matching never restarts inside a proposed
    span. When no rule matches, the scan advances a single position.
    """
    spans: list[Span] = []
    rule_of: dict[Span, Rule] = {}
    i = 0
    n = len(tags)
    while i < n:
        rule = trie.longest_match(tags, i, stats)
        if rule is None:
            i += 1
        else:
            span = Span(i, i + len(rule))
            spans.append(span)
            rule_of[span] = rule
            i = span.end
    return BracketedOutput(tuple(spans), rule_of)


def bracket_sentence(sentence: Sentence, trie: RuleTrie) -> Sentence:
    return sentence.with_nps(bracket(sentence.tags, trie).spans)


def _bracket_chunk(job: tuple[RuleTrie, list[tuple[str, ...]]]) -> list[tuple[Span, ...]]:
    trie, tag_lists = job
    return [bracket(tags, trie).spans for tags in tag_lists]


def bracket_corpus(corpus: Corpus, trie: RuleTrie, jobs: int = 1) -> Corpus:
    """Replace every sentence's spans with the bracketer's proposals.

    Tokens are left untouched. With jobs > 1 the sentences fan out over
    worker processes; results merge back in original order.
    """
    if jobs <= 1 or len(corpus) < 2:
        span_lists = [bracket(s.tags, trie).spans for s in corpus]
    else:
        tag_lists = [s.tags for s in corpus]
        chunk = max(1, (len(tag_lists) + jobs * 4 - 1) // (jobs * 4))
        pieces = [tag_lists[i : i + chunk] for i in range(0, len(tag_lists), chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_bracket_chunk, [(trie, piece) for piece in pieces])
        span_lists = [spans for piece in results for spans in piece]
    sentences = tuple(
        s.with_nps(spans) for s, spans in zip(corpus.sentences, span_lists)
    )
    return Corpus(sentences, corpus.source)
