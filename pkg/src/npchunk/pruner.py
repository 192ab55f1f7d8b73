"""Grammar improvement: threshold pruning, incremental pruning, class filters.

Both iterative pruners repeat an evaluate-rank-discard loop against a
held-out pruning corpus, rescoring the surviving rules from scratch each
iteration because discarding one rule can change what every other rule
brackets.
"""

import csv
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, TextIO

from .corpus import Corpus, ParseError
from .grammar import Grammar, Rule, compile_trie
from .scorer import BenefitTable, score_rules

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PruneStep:
    """One evaluate-rank-discard pass.

    ``precision`` and ``recall`` describe the rule set that was scored at
    the start of the pass; ``remaining`` counts rules left after the
    pass's discard.
    """

    iteration: int
    discarded: tuple[Rule, ...]
    remaining: int
    precision: float
    recall: float


PruneTrace = tuple[PruneStep, ...]


def write_trace_csv(trace: Iterable[PruneStep], stream: TextIO) -> None:
    writer = csv.writer(stream)
    writer.writerow(["iter", "discarded", "remaining", "precision", "recall"])
    for step in trace:
        writer.writerow(
            [step.iteration, len(step.discarded), step.remaining,
             f"{step.precision:.6f}", f"{step.recall:.6f}"]
        )


def prune_threshold(
    grammar: Grammar, pruning: Corpus, threshold: int = 1
) -> tuple[Grammar, PruneTrace]:
    """Repeatedly drop every rule whose benefit falls below the threshold.

    Stops at the fixpoint where all surviving rules score at least the
    threshold, or when the grammar empties. The returned grammar carries
    the benefit scores from its final evaluation.
    """
    current = grammar
    trace: list[PruneStep] = []
    iteration = 0
    table = None
    while True:
        iteration += 1
        table = score_rules(pruning, compile_trie(current))
        doomed = tuple(sorted(r for r in current if table.benefit(r) < threshold))
        current = current.without(doomed)
        trace.append(
            PruneStep(iteration, doomed, len(current),
                      table.report.precision, table.report.recall)
        )
        log.info("threshold pass %d: discarded %d, %d remaining",
                 iteration, len(doomed), len(current))
        if not doomed or not len(current):
            break
    final = current.with_benefits({r: table.benefit(r) for r in current})
    return final, tuple(trace)


def prune_incremental(
    grammar: Grammar, pruning: Corpus, batch: int = 10, patience: int = 0
) -> tuple[Grammar, PruneTrace]:
    """Discard the worst rules in fixed-size batches until precision drops.

    Each pass rescores the current rule set, removes the ``batch``
    lowest-benefit rules, and tracks pruning-corpus precision. Once it
    falls strictly below the best seen so far for more than ``patience``
    consecutive passes, the loop stops and the earliest
    precision-maximizing snapshot is returned.

    The worst rules are the first ``batch`` under ascending (benefit,
    frequency, tag sequence) order, so tied batches are reproducible.
    """
    if batch < 1:
        raise ValueError(f"batch size must be positive, got {batch}")
    current = grammar
    trace: list[PruneStep] = []
    best_grammar = grammar
    best_precision = -1.0
    best_table: BenefitTable | None = None
    drops = 0
    iteration = 0
    while True:
        iteration += 1
        table = score_rules(pruning, compile_trie(current))
        precision = table.report.precision
        recall = table.report.recall
        if precision > best_precision:
            best_precision = precision
            best_grammar = current
            best_table = table
            drops = 0
        elif precision == best_precision:
            drops = 0
        else:
            drops += 1
        if drops > patience or not len(current):
            trace.append(PruneStep(iteration, (), len(current), precision, recall))
            break
        doomed = tuple(
            sorted(
                current,
                key=lambda r: (table.benefit(r), current.stats(r).frequency, r),
            )[:batch]
        )
        current = current.without(doomed)
        trace.append(PruneStep(iteration, doomed, len(current), precision, recall))
        log.info("incremental pass %d: precision %.4f, %d remaining",
                 iteration, precision, len(current))
    assert best_table is not None
    final = best_grammar.with_benefits(
        {r: best_table.benefit(r) for r in best_grammar}
    )
    return final, tuple(trace)


class TagClass(Enum):
    """Coarse word classes the rule filters are written against."""

    NOUN = "noun"
    PRONOUN = "pronoun"
    VERB = "verb"
    ADVERB = "adverb"
    ADJECTIVE = "adjective"
    PREPOSITION = "preposition"
    WH = "wh"
    PERIOD = "punctuation-period"
    COLON = "punctuation-colon"
    COMMA = "punctuation-comma"
    QUOTE = "quote"
    OTHER = "other"


_CLASS_BY_NAME = {cls.value: cls for cls in TagClass}

# Default classification for the Penn Treebank tagset. Loadable from a
# file for other tagsets; every tag a grammar uses must be covered.
PENN_TAG_CLASSES: Mapping[str, TagClass] = {
    "NN": TagClass.NOUN, "NNS": TagClass.NOUN,
    "NNP": TagClass.NOUN, "NNPS": TagClass.NOUN,
    "PRP": TagClass.PRONOUN, "PRP$": TagClass.PRONOUN,
    "VB": TagClass.VERB, "VBD": TagClass.VERB, "VBG": TagClass.VERB,
    "VBN": TagClass.VERB, "VBP": TagClass.VERB, "VBZ": TagClass.VERB,
    "MD": TagClass.VERB,
    "RB": TagClass.ADVERB, "RBR": TagClass.ADVERB, "RBS": TagClass.ADVERB,
    "JJ": TagClass.ADJECTIVE, "JJR": TagClass.ADJECTIVE, "JJS": TagClass.ADJECTIVE,
    "IN": TagClass.PREPOSITION,
    "WDT": TagClass.WH, "WP": TagClass.WH, "WP$": TagClass.WH, "WRB": TagClass.WH,
    ".": TagClass.PERIOD,
    ":": TagClass.COLON,
    ",": TagClass.COMMA,
    "``": TagClass.QUOTE, "''": TagClass.QUOTE,
    "CC": TagClass.OTHER, "CD": TagClass.OTHER, "DT": TagClass.OTHER,
    "EX": TagClass.OTHER, "FW": TagClass.OTHER, "LS": TagClass.OTHER,
    "PDT": TagClass.OTHER, "POS": TagClass.OTHER, "RP": TagClass.OTHER,
    "SYM": TagClass.OTHER, "TO": TagClass.OTHER, "UH": TagClass.OTHER,
    "$": TagClass.OTHER, "#": TagClass.OTHER,
    "-LRB-": TagClass.OTHER, "-RRB-": TagClass.OTHER,
}


def load_tag_classes(stream: TextIO) -> dict[str, TagClass]:
    """Read a tag classification file of ``TAG<TAB>class`` lines."""
    classes: dict[str, TagClass] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError("expected TAG<TAB>class", lineno)
        tag, name = parts[0].strip(), parts[1].strip()
        if not tag:
            raise ParseError("empty tag", lineno)
        if name not in _CLASS_BY_NAME:
            raise ParseError(f"unknown tag class {name!r}", lineno)
        if tag in classes:
            raise ParseError(f"duplicate entry for tag {tag!r}", lineno)
        classes[tag] = _CLASS_BY_NAME[name]
    return classes


class RuleClassFilter(Enum):
    """Named predicates marking rule classes to discard wholesale."""

    CONTAINS_PREPOSITION_PERIOD_OR_COLON = "preposition-period-colon"
    CONTAINS_WH = "wh"
    BOUNDARY_VERB_OR_ADVERB = "boundary-verb-adverb"
    PRONOUN_WITH_OTHER_TAGS = "pronoun-with-other"
    MISPLACED_COMMA_OR_QUOTE = "comma-quote"
    ENDS_WITH_ADJECTIVE = "ends-adjective"


ALL_FILTERS = frozenset(RuleClassFilter)


def _classify(rule: Rule, tag_classes: Mapping[str, TagClass]) -> list[TagClass]:
    classes = []
    for tag in rule.tags:
        cls = tag_classes.get(tag)
        if cls is None:
            raise ValueError(f"tag {tag!r} has no classification")
        classes.append(cls)
    return classes


def rule_matches_filter(
    rule: Rule,
    which: RuleClassFilter,
    tag_classes: Mapping[str, TagClass] = PENN_TAG_CLASSES,
) -> bool:
    classes = _classify(rule, tag_classes)
    if which is RuleClassFilter.CONTAINS_PREPOSITION_PERIOD_OR_COLON:
        return any(
            c in (TagClass.PREPOSITION, TagClass.PERIOD, TagClass.COLON)
            for c in classes
        )
    if which is RuleClassFilter.CONTAINS_WH:
        return TagClass.WH in classes
    if which is RuleClassFilter.BOUNDARY_VERB_OR_ADVERB:
        return classes[0] in (TagClass.VERB, TagClass.ADVERB) or classes[-1] in (
            TagClass.VERB,
            TagClass.ADVERB,
        )
    if which is RuleClassFilter.PRONOUN_WITH_OTHER_TAGS:
        return TagClass.PRONOUN in classes and any(
            c is not TagClass.PRONOUN for c in classes
        )
    if which is RuleClassFilter.MISPLACED_COMMA_OR_QUOTE:
        boundary = classes[0] in (TagClass.COMMA, TagClass.QUOTE) or classes[-1] in (
            TagClass.COMMA,
            TagClass.QUOTE,
        )
        unpaired_quote = sum(c is TagClass.QUOTE for c in classes) % 2 == 1
        return boundary or unpaired_quote
    if which is RuleClassFilter.ENDS_WITH_ADJECTIVE:
        return classes[-1] is TagClass.ADJECTIVE
    raise AssertionError(f"unhandled filter {which}")


def prune_by_class(
    grammar: Grammar,
    filters: Iterable[RuleClassFilter] = ALL_FILTERS,
    tag_classes: Mapping[str, TagClass] = PENN_TAG_CLASSES,
) -> Grammar:
    """Drop every rule matched by at least one active class filter."""
    active = tuple(filters)
    return Grammar(
        {
            r: s
            for r, s in grammar.rules.items()
            if not any(rule_matches_filter(r, f, tag_classes) for f in active)
        }
    )
