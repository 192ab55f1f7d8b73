"""Precision/recall evaluation and per-rule benefit scoring."""

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Mapping

from .corpus import Corpus
from .bracketer import bracket
from .grammar import Rule, RuleTrie


class AlignmentError(ValueError):
    """Corpora being compared do not share the same token sequences."""


@dataclass(frozen=True)
class EvalReport:
    """Counts of proposed, correct and reference NPs over a corpus."""

    proposed: int
    correct: int
    reference: int

    def __post_init__(self) -> None:
        if min(self.proposed, self.correct, self.reference) < 0:
            raise ValueError("counts must be non-negative")
        if self.correct > self.proposed or self.correct > self.reference:
            raise ValueError(
                f"correct={self.correct} exceeds proposed={self.proposed} "
                f"or reference={self.reference}"
            )

    @property
    def precision(self) -> float:
        return self.correct / self.proposed if self.proposed else 0.0

    @property
    def recall(self) -> float:
        return self.correct / self.reference if self.reference else 0.0

    def __str__(self) -> str:
        return (
            f"proposed={self.proposed} correct={self.correct} "
            f"reference={self.reference} "
            f"P={100 * self.precision:.1f} R={100 * self.recall:.1f}"
        )


def _check_aligned(proposed: Corpus, reference: Corpus) -> None:
    if len(proposed) != len(reference):
        raise AlignmentError(
            f"sentence counts differ: {len(proposed)} proposed vs {len(reference)} reference"
        )
    for i, (ps, rs) in enumerate(zip(proposed, reference)):
        if ps.tokens != rs.tokens:
            raise AlignmentError(f"sentence {i}: token sequences differ")


def evaluate(proposed: Corpus, reference: Corpus) -> EvalReport:
    """Count exact span matches between token-aligned corpora.

    A proposed span is correct iff the same sentence has a reference span
    with identical endpoints.
    """
    _check_aligned(proposed, reference)
    n_proposed = n_correct = n_reference = 0
    for ps, rs in zip(proposed, reference):
        reference_spans = set(rs.nps)
        n_proposed += len(ps.nps)
        n_reference += len(rs.nps)
        n_correct += sum(1 for span in ps.nps if span in reference_spans)
    return EvalReport(n_proposed, n_correct, n_reference)


@dataclass(frozen=True)
class RuleScore:
    """Correct bracketings and charged precision errors for one rule."""

    correct: int = 0
    errors: int = 0

    @property
    def benefit(self) -> int:
        return self.correct - self.errors


class BenefitTable:
    """Per-rule scores plus the evaluation report of the same run."""

    def __init__(self, scores: Mapping[Rule, RuleScore], report: EvalReport):
        self._scores = dict(scores)
        self.report = report

    def score(self, rule: Rule) -> RuleScore:
        return self._scores.get(rule, RuleScore())

    def benefit(self, rule: Rule) -> int:
        return self.score(rule).benefit

    def __iter__(self) -> Iterator[Rule]:
        return iter(self._scores)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BenefitTable):
            return NotImplemented
        return self._scores == other._scores and self.report == other.report

    def as_dict(self) -> dict[Rule, RuleScore]:
        return dict(self._scores)


def score_rules(pruning: Corpus, trie: RuleTrie) -> BenefitTable:
    """Bracket the corpus and attribute every proposed span to its rule.

    An exactly matching span counts toward its rule's correct tally. An
    erroneous span is charged to its rule only when it is responsible:
    it overlaps some reference NP no earlier proposed span had touched,
    or it overlaps no reference NP at all. Errors over reference NPs
    already touched by an earlier span go uncharged, and a single
    erroneous span is charged at most once.
    """
    correct: Counter[Rule] = Counter()
    errors: Counter[Rule] = Counter()
    n_proposed = n_correct = n_reference = 0
    for sentence in pruning:
        output = bracket(sentence.tags, trie)
        refs = sentence.nps
        ref_set = set(refs)
        touched = [False] * len(refs)
        n_proposed += len(output.spans)
        n_reference += len(refs)
        low = 0  # index of first reference span that may still overlap
        for span in output.spans:
            rule = output.rule_of[span]
            while low < len(refs) and refs[low].end <= span.start:
                low += 1
            overlapping = []
            j = low
            while j < len(refs) and refs[j].start < span.end:
                overlapping.append(j)
                j += 1
            if span in ref_set:
                correct[rule] += 1
                n_correct += 1
            elif not overlapping or any(not touched[j] for j in overlapping):
                errors[rule] += 1
            for j in overlapping:
                touched[j] = True
    report = EvalReport(n_proposed, n_correct, n_reference)
    scores = {
        rule: RuleScore(correct[rule], errors[rule])
        for rule in set(correct) | set(errors)
    }
    return BenefitTable(scores, report)
