"""Base NP rules: extraction from a corpus, trie compilation, serialization.

A rule is the part-of-speech tag sequence of one annotated base NP.
The grammar file format is line-oriented text so rule sets can be
reviewed and edited by hand: a space-separated tag sequence, optionally
followed by ``<TAB>freq=N`` and ``<TAB>benefit=M``. Lines beginning with
``#`` are comments.
"""

from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, TextIO

from .corpus import Corpus, ParseError


@dataclass(frozen=True, order=True)
class Rule:
    """A nonempty POS tag sequence matched verbatim against tagged text."""

    tags: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tags", tuple(self.tags))
        if not self.tags:
            raise ValueError("rule must contain at least one tag")
        for tag in self.tags:
            if not tag or "/" in tag or any(c.isspace() for c in tag):
                raise ValueError(f"invalid tag {tag!r} in rule")

    def __len__(self) -> int:
        return len(self.tags)

    def __str__(self) -> str:
        return " ".join(self.tags)


@dataclass(frozen=True)
class RuleStats:
    """Bookkeeping attached to a rule: training frequency, optional benefit."""

    frequency: int = 1
    benefit: int | None = None

    def __post_init__(self) -> None:
        if self.frequency < 1:
            raise ValueError(f"rule frequency must be positive, got {self.frequency}")


class Grammar:
    """A deduplicated rule set with per-rule stats, immutable once built."""

    def __init__(self, rules: Mapping[Rule, RuleStats] | None = None):
        self._rules: dict[Rule, RuleStats] = dict(rules or {})

    @property
    def rules(self) -> Mapping[Rule, RuleStats]:
        return MappingProxyType(self._rules)

    def __len__(self) -> int:
        return len(self._rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self._rules)

    def __contains__(self, rule: Rule) -> bool:
        return rule in self._rules

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grammar):
            return NotImplemented
        return self._rules == other._rules

    def __repr__(self) -> str:
        return f"Grammar({len(self._rules)} rules)"

    def stats(self, rule: Rule) -> RuleStats:
        return self._rules[rule]

    @property
    def max_rule_length(self) -> int:
        return max((len(rule) for rule in self._rules), default=0)

    def without(self, rules: Iterable[Rule]) -> "Grammar":
        """Copy of this grammar minus the given rules."""
        doomed = set(rules)
        return Grammar({r: s for r, s in self._rules.items() if r not in doomed})

    def with_benefits(self, benefits: Mapping[Rule, int]) -> "Grammar":
        """Copy of this grammar with benefit scores stamped onto its rules."""
        return Grammar(
            {
                r: RuleStats(s.frequency, benefits.get(r, s.benefit))
                for r, s in self._rules.items()
            }
        )


def extract_grammar(training: Corpus) -> Grammar:
    """Read one rule per annotated base NP and deduplicate with counts."""
    counts: Counter[Rule] = Counter()
    for sentence in training:
        tags = sentence.tags
        for span in sentence.nps:
            counts[Rule(tags[span.start : span.end])] += 1
    return Grammar({rule: RuleStats(frequency=n) for rule, n in counts.items()})


def drop_singletons(grammar: Grammar) -> Grammar:
    """Keep only rules seen at least twice in training."""
    return Grammar({r: s for r, s in grammar.rules.items() if s.frequency >= 2})


@dataclass
class MatchStats:
    """Mutable instrumentation counter for trie traversal."""

    node_visits: int = 0


class _TrieNode:
    __slots__ = ("children", "rule")

    def __init__(self) -> None:
        self.children: dict[str, _TrieNode] = {}
        self.rule: Rule | None = None


class RuleTrie:
    """Prefix trie over rule tag sequences for longest-match lookup."""

    def __init__(self, rules: Iterable[Rule]):
        self._root = _TrieNode()
        count = 0
        for rule in rules:
            node = self._root
            for tag in rule.tags:
                node = node.children.setdefault(tag, _TrieNode())
            if node.rule is None:
                count += 1
            node.rule = rule
        self._terminal_count = count

    @property
    def terminal_count(self) -> int:
        return self._terminal_count

    def longest_match(
        self,
        tags: Sequence[str],
        start: int = 0,
        stats: MatchStats | None = None,
    ) -> Rule | None:
        """Longest rule whose tags equal tags[start : start + len(rule)]."""
        node = self._root
        best: Rule | None = None
        i = start
        n = len(tags)
        visits = 0
        while i < n:
            child = node.children.get(tags[i])
            if child is None:
                break
            visits += 1
            node = child
            i += 1
            if node.rule is not None:
                best = node.rule
        if stats is not None:
            stats.node_visits += visits
        return best

    def __contains__(self, tags: Sequence[str]) -> bool:
        node = self._root
        for tag in tags:
            child = node.children.get(tag)
            if child is None:
                return False
            node = child
        return node.rule is not None


def compile_trie(grammar: Grammar) -> RuleTrie:
    return RuleTrie(grammar)


def save_grammar(grammar: Grammar, stream: TextIO) -> None:
    """Write one rule per line, sorted for reproducible output."""
    for rule in sorted(grammar):
        stats = grammar.stats(rule)
        line = str(rule)
        if rule.tags[0] == "#":
            line = " " + line  # keep the line from reading back as a comment
        line += f"\tfreq={stats.frequency}"
        if stats.benefit is not None:
            line += f"\tbenefit={stats.benefit}"
        stream.write(line + "\n")


def load_grammar(stream: TextIO) -> Grammar:
    rules: dict[Rule, RuleStats] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        try:
            rule = Rule(tuple(parts[0].split()))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from exc
        frequency = 1
        benefit: int | None = None
        for extra in parts[1:]:
            name, _, value = extra.partition("=")
            if name == "freq":
                frequency = _parse_int(value, "freq", lineno)
            elif name == "benefit":
                benefit = _parse_int(value, "benefit", lineno)
            else:
                raise ParseError(f"unknown field {extra!r}", lineno)
        if rule in rules:
            raise ParseError(f"duplicate rule {rule}", lineno)
        try:
            rules[rule] = RuleStats(frequency, benefit)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from exc
    return Grammar(rules)


def _parse_int(value: str, name: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{name} must be an integer, got {value!r}", lineno) from None
