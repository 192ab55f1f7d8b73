"""Synthetic flat-NP corpora with controllable ambiguity and noise.

Sentences come from weighted skeleton templates whose ``NP`` slots are
filled from weighted NP templates and annotated as reference spans.
Difficulty is injected three ways: tag sequences that occur both inside
and outside NPs (gerund, measure and bare-plural traps), occasional
annotation errors that merge adjacent reference NPs, and per-token tag
noise. All three produce grammar rules that hurt precision until they
are pruned away.
"""

import random

from .corpus import Corpus, Sentence, Span, Token

_WORDS: dict[str, list[str]] = {
    "DT": ["the", "a", "this", "that"],
    "JJ": ["big", "sunny", "corporate", "red", "quarterly", "new"],
    "NN": ["market", "deal", "resort", "business", "nation", "product", "group", "plan"],
    "NNS": ["titans", "towns", "companies", "products", "results", "analysts", "points"],
    "NNP": ["Boca", "Raton", "Palm", "Beach", "Acme", "Globex", "Initech", "Vandelay"],
    "PRP": ["it", "they", "she"],
    "PRP$": ["their", "its", "her"],
    "VB": ["buy", "sell", "merge", "expand"],
    "VBD": ["rose", "fell", "signed", "announced", "bought"],
    "VBZ": ["is", "says", "owns"],
    "VBP": ["say", "own", "plan"],
    "VBG": ["manufacturing", "boarding", "operating", "rising"],
    "IN": ["of", "in", "for", "like", "at"],
    "TO": ["to"],
    "CC": ["and", "or"],
    "RB": ["typically", "sharply", "again"],
    "CD": ["5", "15", "25", "40"],
    ",": [","],
    ".": ["."],
}

_TAG_CHOICES = tuple(_WORDS)

# (tag template, weight); every slot instance becomes one reference NP.
_NP_TEMPLATES: tuple[tuple[tuple[str, ...], int], ...] = (
    (("DT", "NN"), 10),
    (("DT", "JJ", "NN"), 6),
    (("DT", "NN", "NN"), 3),
    (("NN",), 5),
    (("NNS",), 4),
    (("DT", "JJ", "NNS"), 3),
    (("NNP", "NNP"), 7),
    (("PRP",), 3),
    (("PRP$", "NN"), 3),
    (("PRP$", "JJ", "NN"), 2),
    (("CD", "NNS"), 2),
    (("VBG", "NNS"), 1),
)

# (slot sequence, weight); "NP" slots are annotated, literal tags are not.
# The gerund, measure and bare-plural skeletons deliberately repeat NP
# template tag sequences outside any annotation.
_SKELETONS: tuple[tuple[tuple[str, ...], int], ...] = (
    (("NP", "VBD", "NP", "."), 5),
    (("NP", "VBD", "IN", "NP", "."), 5),
    (("NP", "VBZ", "NP", "IN", "NP", "."), 3),
    (("NP", "VBD", "RB", "."), 2),
    (("RB", "NP", "VBD", "NP", "."), 2),
    (("NP", "VBP", "TO", "VB", "NP", "."), 2),
    (("NP", "VBD", "IN", "VBG", "NNS", "."), 4),
    (("NP", "VBZ", "VBG", "NNS", "RB", "."), 2),
    (("NP", "VBD", "CD", "NNS", "."), 3),
    (("NP", "VBD", "NNS", "RB", "."), 2),
    (("NP", ",", "NP", ",", "CC", "NP", "."), 3),
)


def _weighted_choice(rng: random.Random, table):
    population = [item for item, _ in table]
    weights = [weight for _, weight in table]
    return rng.choices(population, weights=weights, k=1)[0]


def generate_corpus(
    n_sentences: int = 2000,
    seed: int = 0,
    tag_noise: float = 0.05,
    annotation_error_rate: float = 0.05,
) -> Corpus:
    """Build a deterministic synthetic corpus for end-to-end experiments."""
    rng = random.Random(seed)
    sentences: list[Sentence] = []
    for _ in range(n_sentences):
        skeleton = _weighted_choice(rng, _SKELETONS)
        tokens: list[Token] = []
        spans: list[Span] = []
        for slot in skeleton:
            if slot == "NP":
                template = _weighted_choice(rng, _NP_TEMPLATES)
                start = len(tokens)
                for tag in template:
                    tokens.append(Token(rng.choice(_WORDS[tag]), tag))
                spans.append(Span(start, len(tokens)))
            else:
                tokens.append(Token(rng.choice(_WORDS[slot]), slot))
        if len(spans) >= 2 and rng.random() < annotation_error_rate:
            # Annotation error: an adjacent NP pair merges into one span
            # together with whatever separates them.
            i = rng.randrange(len(spans) - 1)
            spans[i : i + 2] = [Span(spans[i].start, spans[i + 1].end)]
        if tag_noise > 0:
            for i, token in enumerate(tokens):
                if rng.random() < tag_noise:
                    alternative = rng.choice(_TAG_CHOICES)
                    while alternative == token.tag:
                        alternative = rng.choice(_TAG_CHOICES)
                    tokens[i] = Token(token.word, alternative)
        sentences.append(Sentence(tuple(tokens), tuple(spans)))
    return Corpus(tuple(sentences), source=f"synthetic(seed={seed})")
