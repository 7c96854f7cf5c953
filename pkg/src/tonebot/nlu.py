"""Intent classification and dictionary entity recognition over a Skill.

Intent confidence is the cosine similarity between token-count vectors of
the input and an intent's examples, taking the best example per intent.
Cosine over counts makes the measure insensitive to repeating the input and
keeps every confidence hand-checkable.

Entities are found with a longest-match, left-to-right scan over all
declared surface forms (value labels plus synonyms), case-insensitive and
non-overlapping, so "yeah" resolves to the `yes` value of `@yesno`.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .skill import Skill
from .text import tokenize

DEFAULT_MIN_CONFIDENCE = 0.2


@dataclass(frozen=True)
class IntentMatch:
    intent: str
    confidence: float


@dataclass(frozen=True)
class EntityMatch:
    entity: str
    value: str
    surface: str
    start: int
    length: int


def _cosine(a: Counter, b: Counter) -> float:
    if not a or not b:
        return 0.0
    dot = sum(count * b[token] for token, count in a.items())
    if dot == 0:
        return 0.0
    norm = math.sqrt(sum(c * c for c in a.values())) * math.sqrt(sum(c * c for c in b.values()))
    return dot / norm


def classify_intents(
    text: str, skill: Skill, min_confidence: float = DEFAULT_MIN_CONFIDENCE
) -> list[IntentMatch]:
    """Rank intents by best-example cosine; an empty list means irrelevant."""
    counts = Counter(tokenize(text))
    matches = []
    for intent in skill.intents:
        confidence = max(
            (_cosine(counts, Counter(tokenize(example))) for example in intent.examples),
            default=0.0,
        )
        if confidence >= min_confidence:
            matches.append(IntentMatch(intent.name, confidence))
    matches.sort(key=lambda m: (-m.confidence, m.intent))
    return matches


def _surface_index(skill: Skill) -> dict[tuple[str, ...], tuple[str, str, str]]:
    """Map normalized surface-form tokens -> (entity, value, surface).

    Document order wins on collisions, matching first-declared semantics.
    """
    index: dict[tuple[str, ...], tuple[str, str, str]] = {}
    for entity in skill.entities:
        for value in entity.values:
            for form in value.surface_forms:
                key = tuple(tokenize(form))
                if key and key not in index:
                    index[key] = (entity.name, value.label, form)
    return index


def recognize_entities(text: str, skill: Skill) -> list[EntityMatch]:
    """Longest-match dictionary scan; returns matches in utterance order."""
    tokens = tokenize(text)
    index = _surface_index(skill)
    if not index:
        return []
    max_len = max(len(k) for k in index)
    matches = []
    i = 0
    while i < len(tokens):
        found = 0
        for length in range(min(max_len, len(tokens) - i), 0, -1):
            hit = index.get(tuple(tokens[i : i + length]))
            if hit:
                entity, value, surface = hit
                matches.append(EntityMatch(entity, value, surface, i, length))
                found = length
                break
        i += found or 1
    return matches
