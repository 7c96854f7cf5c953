"""Lexicon-based tone scoring over emotion and writing-style categories.

Scoring walks the normalized token stream left to right taking the longest
phrase match at each position (matched tokens are consumed, so a multi-word
entry outranks the single tokens inside it). Every lexicon entry sharing the
matched phrase contributes its weight to its own category, combined per
category as a probabilistic OR: ``score = 1 - prod(1 - w_i)``, which keeps
scores in [0, 1] no matter how many entries hit.

Routing only ever looks at the emotion categories. One or two emotions at or
above the threshold give a dominant emotion; three or more are treated as
ambiguous and the dialog is expected to ask for clarification instead.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass, field

from .text import tokenize

EMOTIONS = ("anger", "fear", "sadness", "joy", "disgust")
LANGUAGE_TONES = ("analytical", "confident", "tentative")
CATEGORIES = EMOTIONS + LANGUAGE_TONES

# Tie-break order for dominance; earlier wins on equal scores.
_EMOTION_RANK = {name: i for i, name in enumerate(EMOTIONS)}

MAX_PHRASE_TOKENS = 4


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class LexiconEntry:
    phrase: tuple[str, ...]
    category: str
    weight: float


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[LexiconEntry, ...]
    version: str

    def phrase_index(self) -> dict[tuple[str, ...], list[LexiconEntry]]:
        index: dict[tuple[str, ...], list[LexiconEntry]] = {}
        for entry in self.entries:
            index.setdefault(entry.phrase, []).append(entry)
        return index


@dataclass(frozen=True)
class ToneOutcome:
    status: str  # "dominant" | "none" | "ambiguous"
    emotion: str | None = None

    def as_context_value(self) -> str:
        """The value attached to the `tone_primary` context variable."""
        return self.emotion if self.status == "dominant" else self.status


@dataclass
class ToneAnalysis:
    scores: dict[str, float]
    emotions_above_threshold: list[str]
    language_tones_above_threshold: list[str]
    outcome: ToneOutcome
    threshold: float
    hits: list[tuple[str, str, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "scores": {c: round(self.scores[c], 6) for c in CATEGORIES},
            "emotions": list(self.emotions_above_threshold),
            "language_tones": list(self.language_tones_above_threshold),
            "outcome": self.outcome.status,
            "dominant": self.outcome.emotion,
            "threshold": self.threshold,
        }


def load_lexicon(document: str) -> Lexicon:
    """Parse lexicon CSV (header ``phrase,category,weight``).

    Blank lines and ``#`` comment lines are skipped. Every malformed row is
    reported with its line number.
    """
    entries: list[LexiconEntry] = []
    seen: dict[tuple[tuple[str, ...], str], int] = {}
    errors: list[str] = []

    reader = csv.reader(io.StringIO(document))
    header_done = False
    for lineno, row in enumerate(reader, start=1):
        if not row or row[0].lstrip().startswith("#"):
            continue
        if not header_done:
            if [c.strip().lower() for c in row] != ["phrase", "category", "weight"]:
                errors.append(f"line {lineno}: expected header phrase,category,weight")
            header_done = True
            continue
        if len(row) != 3:
            errors.append(f"line {lineno}: expected 3 fields, got {len(row)}")
            continue
        phrase_text, category, weight_text = (c.strip() for c in row)
        phrase = tuple(tokenize(phrase_text))
        if not phrase:
            errors.append(f"line {lineno}: phrase is empty after normalization")
            continue
        if len(phrase) > MAX_PHRASE_TOKENS:
            errors.append(f"line {lineno}: phrase longer than {MAX_PHRASE_TOKENS} tokens")
            continue
        if category not in CATEGORIES:
            errors.append(f"line {lineno}: unknown category {category!r}")
            continue
        try:
            weight = float(weight_text)
        except ValueError:
            errors.append(f"line {lineno}: weight {weight_text!r} is not a number")
            continue
        if not 0.0 < weight <= 1.0:
            errors.append(f"line {lineno}: weight out of range (0, 1]: {weight}")
            continue
        key = (phrase, category)
        if key in seen:
            errors.append(
                f"line {lineno}: duplicate of ({phrase_text!r}, {category}) from line {seen[key]}"
            )
            continue
        seen[key] = lineno
        entries.append(LexiconEntry(phrase, category, weight))

    if errors:
        raise LexiconError("; ".join(errors))
    version = hashlib.sha256(document.encode("utf-8")).hexdigest()[:12]
    return Lexicon(tuple(entries), version)


def _match_hits(tokens: list[str], index) -> list[LexiconEntry]:
    hits: list[LexiconEntry] = []
    i = 0
    while i < len(tokens):
        matched = 0
        for length in range(min(MAX_PHRASE_TOKENS, len(tokens) - i), 0, -1):
            entries = index.get(tuple(tokens[i : i + length]))
            if entries:
                hits.extend(entries)
                matched = length
                break
        i += matched or 1
    return hits


def dominance(scores: dict[str, float], threshold: float) -> ToneOutcome:
    """Apply the 0 / 1-2 / 3+ rule to emotions at or above the threshold."""
    qualified = [e for e in EMOTIONS if scores.get(e, 0.0) >= threshold]
    if not qualified:
        return ToneOutcome("none")
    if len(qualified) >= 3:
        return ToneOutcome("ambiguous")
    best = max(qualified, key=lambda e: (scores[e], -_EMOTION_RANK[e]))
    return ToneOutcome("dominant", best)


def analyze_tone(text: str, lexicon: Lexicon, threshold: float = 0.5) -> ToneAnalysis:
    """Score English text against the lexicon and derive the outcome."""
    tokens = tokenize(text)
    hits = _match_hits(tokens, lexicon.phrase_index())

    remainder = {c: 1.0 for c in CATEGORIES}
    for entry in hits:
        remainder[entry.category] *= 1.0 - entry.weight
    scores = {c: 1.0 - remainder[c] for c in CATEGORIES}

    def above(names) -> list[str]:
        qualified = [c for c in names if scores[c] >= threshold]
        return sorted(qualified, key=lambda c: (-scores[c], names.index(c)))

    return ToneAnalysis(
        scores=scores,
        emotions_above_threshold=above(EMOTIONS),
        language_tones_above_threshold=above(LANGUAGE_TONES),
        outcome=dominance(scores, threshold),
        threshold=threshold,
        hits=[(" ".join(e.phrase), e.category, e.weight) for e in hits],
    )
