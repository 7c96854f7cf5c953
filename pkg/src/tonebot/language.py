"""Language identification and phrase-table translation.

Detection scores each loaded profile as ``0.6 * stopword hit ratio +
0.4 * character-trigram cosine`` on case-folded input (case folding first is
deliberate: all-caps input must detect identically to lowercase). Inputs
shorter than 4 characters, or scoring zero everywhere, come back as
("und", 0).

Translation is a longest-match segmentation against a bilingual phrase
table. Segments with no table row pass through verbatim and mark the result
as not fully translated; a registered external provider, when present, gets
a chance at those segments first and any provider failure degrades back to
pass-through rather than failing the turn.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Protocol

from .text import clean, tokenize

log = logging.getLogger(__name__)

UNDETERMINED = "und"
STOPWORD_WEIGHT = 0.6
TRIGRAM_WEIGHT = 0.4
MIN_TEXT_CHARS = 4


class LanguageDataError(ValueError):
    pass


@dataclass(frozen=True)
class LanguageProfile:
    code: str
    stopwords: frozenset[str]
    trigrams: tuple[tuple[str, int], ...]


class TranslationProvider(Protocol):
    """Contract for an external detection/translation service."""

    def detect(self, text: str) -> tuple[str, float]: ...

    def translate(self, text: str, source: str, target: str) -> str: ...


def char_trigrams(text: str) -> Counter:
    cleaned = clean(text)
    return Counter(cleaned[i : i + 3] for i in range(len(cleaned) - 2))


def load_profile(document: str) -> LanguageProfile:
    """Load one profile JSON: ``{code, stopwords: [...], trigrams: {...}}``."""
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise LanguageDataError(f"profile is not valid JSON: {exc}") from exc
    code = data.get("code")
    stopwords = data.get("stopwords")
    trigrams = data.get("trigrams")
    if not isinstance(code, str) or not code:
        raise LanguageDataError("profile missing language code")
    if not isinstance(stopwords, list) or not stopwords:
        raise LanguageDataError(f"profile {code}: stopword set must be non-empty")
    if not isinstance(trigrams, dict):
        raise LanguageDataError(f"profile {code}: trigrams must be an object")
    return LanguageProfile(
        code=code,
        stopwords=frozenset(w.casefold() for w in stopwords),
        trigrams=tuple(sorted(trigrams.items())),
    )


def _trigram_cosine(sample: Counter, profile: LanguageProfile) -> float:
    if not sample or not profile.trigrams:
        return 0.0
    dot = 0.0
    norm_p = 0.0
    profile_counts = dict(profile.trigrams)
    for tri, count in profile_counts.items():
        norm_p += count * count
        if tri in sample:
            dot += count * sample[tri]
    if dot == 0.0:
        return 0.0
    norm_s = sum(c * c for c in sample.values())
    return dot / (norm_p**0.5 * norm_s**0.5)


def detect_language(text: str, profiles: dict[str, LanguageProfile]) -> tuple[str, float]:
    """Best (language code, confidence in [0,1]) for the input text."""
    if not profiles:
        raise LanguageDataError("no language profiles loaded")
    folded = text.casefold()
    if len(folded.strip()) < MIN_TEXT_CHARS:
        return UNDETERMINED, 0.0
    tokens = tokenize(folded)
    trigrams = char_trigrams(folded)

    scores: dict[str, float] = {}
    for code, profile in profiles.items():
        stop_ratio = (
            sum(1 for t in tokens if t in profile.stopwords) / len(tokens) if tokens else 0.0
        )
        scores[code] = STOPWORD_WEIGHT * stop_ratio + TRIGRAM_WEIGHT * _trigram_cosine(
            trigrams, profile
        )

    total = sum(scores.values())
    if total == 0.0:
        return UNDETERMINED, 0.0
    best = min(scores, key=lambda c: (-scores[c], c))
    return best, scores[best] / total


@dataclass(frozen=True)
class PhraseTable:
    # (source_lang, target_lang) -> normalized source tokens -> target text
    rows: tuple[tuple[tuple[str, str], tuple[tuple[tuple[str, ...], str], ...]], ...]

    def pair_index(self) -> dict[tuple[str, str], dict[tuple[str, ...], str]]:
        return {pair: dict(entries) for pair, entries in self.rows}

    def languages(self) -> set[str]:
        codes = set()
        for (source, target), _ in self.rows:
            codes.update((source, target))
        return codes

    def all_rows(self) -> list[tuple[str, str, tuple[str, ...], str]]:
        return [
            (source, target, phrase, text)
            for (source, target), entries in self.rows
            for phrase, text in entries
        ]


def load_phrase_table(document: str) -> PhraseTable:
    """Parse phrase-table CSV ``source_lang,target_lang,source_phrase,target_phrase``."""
    index: dict[tuple[str, str], dict[tuple[str, ...], str]] = {}
    errors: list[str] = []
    reader = csv.reader(io.StringIO(document))
    header_done = False
    for lineno, row in enumerate(reader, start=1):
        if not row or row[0].lstrip().startswith("#"):
            continue
        if not header_done:
            header_done = True
            if [c.strip().lower() for c in row] == [
                "source_lang",
                "target_lang",
                "source_phrase",
                "target_phrase",
            ]:
                continue
        if len(row) != 4:
            errors.append(f"line {lineno}: expected 4 fields, got {len(row)}")
            continue
        source, target, source_phrase, target_phrase = row
        key = tuple(tokenize(source_phrase))
        if not key:
            errors.append(f"line {lineno}: source phrase is empty after normalization")
            continue
        pair = index.setdefault((source.strip(), target.strip()), {})
        if key in pair:
            errors.append(f"line {lineno}: duplicate source phrase {source_phrase!r}")
            continue
        pair[key] = target_phrase
    if errors:
        raise LanguageDataError("; ".join(errors))
    return PhraseTable(
        tuple((pair, tuple(sorted(entries.items()))) for pair, entries in sorted(index.items()))
    )


@dataclass
class TranslationResult:
    text: str
    fully_translated: bool
    segments: list[tuple[str, str]]  # (text, "table-hit" | "pass-through" | "provider" | "identity")

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "fully_translated": self.fully_translated,
            "segments": [list(s) for s in self.segments],
        }


def translate(
    text: str,
    source: str,
    target: str,
    table: PhraseTable,
    provider: TranslationProvider | None = None,
) -> TranslationResult:
    """Translate text between two known codes via the table, then provider."""
    if source == target:
        return TranslationResult(text, True, [(text, "identity")])

    entries = table.pair_index().get((source, target), {})
    max_len = max((len(k) for k in entries), default=0)
    tokens = text.split()
    normalized = [tokenize(t) for t in tokens]

    segments: list[tuple[str, str]] = []
    pending: list[str] = []  # raw tokens with no table match, grouped

    def flush_pending() -> None:
        if not pending:
            return
        segment = " ".join(pending)
        pending.clear()
        if provider is not None:
            try:
                segments.append((provider.translate(segment, source, target), "provider"))
                return
            except Exception as exc:  # provider failure degrades, never aborts
                log.warning("translation provider failed for %r: %s", segment, exc)
        segments.append((segment, "pass-through"))

    i = 0
    while i < len(tokens):
        hit = None
        # Keys are built from raw-token windows because one raw token may
        # normalize to several tokens ("I'm" -> "i m") or to none ("?"), so
        # the window is capped by the normalized key length, not its own.
        for length in range(len(tokens) - i if max_len else 0, 0, -1):
            key = tuple(t for part in normalized[i : i + length] for t in part)
            if not key or len(key) > max_len:
                continue
            if key in entries:
                hit = (entries[key], length)
                break
        if hit:
            flush_pending()
            segments.append((hit[0], "table-hit"))
            i += hit[1]
        else:
            pending.append(tokens[i])
            i += 1
    flush_pending()

    result_text = " ".join(s for s, _ in segments if s)
    fully = all(kind != "pass-through" for _, kind in segments)
    return TranslationResult(result_text, fully, segments)
