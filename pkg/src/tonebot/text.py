"""Shared text normalization.

Tone analysis, intent classification, entity recognition, and phrase-table
lookups all tokenize through here so that a phrase matched by one stage is
matched identically by every other stage.
"""

from __future__ import annotations

import re

# Anything that is not a word character or whitespace becomes a space, so
# "exams?" and "exams" tokenize the same and "I'm" splits into "i m".
_PUNCT = re.compile(r"[^\w\s]+", re.UNICODE)
_WS = re.compile(r"\s+")


def tokenize(text: str) -> list[str]:
    """Lowercase, strip punctuation to spaces, split on whitespace."""
    return _PUNCT.sub(" ", text.casefold()).split()


def clean(text: str) -> str:
    """Casefolded text with punctuation removed and whitespace collapsed."""
    return _WS.sub(" ", _PUNCT.sub(" ", text.casefold())).strip()
