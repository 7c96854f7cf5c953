"""Access to the data files shipped inside the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

SKILL_FILE = "exam_stress_skill.json"
LEXICON_FILE = "tone_lexicon.csv"
PHRASES_FILE = "phrases.csv"
CORPUS_FILE = "eval_corpus.csv"
PROFILE_CODES = ("en", "es", "fr", "de")


def asset_path(name: str) -> Path:
    path = resources.files("tonebot") / "assets" / name
    return Path(str(path))


def read_asset(name: str) -> str:
    return asset_path(name).read_text(encoding="utf-8")


def profile_path(code: str) -> Path:
    return asset_path(f"profiles/{code}.json")
