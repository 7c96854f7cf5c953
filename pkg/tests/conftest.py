from __future__ import annotations

import pytest

from tonebot import assets
from tonebot.language import load_phrase_table, load_profile
from tonebot.pipeline import ChatEngine, PipelineConfig, load_engine
from tonebot.skill import parse_skill
from tonebot.tone import load_lexicon


@pytest.fixture(scope="session")
def skill():
    return parse_skill(assets.read_asset(assets.SKILL_FILE))


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(assets.read_asset(assets.LEXICON_FILE))


@pytest.fixture(scope="session")
def table():
    return load_phrase_table(assets.read_asset(assets.PHRASES_FILE))


@pytest.fixture(scope="session")
def profiles():
    return {
        code: load_profile(assets.profile_path(code).read_text(encoding="utf-8"))
        for code in assets.PROFILE_CODES
    }


@pytest.fixture
def engine() -> ChatEngine:
    return load_engine()


@pytest.fixture
def engine_factory():
    def make(**kwargs) -> ChatEngine:
        config = kwargs.pop("config", None) or PipelineConfig(**kwargs.pop("config_kwargs", {}))
        return load_engine(config=config, **kwargs)

    return make
