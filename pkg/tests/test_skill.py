from __future__ import annotations

import json
from pathlib import Path

import pytest

from tonebot import assets
from tonebot.conditions import And, ContextCompare, IntentRef, Welcome
from tonebot.skill import (
    SkillError,
    load_skill,
    parse_skill,
    serialize_skill,
    validate_skill,
)

BROKEN_DIR = Path(__file__).parent / "data" / "broken_skills"


def make_doc(**overrides) -> str:
    doc = {
        "name": "demo",
        "intents": [{"name": "greetings", "examples": ["hello", "hi"]}],
        "entities": [{"name": "yesno", "values": [{"label": "yes", "synonyms": ["yeah"]}]}],
        "dialog": [
            {"id": "welcome", "title": "W", "condition": "welcome", "responses": ["Hello."]},
            {"id": "fallback", "title": "F", "condition": "anything_else", "responses": ["Hm."]},
        ],
    }
    doc.update(overrides)
    return json.dumps(doc)


def test_shipped_skill_parses_with_three_tone_children(skill):
    welcome = skill.dialog[0]
    assert welcome.condition == Welcome()
    assert welcome.responses[0].endswith("How are you feeling about exams?")
    tone_children = [
        c
        for c in welcome.children
        if any(
            isinstance(n, ContextCompare) and n.variable == "tone_primary"
            for n in _walk(c.condition)
        )
    ]
    assert len(welcome.children) == 3
    assert [c.id for c in tone_children] == [
        "stressed_about_exams",
        "feeling_good_about_exams",
        "angry_about_exams",
    ]


def _walk(node):
    from tonebot.conditions import walk

    return list(walk(node))


def test_shipped_skill_validates_clean(skill):
    report = validate_skill(skill)
    assert report.ok, str(report)


def test_duplicate_intent_name_is_validation_error():
    doc = make_doc(
        intents=[
            {"name": "greetings", "examples": ["hello"]},
            {"name": "greetings", "examples": ["howdy"]},
        ]
    )
    with pytest.raises(SkillError) as exc:
        parse_skill(doc)
    assert any("duplicate_intent_name" in d for d in exc.value.diagnostics)


def test_condition_strings_become_asts():
    doc = make_doc(
        dialog=[
            {"id": "welcome", "title": "W", "condition": "welcome", "responses": ["Hello."]},
            {
                "id": "n",
                "title": "N",
                "condition": '#greetings && ($tone_primary == "joy")',
                "responses": ["x"],
            },
            {"id": "fallback", "title": "F", "condition": "anything_else", "responses": ["Hm."]},
        ]
    )
    skill = parse_skill(doc)
    assert skill.dialog[1].condition == And(
        IntentRef("greetings"), ContextCompare("tone_primary", "==", "joy")
    )


def test_parse_reports_all_errors_with_location():
    doc = make_doc(
        dialog=[
            {"id": "a", "title": "A", "condition": "#broken &&", "responses": ["x"]},
            {"id": "b", "title": "B", "condition": "(#also", "responses": ["y"]},
        ]
    )
    with pytest.raises(SkillError) as exc:
        load_skill(doc)
    messages = exc.value.diagnostics
    assert len(messages) == 2
    assert any("node 'a'" in m and "position" in m for m in messages)
    assert any("node 'b'" in m for m in messages)


def test_not_json_is_syntax_error():
    with pytest.raises(SkillError) as exc:
        load_skill("{nope")
    assert "not valid JSON" in exc.value.diagnostics[0]


@pytest.mark.parametrize(
    "fixture, code",
    [
        ("duplicate_intent.json", "duplicate_intent_name"),
        ("missing_fallback.json", "missing_fallback"),
        ("undeclared_entity.json", "undeclared_entity"),
        ("unreachable_node.json", "unreachable_node"),
        ("empty_examples.json", "empty_intent_examples"),
        ("misplaced_fallback.json", "misplaced_fallback"),
        ("missing_welcome.json", "missing_welcome"),
    ],
)
def test_broken_fixture_produces_specific_violation(fixture, code):
    skill = load_skill((BROKEN_DIR / fixture).read_text(encoding="utf-8"))
    report = validate_skill(skill)
    assert not report.ok
    assert code in {v.code for v in report.violations}


def test_bad_condition_fixture_fails_at_load():
    with pytest.raises(SkillError) as exc:
        load_skill((BROKEN_DIR / "bad_condition.json").read_text(encoding="utf-8"))
    assert any("condition parse error" in d for d in exc.value.diagnostics)


def test_undeclared_intent_reference():
    doc = make_doc(
        dialog=[
            {"id": "welcome", "title": "W", "condition": "welcome", "responses": ["Hello."]},
            {"id": "n", "title": "N", "condition": "#nonexistent", "responses": ["x"]},
            {"id": "fallback", "title": "F", "condition": "anything_else", "responses": ["Hm."]},
        ]
    )
    report = validate_skill(load_skill(doc))
    assert "undeclared_intent" in {v.code for v in report.violations}


def test_duplicate_node_ids_rejected():
    doc = make_doc(
        dialog=[
            {"id": "welcome", "title": "W", "condition": "welcome", "responses": ["Hello."]},
            {"id": "welcome", "title": "W2", "condition": "true", "responses": ["x"]},
            {"id": "fallback", "title": "F", "condition": "anything_else", "responses": ["Hm."]},
        ]
    )
    report = validate_skill(load_skill(doc))
    assert "duplicate_node_id" in {v.code for v in report.violations}


def test_parsing_is_deterministic():
    document = assets.read_asset(assets.SKILL_FILE)
    assert parse_skill(document) == parse_skill(document)


def test_serialize_round_trips_shipped_skill(skill):
    assert parse_skill(serialize_skill(skill)) == skill


def test_serialized_skill_is_stable(skill):
    once = serialize_skill(skill)
    assert serialize_skill(parse_skill(once)) == once


def test_validated_skill_satisfies_type_invariants(skill):
    names = [i.name for i in skill.intents]
    assert len(names) == len(set(names))
    for intent in skill.intents:
        assert intent.examples
    entity_names = [e.name for e in skill.entities]
    assert len(entity_names) == len(set(entity_names))
    for entity in skill.entities:
        for value in entity.values:
            assert value.label in value.surface_forms
            assert len(set(value.surface_forms)) == len(value.surface_forms)
    ids = [n.id for n, _ in skill.walk_nodes()]
    assert len(ids) == len(set(ids))
    top = skill.dialog
    assert sum(1 for n, _ in skill.walk_nodes() if n.condition == Welcome()) == 1
    assert top[-1].id == "anything_else"
