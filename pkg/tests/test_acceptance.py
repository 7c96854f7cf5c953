"""Acceptance gate: every release criterion, one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the criterion
lines alongside the pytest verdicts. Each test is self-contained so this
module alone demonstrates the full contract against the shipped assets.
"""

from __future__ import annotations

import functools
import itertools
import subprocess
import sys
import time
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tonebot import assets
from tonebot.evaluation import load_corpus, run_eval
from tonebot.language import detect_language, translate
from tonebot.pipeline import load_engine
from tonebot.speech import SidecarSpeechToText, SidecarTextToSpeech
from tonebot.tone import EMOTIONS, analyze_tone, dominance, load_lexicon

BROKEN_DIR = Path(__file__).parent / "data" / "broken_skills"


def criterion(name):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"[ACCEPTANCE] {name}: FAIL")
                raise
            print(f"[ACCEPTANCE] {name}: PASS")
            return result

        return run

    return wrap


# -- criterion: routing-accuracy reproduction ---------------------------------


@criterion("routing-accuracy reproduction (>=13/17, <2s, byte-identical reports)")
def test_eval_accuracy_reproduction():
    corpus = load_corpus(assets.read_asset(assets.CORPUS_FILE))
    assert len(corpus) == 17

    started = time.perf_counter()
    report = run_eval(corpus, load_engine())
    elapsed = time.perf_counter() - started

    assert report.correct_count >= 13, report.to_text()
    assert report.accuracy >= 13 / 17
    assert elapsed < 2.0, f"eval took {elapsed:.2f}s"

    again = run_eval(corpus, load_engine())
    assert report.to_json() == again.to_json()


# -- criterion: ambiguity failure mode ------------------------------------------


@criterion('ambiguity failure mode ("Bad" -> ambiguous, scored incorrect)')
def test_bad_is_ambiguous_and_scored_incorrect():
    lexicon = load_lexicon(assets.read_asset(assets.LEXICON_FILE))
    analysis = analyze_tone("Bad", lexicon, 0.5)
    assert analysis.outcome.status == "ambiguous"
    assert len(analysis.emotions_above_threshold) >= 3

    corpus = load_corpus(assets.read_asset(assets.CORPUS_FILE))
    report = run_eval(corpus, load_engine())
    (bad_row,) = [r for r in report.rows if r.utterance == "Bad"]
    assert bad_row.expected_route == "angry"
    assert not bad_row.correct
    assert bad_row.tone_outcome == "ambiguous"
    assert bad_row.fired_node == "clarify_tone"

    engine = load_engine()
    sid, _ = engine.create_session()
    result = engine.process_turn(sid, text="Bad", language="en")
    assert "not quite sure" in result.reply


# -- criterion: dialog tree conformance ------------------------------------------


@criterion("dialog tree golden transcript (greeting, tone routes, yes/no branches)")
def test_dialog_tree_conformance():
    engine = load_engine()

    sid, greeting = engine.create_session()
    assert "How are you feeling about exams?" in greeting.reply

    fear = engine.process_turn(sid, text="I am stressed", language="en")
    assert fear.diagnostics["fired_node"] == "stressed_about_exams"

    yes = engine.process_turn(sid, text="yeah", language="en")
    assert yes.diagnostics["fired_node"] == "stressed_more_tips"
    assert yes.diagnostics["entities"][0]["value"] == "yes"

    sid2, _ = engine.create_session()
    sad = engine.process_turn(sid2, text="I want it to be over", language="en")
    assert sad.diagnostics["tone_primary"] == "sadness"
    assert sad.diagnostics["fired_node"] == "stressed_about_exams"
    no = engine.process_turn(sid2, text="no", language="en")
    assert no.diagnostics["fired_node"] == "stressed_wrap_up"
    assert "wish you well" in no.reply

    sid3, _ = engine.create_session()
    joy = engine.process_turn(sid3, text="I'm feeling pretty good", language="en")
    assert joy.diagnostics["fired_node"] == "feeling_good_about_exams"

    sid4, _ = engine.create_session()
    anger = engine.process_turn(sid4, text="I hate exams", language="en")
    assert anger.diagnostics["fired_node"] == "angry_about_exams"


# -- criterion: property suites ---------------------------------------------------


@criterion("property: tone score bounds and single-token monotonicity")
def test_property_tone_bounds_and_monotonicity():
    from tonebot.tone import Lexicon, LexiconEntry

    words = "aa bb cc dd".split()

    @settings(max_examples=150, deadline=None)
    @given(
        st.lists(
            st.tuples(st.sampled_from(words), st.sampled_from(EMOTIONS),
                      st.floats(0.05, 1.0)),
            max_size=6,
            unique_by=lambda r: (r[0], r[1]),
        ),
        st.lists(st.sampled_from(words), min_size=1, max_size=8),
        st.sampled_from(EMOTIONS),
        st.floats(0.05, 1.0),
    )
    def check(rows, text_tokens, category, weight):
        text = " ".join(text_tokens)
        lexicon = Lexicon(tuple(LexiconEntry((p,), c, w) for p, c, w in rows), "t")
        analysis = analyze_tone(text, lexicon)
        assert all(0.0 <= s <= 1.0 for s in analysis.scores.values())
        # "Adding" must not overwrite an existing (phrase, category) pair.
        deduped: dict = {}
        for p, c, w in rows + [(text_tokens[0], category, weight)]:
            deduped.setdefault((p, c), (p, c, w))
        augmented = Lexicon(tuple(LexiconEntry((p,), c, w) for p, c, w in deduped.values()), "t")
        assert analyze_tone(text, augmented).scores[category] >= analysis.scores[category] - 1e-12

    check()


@criterion("property: dominance rule exhaustive over 0-5 qualifying emotions")
def test_property_dominance_exhaustive():
    for size in range(0, 6):
        for subset in itertools.combinations(EMOTIONS, size):
            scores = {e: (0.9 if e in subset else 0.0) for e in EMOTIONS}
            outcome = dominance(scores, 0.5)
            expected = "none" if size == 0 else "dominant" if size <= 2 else "ambiguous"
            assert outcome.status == expected, (subset, outcome)


@criterion("property: condition grammar unambiguous vs recursive-descent oracle")
def test_property_grammar_unambiguous():
    from test_conditions import conditions, oracle_parse

    from tonebot.conditions import condition_to_source, parse_condition

    @settings(max_examples=150, deadline=None)
    @given(conditions)
    def check(ast):
        source = condition_to_source(ast)
        assert parse_condition(source) == ast == oracle_parse(source)

    check()


@criterion("property: dialog totality and first-match on random evidence")
def test_property_dialog_totality():
    from test_dialog import evidence_strategy

    from tonebot.dialog import SessionContext, TurnEvidence, evaluate_condition, step_dialog
    from tonebot.skill import parse_skill

    skill = parse_skill(assets.read_asset(assets.SKILL_FILE))

    @settings(max_examples=150, deadline=None)
    @given(st.lists(evidence_strategy, min_size=1, max_size=5))
    def check(sequence):
        session = SessionContext()
        step_dialog(skill, session, TurnEvidence(is_first_turn=True))
        for evidence in sequence:
            focused = session.position
            outcome = step_dialog(skill, session, evidence)
            scanned = list(skill.node(focused).children) if focused else []
            scanned += list(skill.dialog)
            hits = [n.id for n in scanned if evaluate_condition(n.condition, evidence)]
            assert hits and hits[0] == outcome.node_id

    check()


@criterion("property: translation identity and round-trip over every shipped row")
def test_property_translation_identity_and_round_trip():
    from tonebot.language import load_phrase_table
    from tonebot.text import tokenize

    table = load_phrase_table(assets.read_asset(assets.PHRASES_FILE))

    @settings(max_examples=100, deadline=None)
    @given(st.text(max_size=50), st.sampled_from(["en", "es", "fr", "de"]))
    def identity(text, lang):
        result = translate(text, lang, lang, table)
        assert result.text == text and result.fully_translated

    identity()

    rows = table.all_rows()
    assert rows
    for source, target, key, target_text in rows:
        forward = translate(" ".join(key), source, target, table)
        assert forward.fully_translated and forward.text == target_text
        back = translate(target_text, target, source, table)
        assert back.fully_translated and tuple(tokenize(back.text)) == key


@criterion("property: detection case-invariance (capitalization fix)")
def test_property_detection_case_invariance():
    from tonebot.language import load_profile

    profiles = {
        code: load_profile(assets.profile_path(code).read_text(encoding="utf-8"))
        for code in assets.PROFILE_CODES
    }

    @settings(max_examples=150, deadline=None)
    @given(st.text(max_size=40))
    def check(text):
        assert detect_language(text, profiles) == detect_language(text.upper(), profiles)

    check()
    assert detect_language("HOLA, ¿CÓMO ESTÁS?", profiles)[0] == "es"


@criterion("property: mock speech round-trip transcribe(synthesize(t)) == t")
def test_property_speech_round_trip(tmp_path):
    from tonebot.skill import parse_skill

    skill = parse_skill(assets.read_asset(assets.SKILL_FILE))
    stt, tts = SidecarSpeechToText(), SidecarTextToSpeech(tmp_path)
    for node, _ in skill.walk_nodes():
        for response in node.responses:
            assert stt.transcribe(tts.synthesize(response, "en")).transcript == response


@criterion("property: pipeline replay determinism (byte-identical turn results)")
def test_property_pipeline_replay_determinism():
    import json

    script = ["hello", "I am stressed", "yeah", "Bad", "estoy triste", "goodbye"]

    def run():
        engine = load_engine()
        sid, greeting = engine.create_session()
        results = [greeting.to_dict()]
        results += [engine.process_turn(sid, text=t).to_dict() for t in script]
        return json.dumps(results, ensure_ascii=False, sort_keys=True)

    assert run() == run()


# -- criterion: multilingual turn ---------------------------------------------------


@criterion("multilingual turn (es input routes like English, replies in es)")
def test_multilingual_turn_spanish():
    engine = load_engine()
    sid_en, _ = engine.create_session()
    english = engine.process_turn(sid_en, text="I am stressed", language="en")

    sid_es, _ = engine.create_session()
    spanish = engine.process_turn(sid_es, text="estoy estresado")
    assert spanish.diagnostics["detected_language"]["code"] == "es"
    assert spanish.diagnostics["fired_node"] == english.diagnostics["fired_node"]
    assert spanish.reply_language == "es"
    assert spanish.reply == translate(english.reply, "en", "es", engine.table).text


# -- criterion: broken-skill validation corpus ---------------------------------------


@criterion("skill validation corpus (>=6 broken skills, specific violations, exit != 0)")
def test_broken_skill_corpus_via_cli():
    cases = [
        ("duplicate_intent.json", "duplicate_intent_name"),
        ("missing_fallback.json", "missing_fallback"),
        ("undeclared_entity.json", "undeclared_entity"),
        ("unreachable_node.json", "unreachable_node"),
        ("bad_condition.json", "condition parse error"),
        ("empty_examples.json", "empty_intent_examples"),
        ("misplaced_fallback.json", "misplaced_fallback"),
        ("missing_welcome.json", "missing_welcome"),
    ]
    assert len(cases) >= 6
    for fixture, needle in cases:
        proc = subprocess.run(
            [sys.executable, "-m", "tonebot", "validate", "--skill", str(BROKEN_DIR / fixture)],
            capture_output=True,
            text=True,
            timeout=120,
        )
        assert proc.returncode != 0, fixture
        assert needle in proc.stdout + proc.stderr, fixture


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
