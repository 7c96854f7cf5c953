"""The full conversational turn, in order.

For every user message: (optional) transcribe -> detect language ->
translate to English -> tone analysis -> intent/entity recognition ->
dialog step -> translate the reply back -> (optional) synthesize speech.
The dominant tone rides along as the ``tone_primary`` context variable so
dialog nodes can route on it, and every stage's output is recorded in the
turn diagnostics in stage order.

Sessions live in memory; an optional append-only transcript log (one JSON
object per line) makes a session replayable after a restart. Turns within a
session are serialized behind a per-session lock; distinct sessions run
concurrently.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from . import assets
from .dialog import SessionContext, TurnEvidence, step_dialog
from .language import (
    UNDETERMINED,
    LanguageProfile,
    PhraseTable,
    TranslationProvider,
    detect_language,
    load_phrase_table,
    load_profile,
    translate,
)
from .nlu import DEFAULT_MIN_CONFIDENCE, classify_intents, recognize_entities
from .skill import Skill, parse_skill, validate_skill
from .speech import AudioRef, SpeechError, SpeechToText, TextToSpeech, transcribe
from .tone import Lexicon, analyze_tone, load_lexicon

ENV_PREFIX = "CHATBOT_"

REPROMPT_TEXT = "I did not catch that. Could you say it again?"


class PipelineError(ValueError):
    pass


class UnknownSessionError(KeyError):
    pass


@dataclass
class PipelineConfig:
    tone_threshold: float = 0.5
    min_confidence: float = DEFAULT_MIN_CONFIDENCE
    languages: tuple[str, ...] = ("en", "es", "fr", "de")
    default_language: str = "en"
    skill_path: str | None = None
    lexicon_path: str | None = None
    translation_url: str | None = None
    translation_token: str | None = None
    transcript_log: str | None = None
    cors_origins: tuple[str, ...] = ()

    def __post_init__(self):
        if not 0.0 < self.tone_threshold < 1.0:
            raise PipelineError(f"tone threshold must be in (0, 1): {self.tone_threshold}")
        if not 0.0 <= self.min_confidence <= 1.0:
            raise PipelineError(f"min confidence must be in [0, 1]: {self.min_confidence}")
        if self.default_language not in self.languages:
            raise PipelineError(f"default language {self.default_language!r} not in supported set")

    @classmethod
    def load(cls, path: str | Path | None = None, env: dict | None = None) -> "PipelineConfig":
        """Defaults, overridden by a JSON config file, overridden by env vars."""
        values: dict = {}
        if path is not None:
            try:
                values.update(json.loads(Path(path).read_text(encoding="utf-8")))
            except (OSError, json.JSONDecodeError) as exc:
                raise PipelineError(f"cannot read config {path}: {exc}") from exc
        env = os.environ if env is None else env
        for key, cast in [
            ("tone_threshold", float),
            ("min_confidence", float),
            ("default_language", str),
            ("skill_path", str),
            ("lexicon_path", str),
            ("translation_url", str),
            ("translation_token", str),
            ("transcript_log", str),
        ]:
            raw = env.get(ENV_PREFIX + key.upper())
            if raw is not None:
                values[key] = cast(raw)
        raw = env.get(ENV_PREFIX + "LANGUAGES")
        if raw is not None:
            values["languages"] = [c.strip() for c in raw.split(",") if c.strip()]
        for tuple_key in ("languages", "cors_origins"):
            if tuple_key in values:
                values[tuple_key] = tuple(values[tuple_key])
        return cls(**values)


@dataclass
class TurnResult:
    reply: str
    reply_language: str
    audio: AudioRef | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self, include_diagnostics: bool = True) -> dict:
        data = {
            "reply": self.reply,
            "reply_language": self.reply_language,
            "audio_ref": self.audio.to_dict() if self.audio else None,
        }
        if include_diagnostics:
            data["diagnostics"] = self.diagnostics
        return data


@dataclass
class Session:
    id: str
    language: str
    context: SessionContext = field(default_factory=SessionContext)
    turns: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class ChatEngine:
    """Owns the assets and the session store; one instance serves many sessions."""

    def __init__(
        self,
        skill: Skill,
        lexicon: Lexicon,
        profiles: dict[str, LanguageProfile],
        table: PhraseTable,
        config: PipelineConfig | None = None,
        stt: SpeechToText | None = None,
        tts: TextToSpeech | None = None,
        translation_provider: TranslationProvider | None = None,
    ):
        report = validate_skill(skill)
        if not report.ok:
            raise PipelineError(f"skill failed validation: {report}")
        self.skill = skill
        self.lexicon = lexicon
        self.profiles = profiles
        self.table = table
        self.config = config or PipelineConfig()
        self.stt = stt
        self.tts = tts
        self.translation_provider = translation_provider
        self._sessions: dict[str, Session] = {}
        self._store_lock = threading.Lock()

    # -- session management -------------------------------------------------

    def create_session(
        self, language: str | None = None, session_id: str | None = None
    ) -> tuple[str, TurnResult]:
        """New session plus the greeting produced by the welcome node."""
        language = language or self.config.default_language
        if language not in self.config.languages:
            raise PipelineError(f"unsupported language {language!r}")
        session = Session(id=session_id or uuid.uuid4().hex, language=language)
        with self._store_lock:
            if session.id in self._sessions:
                raise PipelineError(f"session id {session.id!r} already exists")
            self._sessions[session.id] = session

        evidence = TurnEvidence(is_first_turn=True, context=dict(session.context.variables))
        outcome = step_dialog(self.skill, session.context, evidence)
        reply, reply_translation = self._render_reply(outcome.response, language)
        greeting = TurnResult(
            reply=reply,
            reply_language=language,
            diagnostics={
                "stages": ["dialog", "translate_reply"],
                "fired_node": outcome.node_id,
                "node_path": outcome.node_path,
                "english_reply": outcome.response,
                "translation": {"reply": reply_translation},
            },
        )
        session.turns.append({"input": None, "result": greeting.to_dict()})
        self._log_turn(session.id, None, greeting)
        return session.id, greeting

    def get_session(self, session_id: str) -> Session:
        with self._store_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(session_id)
        return session

    def transcript(self, session_id: str) -> dict:
        session = self.get_session(session_id)
        with session.lock:
            return {
                "session_id": session.id,
                "language": session.language,
                "turns": [dict(t) for t in session.turns],
            }

    def session_ids(self) -> list[str]:
        with self._store_lock:
            return list(self._sessions)

    # -- the turn itself ----------------------------------------------------

    def process_turn(
        self,
        session_id: str,
        text: str | None = None,
        audio: AudioRef | None = None,
        language: str | None = None,
    ) -> TurnResult:
        session = self.get_session(session_id)
        turn_input = {
            "text": text,
            "audio_ref": audio.to_dict() if audio else None,
            "language": language,
        }
        with session.lock:
            result = self._run_turn(session, text, audio, language)
            session.turns.append({"input": turn_input, "result": result.to_dict()})
            # Logged under the session lock so replay preserves turn order.
            self._log_turn(session_id, turn_input, result)
        return result

    def _run_turn(
        self,
        session: Session,
        text: str | None,
        audio: AudioRef | None,
        declared: str | None,
    ) -> TurnResult:
        stages: list[str] = []
        warnings: list[str] = []
        diagnostics: dict = {"stages": stages, "warnings": warnings}

        if audio is not None:
            stages.append("transcribe")
            if self.stt is None:
                raise PipelineError("no speech-to-text adapter configured")
            try:
                speech = transcribe(audio, self.stt)
                text = speech.transcript
                diagnostics["speech_input"] = {
                    "confidence": speech.confidence,
                    "provider": speech.provider,
                }
            except SpeechError as exc:
                if text is None:
                    raise
                warnings.append(f"transcription failed, using text input: {exc}")

        if declared is not None and declared not in self.config.languages:
            raise PipelineError(f"unsupported language {declared!r}")

        if text is None or not text.strip():
            return self._reprompt(session, declared, diagnostics)

        stages.append("detect_language")
        detected, confidence = detect_language(text, self.profiles)
        diagnostics["detected_language"] = {"code": detected, "confidence": round(confidence, 6)}
        diagnostics["declared_language"] = declared

        if declared is not None:
            turn_language = declared
        elif detected != UNDETERMINED and detected in self.config.languages:
            turn_language = detected
        else:
            turn_language = session.language
        diagnostics["language"] = turn_language

        stages.append("translate_input")
        if turn_language == "en" or detected == UNDETERMINED:
            english = text
            diagnostics["translation"] = {"input": {"fully_translated": True, "segments": []}}
            if detected == UNDETERMINED:
                warnings.append("language undetermined; treating input as English")
        else:
            translated = translate(
                text, turn_language, "en", self.table, self.translation_provider
            )
            english = translated.text
            diagnostics["translation"] = {"input": translated.to_dict()}
            if not translated.fully_translated:
                warnings.append("input only partially translated to English")
        diagnostics["english_input"] = english

        stages.append("tone")
        analysis = analyze_tone(english, self.lexicon, self.config.tone_threshold)
        diagnostics["tone"] = analysis.to_dict()
        tone_primary = analysis.outcome.as_context_value()
        diagnostics["tone_primary"] = tone_primary

        stages.append("nlu")
        intents = classify_intents(english, self.skill, self.config.min_confidence)
        entities = recognize_entities(english, self.skill)
        diagnostics["intents"] = [
            {"intent": m.intent, "confidence": round(m.confidence, 6)} for m in intents
        ]
        diagnostics["entities"] = [
            {
                "entity": m.entity,
                "value": m.value,
                "surface": m.surface,
                "start": m.start,
                "length": m.length,
            }
            for m in entities
        ]

        stages.append("dialog")
        session.context.variables["tone_primary"] = tone_primary
        evidence = TurnEvidence(
            intents=intents,
            entities=entities,
            context=dict(session.context.variables),
            is_first_turn=False,
        )
        outcome = step_dialog(self.skill, session.context, evidence)
        diagnostics["fired_node"] = outcome.node_id
        diagnostics["node_path"] = outcome.node_path
        diagnostics["english_reply"] = outcome.response

        stages.append("translate_reply")
        reply, reply_translation = self._render_reply(outcome.response, turn_language)
        diagnostics["translation"]["reply"] = reply_translation

        audio_ref = self._maybe_speak(reply, turn_language, stages, warnings)
        return TurnResult(
            reply=reply, reply_language=turn_language, audio=audio_ref, diagnostics=diagnostics
        )

    def _reprompt(self, session: Session, declared: str | None, diagnostics: dict) -> TurnResult:
        language = declared or session.language
        diagnostics["stages"].append("reprompt")
        reply, reply_translation = self._render_reply(REPROMPT_TEXT, language)
        diagnostics["translation"] = {"reply": reply_translation}
        diagnostics["english_reply"] = REPROMPT_TEXT
        audio_ref = self._maybe_speak(reply, language, diagnostics["stages"], diagnostics["warnings"])
        return TurnResult(
            reply=reply, reply_language=language, audio=audio_ref, diagnostics=diagnostics
        )

    def _render_reply(self, english: str, language: str) -> tuple[str, dict]:
        result = translate(english, "en", language, self.table, self.translation_provider)
        return result.text, result.to_dict()

    def _maybe_speak(self, reply, language, stages, warnings) -> AudioRef | None:
        if self.tts is None or not reply:
            return None
        stages.append("synthesize")
        try:
            return self.tts.synthesize(reply, language)
        except SpeechError as exc:  # speech is best-effort; text still goes out
            warnings.append(f"speech synthesis failed: {exc}")
            return None

    # -- transcript persistence & replay -------------------------------------

    def _log_turn(self, session_id: str, turn_input, result: TurnResult) -> None:
        if not self.config.transcript_log:
            return
        record = {
            "ts": time.time(),
            "session": session_id,
            "input": turn_input,
            "result": result.to_dict(),
        }
        path = Path(self.config.transcript_log)
        path.parent.mkdir(parents=True, exist_ok=True)
        with self._store_lock:
            with path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")

    def replay_log(self, path: str | Path) -> list[str]:
        """Rebuild sessions from a transcript log; returns the session ids."""
        restored: list[str] = []
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise PipelineError(f"transcript log line {lineno} is not valid JSON: {exc}")
            session_id = record["session"]
            turn_input = record["input"]
            if turn_input is None:
                self.create_session(
                    language=record["result"]["reply_language"], session_id=session_id
                )
                restored.append(session_id)
            else:
                audio = turn_input.get("audio_ref")
                self.process_turn(
                    session_id,
                    text=turn_input.get("text"),
                    audio=AudioRef(**audio) if audio else None,
                    language=turn_input.get("language"),
                )
        return restored


def load_engine(
    skill_path: str | Path | None = None,
    lexicon_path: str | Path | None = None,
    config: PipelineConfig | None = None,
    phrases_path: str | Path | None = None,
    stt: SpeechToText | None = None,
    tts: TextToSpeech | None = None,
    translation_provider: TranslationProvider | None = None,
) -> ChatEngine:
    """Build an engine from asset files, defaulting to the shipped ones."""
    config = config or PipelineConfig()
    skill_path = skill_path or config.skill_path or assets.asset_path(assets.SKILL_FILE)
    lexicon_path = lexicon_path or config.lexicon_path or assets.asset_path(assets.LEXICON_FILE)
    phrases_path = phrases_path or assets.asset_path(assets.PHRASES_FILE)

    skill = parse_skill(Path(skill_path).read_text(encoding="utf-8"))
    lexicon = load_lexicon(Path(lexicon_path).read_text(encoding="utf-8"))
    table = load_phrase_table(Path(phrases_path).read_text(encoding="utf-8"))
    profiles = {}
    for code in config.languages:
        profile_file = assets.profile_path(code)
        if profile_file.is_file():
            profiles[code] = load_profile(profile_file.read_text(encoding="utf-8"))
    if translation_provider is None and config.translation_url:
        from .providers import HttpTranslationProvider

        translation_provider = HttpTranslationProvider(
            config.translation_url, config.translation_token
        )
    return ChatEngine(
        skill,
        lexicon,
        profiles,
        table,
        config,
        stt=stt,
        tts=tts,
        translation_provider=translation_provider,
    )


__all__ = [
    "ChatEngine",
    "PipelineConfig",
    "PipelineError",
    "TurnResult",
    "UnknownSessionError",
    "load_engine",
    "REPROMPT_TEXT",
]
