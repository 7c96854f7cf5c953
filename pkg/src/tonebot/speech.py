"""Speech-to-text and text-to-speech adapter contracts.

The shipped adapters are deterministic file mocks: an audio locator resolves
through a sidecar text file at ``<locator>.txt`` that holds the transcript,
and synthesis writes the same convention, so ``transcribe(synthesize(t))``
returns ``t`` exactly. Real engines plug in through the same two-method
adapters (see :class:`tonebot.providers.HttpSpeechProvider` for the HTTP
contract); the pipeline treats speech as best-effort and never fails a turn
that still has a usable text path.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

AUDIO_FORMATS = {"wav", "mp3", "ogg", "flac", "pcm"}


class SpeechError(RuntimeError):
    pass


@dataclass(frozen=True)
class AudioRef:
    locator: str
    format: str = "wav"
    language: str | None = None

    def __post_init__(self):
        if not self.locator:
            raise ValueError("audio locator must be non-empty")
        if self.format not in AUDIO_FORMATS:
            raise ValueError(f"unregistered audio format {self.format!r}")

    def to_dict(self) -> dict:
        return {"locator": self.locator, "format": self.format, "language": self.language}


@dataclass(frozen=True)
class SpeechResult:
    transcript: str
    confidence: float
    provider: str


class SpeechToText(Protocol):
    def transcribe(self, audio: AudioRef) -> SpeechResult: ...


class TextToSpeech(Protocol):
    def synthesize(self, text: str, language: str) -> AudioRef: ...


class SidecarSpeechToText:
    """Mock STT: the transcript lives in ``<locator>.txt`` next to the audio."""

    def transcribe(self, audio: AudioRef) -> SpeechResult:
        sidecar = Path(audio.locator + ".txt")
        if not sidecar.is_file():
            raise SpeechError(f"unresolvable audio reference: {audio.locator}")
        text = sidecar.read_text(encoding="utf-8")
        if text.endswith("\n"):
            text = text[:-1]
        return SpeechResult(transcript=text, confidence=1.0, provider="mock")


class SidecarTextToSpeech:
    """Mock TTS: writes the text verbatim to the sidecar of a new locator."""

    def __init__(self, output_dir: str | Path, audio_format: str = "wav"):
        self.output_dir = Path(output_dir)
        self.audio_format = audio_format

    def synthesize(self, text: str, language: str) -> AudioRef:
        if not text:
            raise SpeechError("empty text")
        self.output_dir.mkdir(parents=True, exist_ok=True)
        digest = hashlib.sha1(f"{language}:{text}".encode("utf-8")).hexdigest()[:12]
        locator = str(self.output_dir / f"tts-{digest}.{self.audio_format}")
        Path(locator + ".txt").write_text(text, encoding="utf-8")
        return AudioRef(locator=locator, format=self.audio_format, language=language)


def transcribe(audio: AudioRef, adapter: SpeechToText) -> SpeechResult:
    """Run an adapter and enforce its result contract."""
    result = adapter.transcribe(audio)
    if not 0.0 <= result.confidence <= 1.0:
        raise SpeechError(f"adapter returned confidence out of range: {result.confidence}")
    return result


def synthesize(text: str, language: str, adapter: TextToSpeech) -> AudioRef:
    if not text:
        raise SpeechError("empty text")
    return adapter.synthesize(text, language)
