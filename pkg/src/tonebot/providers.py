"""HTTP adapter contracts for external translation and speech services.

The engine runs fully self-contained; these clients exist so a deployment
can swap in a real vendor without touching the pipeline. The wire contract
is small JSON over POST with bearer-token auth:

    POST {base}/translate   {"text": ..., "from": ..., "to": ...} -> {"text": ...}
    POST {base}/detect      {"text": ...} -> {"language": ..., "confidence": ...}
    POST {base}/transcribe  binary body, X-Audio-Format header -> {"transcript": ..., "confidence": ...}
    POST {base}/synthesize  {"text": ..., "language": ...} -> audio body

``create_mock_provider_app`` builds a deterministic in-process server for
the same contract, backed by the shipped phrase table and profiles; it is
what the tests (and demos without a vendor) run against.
"""

from __future__ import annotations

import httpx
from fastapi import FastAPI, Request, Response

from .language import LanguageProfile, PhraseTable, detect_language, translate

DEFAULT_TIMEOUT = 5.0


class HttpTranslationProvider:
    """TranslationProvider speaking the /translate + /detect contract."""

    def __init__(
        self,
        base_url: str,
        token: str | None = None,
        timeout: float = DEFAULT_TIMEOUT,
        client: httpx.Client | None = None,
    ):
        headers = {"Authorization": f"Bearer {token}"} if token else {}
        self._client = client or httpx.Client(base_url=base_url, timeout=timeout, headers=headers)
        if client is not None and token:
            client.headers.update(headers)

    def translate(self, text: str, source: str, target: str) -> str:
        response = self._client.post(
            "/translate", json={"text": text, "from": source, "to": target}
        )
        response.raise_for_status()
        return response.json()["text"]

    def detect(self, text: str) -> tuple[str, float]:
        response = self._client.post("/detect", json={"text": text})
        response.raise_for_status()
        data = response.json()
        return data["language"], float(data["confidence"])


class HttpSpeechProvider:
    """Client half of the /transcribe + /synthesize contract."""

    def __init__(
        self,
        base_url: str,
        token: str | None = None,
        timeout: float = DEFAULT_TIMEOUT,
        client: httpx.Client | None = None,
    ):
        headers = {"Authorization": f"Bearer {token}"} if token else {}
        self._client = client or httpx.Client(base_url=base_url, timeout=timeout, headers=headers)
        if client is not None and token:
            client.headers.update(headers)

    def transcribe(self, audio: bytes, audio_format: str) -> tuple[str, float]:
        response = self._client.post(
            "/transcribe", content=audio, headers={"X-Audio-Format": audio_format}
        )
        response.raise_for_status()
        data = response.json()
        return data["transcript"], float(data.get("confidence", 1.0))

    def synthesize(self, text: str, language: str) -> bytes:
        response = self._client.post("/synthesize", json={"text": text, "language": language})
        response.raise_for_status()
        return response.content


def create_mock_provider_app(table: PhraseTable, profiles: dict[str, LanguageProfile]) -> FastAPI:
    """Deterministic provider server implementing the adapter contract."""
    app = FastAPI(title="mock language provider")

    @app.post("/translate")
    def do_translate(body: dict):
        result = translate(body["text"], body["from"], body["to"], table)
        return {"text": result.text, "fully_translated": result.fully_translated}

    @app.post("/detect")
    def do_detect(body: dict):
        code, confidence = detect_language(body["text"], profiles)
        return {"language": code, "confidence": confidence}

    @app.post("/transcribe")
    async def do_transcribe(request: Request):
        # Mock convention: the "audio" body is the utterance text itself.
        body = await request.body()
        return {"transcript": body.decode("utf-8"), "confidence": 1.0}

    @app.post("/synthesize")
    def do_synthesize(body: dict):
        return Response(content=body["text"].encode("utf-8"), media_type="application/octet-stream")

    return app
