"""HTTP facade over the chat engine.

Endpoints:

    POST /api/sessions                   {language?} -> 201 {session_id, greeting}
    POST /api/sessions/{id}/messages     {text?, audio_ref?, language?} -> TurnResult
    GET  /api/sessions/{id}              full transcript
    GET  /api/skill                      skill summary for clients
    GET  /healthz                        liveness + asset versions

Errors come back as ``{"code": ..., "message": ...}`` with a matching HTTP
status. Diagnostics are included in turn results by default; pass
``?diagnostics=false`` to suppress them. Handlers are synchronous on
purpose: the engine serializes turns per session behind a lock, and the
threadpool the framework runs sync handlers in lets distinct sessions
proceed in parallel.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .pipeline import ChatEngine, PipelineError, UnknownSessionError
from .speech import AudioRef


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def create_app(engine: ChatEngine, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="tonebot chat service")

    if engine.config.cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(engine.config.cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ApiError)
    def api_error_handler(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    def body_field(body, key, kind, default=None):
        value = body.get(key, default)
        if value is not None and not isinstance(value, kind):
            raise ApiError(400, "bad_request", f"field {key!r} must be {kind.__name__}")
        return value

    @app.post("/api/sessions", status_code=201)
    def create_session(body: dict | None = None, diagnostics: bool = True):
        body = body or {}
        language = body_field(body, "language", str)
        try:
            session_id, greeting = engine.create_session(language=language)
        except PipelineError as exc:
            raise ApiError(400, "bad_request", str(exc))
        return {"session_id": session_id, "greeting": greeting.to_dict(diagnostics)}

    @app.post("/api/sessions/{session_id}/messages")
    def post_message(session_id: str, body: dict | None = None, diagnostics: bool = True):
        body = body or {}
        text = body_field(body, "text", str)
        language = body_field(body, "language", str)
        audio_obj = body_field(body, "audio_ref", dict)
        audio = None
        if audio_obj:
            try:
                audio = AudioRef(
                    locator=audio_obj.get("locator", ""),
                    format=audio_obj.get("format", "wav"),
                    language=audio_obj.get("language"),
                )
            except ValueError as exc:
                raise ApiError(400, "bad_request", str(exc))
        try:
            result = engine.process_turn(session_id, text=text, audio=audio, language=language)
        except UnknownSessionError:
            raise ApiError(404, "session_not_found", f"no session {session_id!r}")
        except PipelineError as exc:
            raise ApiError(400, "bad_request", str(exc))
        except Exception as exc:  # speech errors with no text fallback, etc.
            raise ApiError(422, "turn_failed", str(exc))
        return result.to_dict(diagnostics)

    @app.get("/api/sessions/{session_id}")
    def get_transcript(session_id: str):
        try:
            return engine.transcript(session_id)
        except UnknownSessionError:
            raise ApiError(404, "session_not_found", f"no session {session_id!r}")

    @app.get("/api/skill")
    def skill_summary():
        skill = engine.skill
        return {
            "name": skill.name,
            "intents": [i.name for i in skill.intents],
            "entities": [
                {"name": e.name, "values": [v.label for v in e.values]} for e in skill.entities
            ],
            "nodes": [
                {"id": node.id, "title": node.title} for node, _ in skill.walk_nodes()
            ],
            "languages": list(engine.config.languages),
            "default_language": engine.config.default_language,
        }

    @app.get("/healthz")
    def healthz():
        return {
            "status": "ok",
            "skill_name": engine.skill.name,
            "lexicon_version": engine.lexicon.version,
        }

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
