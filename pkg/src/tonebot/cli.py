"""Command-line entry point.

    chatbot validate [--skill PATH]
    chatbot chat     [--skill PATH] [--lexicon PATH] [--lang CODE] [--verbose] [--speak DIR]
    chatbot eval     [--skill PATH] [--lexicon PATH] [--corpus PATH]
                     [--report PATH] [--tone-threshold X]
    chatbot serve    [--skill PATH] [--lexicon PATH] [--host H] [--port P]
                     [--config PATH] [--static-dir DIR]

All asset arguments default to the files shipped with the package. Exit
codes: 0 success, 1 validation failure, 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import assets
from .evaluation import CorpusError, load_corpus, run_eval
from .pipeline import PipelineConfig, PipelineError, load_engine
from .skill import SkillError, load_skill, validate_skill
from .speech import SidecarTextToSpeech
from .tone import LexiconError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


def _read(path: str | Path, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"cannot read {what} {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def cmd_validate(args) -> int:
    document = _read(args.skill, "skill file")
    try:
        skill = load_skill(document)
    except SkillError as exc:
        for diagnostic in exc.diagnostics:
            print(diagnostic, file=sys.stderr)
        return EXIT_IO
    report = validate_skill(skill)
    print(report)
    return EXIT_OK if report.ok else EXIT_INVALID


def _build_engine(args, tts=None):
    config = PipelineConfig.load(getattr(args, "config", None))
    if getattr(args, "tone_threshold", None) is not None:
        config.tone_threshold = args.tone_threshold
    try:
        return load_engine(
            skill_path=args.skill, lexicon_path=args.lexicon, config=config, tts=tts
        )
    except (SkillError, LexiconError, PipelineError, OSError) as exc:
        print(f"cannot load assets: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID if isinstance(exc, (SkillError, PipelineError)) else EXIT_IO)


def cmd_chat(args) -> int:
    tts = SidecarTextToSpeech(args.speak) if args.speak else None
    engine = _build_engine(args, tts=tts)
    language = args.lang
    session_id, greeting = engine.create_session(language=language)
    print(greeting.reply)
    while True:
        try:
            line = input("> ")
        except EOFError:
            print()
            return EXIT_OK
        line = line.strip()
        if line == "/quit":
            return EXIT_OK
        result = engine.process_turn(session_id, text=line or None, language=language)
        print(result.reply)
        if args.verbose:
            diag = result.diagnostics
            top_intent = diag.get("intents") or [{"intent": "-"}]
            print(
                f"  [tone={diag.get('tone_primary', '-')}"
                f" intent={top_intent[0]['intent']}"
                f" node={diag.get('fired_node', '-')}"
                f" lang={result.reply_language}]"
            )
        if result.audio:
            print(f"  [audio: {result.audio.locator}]")


def cmd_eval(args) -> int:
    engine = _build_engine(args)
    try:
        trials = load_corpus(_read(args.corpus, "corpus"))
    except CorpusError as exc:
        print(f"bad corpus: {exc}", file=sys.stderr)
        return EXIT_IO
    report = run_eval(trials, engine)
    print(report.to_text(), end="")
    if args.report:
        Path(args.report).write_text(report.to_json(), encoding="utf-8")
        print(f"JSON report written to {args.report}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    engine = _build_engine(args)
    static_dir = args.static_dir
    if static_dir is None:
        candidate = Path("frontend/dist")
        static_dir = candidate if candidate.is_dir() else None
    app = create_app(engine, static_dir=static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chatbot", description="Tone-aware exam-stress support chatbot"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    default_skill = str(assets.asset_path(assets.SKILL_FILE))
    default_lexicon = str(assets.asset_path(assets.LEXICON_FILE))
    default_corpus = str(assets.asset_path(assets.CORPUS_FILE))

    p = sub.add_parser("validate", help="check a skill file and print the validation report")
    p.add_argument("--skill", default=default_skill)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("chat", help="interactive terminal chat (/quit to exit)")
    p.add_argument("--skill", default=default_skill)
    p.add_argument("--lexicon", default=default_lexicon)
    p.add_argument("--lang", default=None, help="reply language (default: auto-detect)")
    p.add_argument("--verbose", action="store_true", help="print per-turn diagnostics")
    p.add_argument("--speak", default=None, metavar="DIR", help="write mock speech output here")
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_chat)

    p = sub.add_parser("eval", help="run the routing-accuracy evaluation")
    p.add_argument("--skill", default=default_skill)
    p.add_argument("--lexicon", default=default_lexicon)
    p.add_argument("--corpus", default=default_corpus)
    p.add_argument("--report", default=None, help="also write the JSON report here")
    p.add_argument("--tone-threshold", type=float, default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="run the HTTP chat service")
    p.add_argument("--skill", default=default_skill)
    p.add_argument("--lexicon", default=default_lexicon)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--config", default=None)
    p.add_argument("--static-dir", default=None, help="serve a web UI from this directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PipelineError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except KeyboardInterrupt:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
