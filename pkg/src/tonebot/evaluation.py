"""Routing-accuracy evaluation over a corpus of survey utterances.

Every trial runs as the second turn of a fresh session (right after the
greeting), since that is the turn the tone-routed branches listen on. The
fired node maps to a route through the skill's ``routes`` metadata; a trial
is correct when that route equals the expected one. Trials whose tone comes
out none or ambiguous fire the clarification path and therefore score as
incorrect whenever an emotional route was expected.

Unweighted accuracy over trials is the headline number; accuracy weighted
by responder count is reported alongside.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .pipeline import ChatEngine

ROUTES = ("stressed", "good", "angry")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class EvalTrial:
    trial_id: str
    utterance: str
    expected_route: str
    weight: int


@dataclass
class TrialRow:
    trial_id: str
    utterance: str
    expected_route: str
    weight: int
    tone_outcome: str
    prediction: str
    fired_node: str
    route: str | None
    correct: bool
    reason: str

    def to_dict(self) -> dict:
        return {
            "trial_id": self.trial_id,
            "utterance": self.utterance,
            "expected_route": self.expected_route,
            "weight": self.weight,
            "tone_outcome": self.tone_outcome,
            "prediction": self.prediction,
            "fired_node": self.fired_node,
            "route": self.route,
            "correct": self.correct,
            "reason": self.reason,
        }


@dataclass
class EvalReport:
    rows: list[TrialRow]
    tone_threshold: float

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def correct_count(self) -> int:
        return sum(1 for r in self.rows if r.correct)

    @property
    def accuracy(self) -> float:
        return self.correct_count / self.total if self.rows else 0.0

    @property
    def weighted_accuracy(self) -> float:
        total = sum(r.weight for r in self.rows)
        correct = sum(r.weight for r in self.rows if r.correct)
        return correct / total if total else 0.0

    def to_dict(self) -> dict:
        return {
            "trials": [r.to_dict() for r in self.rows],
            "total": self.total,
            "correct": self.correct_count,
            "accuracy": self.accuracy,
            "weighted_accuracy": self.weighted_accuracy,
            "tone_threshold": self.tone_threshold,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        headers = ["trial", "utterance", "expected", "prediction", "route", "ok", "why"]
        rows = [
            [
                r.trial_id,
                r.utterance,
                r.expected_route,
                r.prediction,
                r.route or "-",
                "yes" if r.correct else "no",
                r.reason,
            ]
            for r in self.rows
        ]
        widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(headers)]
        lines = [
            "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
            "  ".join("-" * w for w in widths),
        ]
        lines += ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)) for row in rows]
        lines.append("")
        lines.append(
            f"routing accuracy: {self.correct_count}/{self.total} = {self.accuracy:.1%}"
            f"  (weighted by responders: {self.weighted_accuracy:.1%})"
        )
        return "\n".join(lines) + "\n"


def load_corpus(document: str) -> list[EvalTrial]:
    """Parse corpus CSV with header ``id,utterance,expected_route,weight``."""
    trials: list[EvalTrial] = []
    errors: list[str] = []
    reader = csv.reader(io.StringIO(document))
    header_done = False
    for lineno, row in enumerate(reader, start=1):
        if not row or row[0].lstrip().startswith("#"):
            continue
        if not header_done:
            header_done = True
            if [c.strip().lower() for c in row] == ["id", "utterance", "expected_route", "weight"]:
                continue
        if len(row) != 4:
            errors.append(f"line {lineno}: expected 4 fields, got {len(row)}")
            continue
        trial_id, utterance, expected, weight_text = (c.strip() for c in row)
        if expected not in ROUTES:
            errors.append(f"line {lineno}: expected_route must be one of {ROUTES}, got {expected!r}")
            continue
        try:
            weight = int(weight_text)
        except ValueError:
            errors.append(f"line {lineno}: weight {weight_text!r} is not an integer")
            continue
        if weight < 1:
            errors.append(f"line {lineno}: weight must be >= 1")
            continue
        trials.append(EvalTrial(trial_id, utterance, expected, weight))
    if errors:
        raise CorpusError("; ".join(errors))
    if not trials:
        raise CorpusError("empty corpus")
    return trials


def _prediction_label(tone: dict) -> str:
    names = tone["emotions"] + tone["language_tones"]
    return ", ".join(n.capitalize() for n in names) if names else "None"


def run_eval(trials: list[EvalTrial], engine: ChatEngine) -> EvalReport:
    """Run every trial as a fresh session's second turn and score routes."""
    routes = engine.skill.metadata_dict().get("routes", {})
    rows: list[TrialRow] = []
    for trial in trials:
        session_id, _ = engine.create_session(language="en")
        result = engine.process_turn(session_id, text=trial.utterance, language="en")
        diag = result.diagnostics
        tone = diag["tone"]
        fired = diag["fired_node"]
        route = routes.get(fired)
        correct = route == trial.expected_route
        if correct:
            reason = ""
        elif tone["outcome"] == "ambiguous":
            reason = "ambiguous tone (" + ", ".join(tone["emotions"]) + ")"
        elif tone["outcome"] == "none":
            reason = "no emotion detected"
        else:
            reason = f"routed to {route or fired}"
        rows.append(
            TrialRow(
                trial_id=trial.trial_id,
                utterance=trial.utterance,
                expected_route=trial.expected_route,
                weight=trial.weight,
                tone_outcome=tone["outcome"],
                prediction=_prediction_label(tone),
                fired_node=fired,
                route=route,
                correct=correct,
                reason=reason,
            )
        )
    return EvalReport(rows=rows, tone_threshold=engine.config.tone_threshold)
