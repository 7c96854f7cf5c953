"""Condition evaluation and dialog stepping.

Each turn is matched first against the children of the node that fired most
recently (when it has children), then against the top-level nodes, in
document order; the first condition that holds fires. Because a servable
skill always ends with an `anything_else` node, a turn always produces an
outcome. The fired node's context updates become visible to conditions on
the *next* turn, never the firing one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .conditions import (
    And,
    AnythingElse,
    BoolLit,
    Condition,
    ContextCompare,
    EntityRef,
    IntentRef,
    Not,
    Or,
    Welcome,
)
from .nlu import EntityMatch, IntentMatch
from .skill import DialogNode, Skill


@dataclass
class TurnEvidence:
    intents: list[IntentMatch] = field(default_factory=list)
    entities: list[EntityMatch] = field(default_factory=list)
    context: dict[str, str] = field(default_factory=dict)
    is_first_turn: bool = False


@dataclass
class SessionContext:
    variables: dict[str, str] = field(default_factory=dict)
    position: str | None = None
    variation_counters: dict[str, int] = field(default_factory=dict)
    transcript: list[dict] = field(default_factory=list)


@dataclass
class DialogOutcome:
    node_id: str
    node_path: list[str]
    response: str
    session: SessionContext


def evaluate_condition(node: Condition, evidence: TurnEvidence) -> bool:
    if isinstance(node, IntentRef):
        return bool(evidence.intents) and evidence.intents[0].intent == node.name
    if isinstance(node, EntityRef):
        return any(
            m.entity == node.name and (node.value is None or m.value == node.value)
            for m in evidence.entities
        )
    if isinstance(node, ContextCompare):
        actual = evidence.context.get(node.variable, "")
        return (actual == node.value) if node.op == "==" else (actual != node.value)
    if isinstance(node, Welcome):
        return evidence.is_first_turn
    if isinstance(node, AnythingElse):
        return True
    if isinstance(node, BoolLit):
        return node.value
    if isinstance(node, And):
        return evaluate_condition(node.left, evidence) and evaluate_condition(node.right, evidence)
    if isinstance(node, Or):
        return evaluate_condition(node.left, evidence) or evaluate_condition(node.right, evidence)
    if isinstance(node, Not):
        return not evaluate_condition(node.operand, evidence)
    raise TypeError(f"not a condition node: {node!r}")


def _first_match(nodes, evidence: TurnEvidence) -> DialogNode | None:
    for node in nodes:
        if evaluate_condition(node.condition, evidence):
            return node
    return None


def _interpolate(text: str, variables: dict[str, str]) -> str:
    # `$name` substitutes the variable's value, empty string when unset.
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "$" and i + 1 < len(text) and (text[i + 1].isalpha() or text[i + 1] == "_"):
            j = i + 1
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(variables.get(text[i + 1 : j], ""))
            i = j
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def step_dialog(skill: Skill, session: SessionContext, evidence: TurnEvidence) -> DialogOutcome:
    """Fire the first matching node, mutate the session, pick the response."""
    fired = None
    if session.position is not None:
        focused = skill.node(session.position)
        if focused is not None:
            fired = _first_match(focused.children, evidence)
    if fired is None:
        fired = _first_match(skill.dialog, evidence)
    if fired is None:
        raise RuntimeError("no node fired; skill has no anything_else fallback")

    for key, value in fired.context_updates:
        session.variables[key] = value

    if fired.responses:
        counter = session.variation_counters.get(fired.id, 0)
        session.variation_counters[fired.id] = counter + 1
        response = _interpolate(fired.responses[counter % len(fired.responses)], session.variables)
    else:
        response = ""

    session.position = fired.id if fired.children else None
    path = skill.node_path(fired.id)
    session.transcript.append({"node": fired.id, "path": path, "response": response})
    return DialogOutcome(node_id=fired.id, node_path=path, response=response, session=session)
