"""The declarative skill format: intents, entities, and the dialog tree.

A skill document is a single JSON object::

    {
      "name": "...",
      "metadata": {...},                        # optional, free-form
      "intents":  [{"name": "...", "examples": ["...", ...]}, ...],
      "entities": [{"name": "...", "values":
                     [{"label": "...", "synonyms": ["...", ...]}, ...]}, ...],
      "dialog":   [{"id": "...", "title": "...", "condition": "...",
                    "responses": ["...", ...],
                    "children": [...],          # optional
                    "context_updates": {...}},  # optional
                   ...]
    }

``condition`` strings use the grammar in :mod:`tonebot.conditions`. Intent
names are written without the ``#`` display prefix and entity names without
``@``. A servable skill has exactly one top-level node whose condition is
``welcome`` and exactly one whose condition is ``anything_else``, placed
last, which guarantees every turn produces a response.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .conditions import (
    AnythingElse,
    BoolLit,
    Condition,
    ConditionError,
    Welcome,
    condition_to_source,
    parse_condition,
    referenced_entities,
    referenced_intents,
)
from .text import tokenize


class SkillError(ValueError):
    """Raised when a skill document cannot be loaded or fails validation."""

    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = list(diagnostics)


@dataclass(frozen=True)
class Intent:
    name: str
    examples: tuple[str, ...]


@dataclass(frozen=True)
class EntityValue:
    label: str
    synonyms: tuple[str, ...] = ()

    @property
    def surface_forms(self) -> tuple[str, ...]:
        """The label counts as a surface form of itself."""
        return (self.label,) + self.synonyms


@dataclass(frozen=True)
class Entity:
    name: str
    values: tuple[EntityValue, ...]


@dataclass(frozen=True)
class DialogNode:
    id: str
    title: str
    condition: Condition
    responses: tuple[str, ...] = ()
    children: tuple[DialogNode, ...] = ()
    context_updates: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class Skill:
    name: str
    intents: tuple[Intent, ...]
    entities: tuple[Entity, ...]
    dialog: tuple[DialogNode, ...]
    metadata: tuple[tuple[str, str], ...] = ()

    def intent(self, name: str) -> Intent | None:
        return next((i for i in self.intents if i.name == name), None)

    def entity(self, name: str) -> Entity | None:
        return next((e for e in self.entities if e.name == name), None)

    def node(self, node_id: str) -> DialogNode | None:
        return next((n for n, _ in self.walk_nodes() if n.id == node_id), None)

    def node_path(self, node_id: str) -> list[str]:
        """Ids from the top-level ancestor down to the node."""
        for node, path in self.walk_nodes():
            if node.id == node_id:
                return path + [node.id]
        raise KeyError(node_id)

    def walk_nodes(self):
        """Yield (node, ancestor id path) in document order, depth first."""

        def visit(nodes, path):
            for node in nodes:
                yield node, path
                yield from visit(node.children, path + [node.id])

        yield from visit(self.dialog, [])

    def metadata_dict(self) -> dict:
        return {k: json.loads(v) for k, v in self.metadata}


@dataclass
class Violation:
    code: str
    message: str
    where: str

    def __str__(self) -> str:
        return f"{self.code} at {self.where}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str, where: str) -> None:
        self.violations.append(Violation(code, message, where))

    def __str__(self) -> str:
        if self.ok:
            return "skill is valid"
        return "\n".join(str(v) for v in self.violations)


def _require(obj, key, kind, errors, where, default=None, optional=False):
    if key not in obj:
        if optional:
            return default
        errors.append(f"{where}: missing required key {key!r}")
        return default
    value = obj[key]
    if not isinstance(value, kind):
        errors.append(f"{where}: key {key!r} must be {kind.__name__}")
        return default
    return value


def _parse_node(obj, errors, where) -> DialogNode | None:
    if not isinstance(obj, dict):
        errors.append(f"{where}: node must be an object")
        return None
    node_id = _require(obj, "id", str, errors, where)
    where = f"node {node_id!r}" if node_id else where
    title = _require(obj, "title", str, errors, where, default="")
    cond_src = _require(obj, "condition", str, errors, where)
    condition: Condition = BoolLit(False)
    if cond_src is not None:
        try:
            condition = parse_condition(cond_src)
        except ConditionError as exc:
            errors.append(f"{where}: condition parse error: {exc}")
    responses = _require(obj, "responses", list, errors, where, default=[])
    if not all(isinstance(r, str) for r in responses):
        errors.append(f"{where}: responses must be strings")
        responses = [r for r in responses if isinstance(r, str)]
    raw_children = _require(obj, "children", list, errors, where, default=[], optional=True)
    children = []
    for child_obj in raw_children:
        child = _parse_node(child_obj, errors, f"child of {where}")
        if child is not None:
            children.append(child)
    updates = _require(obj, "context_updates", dict, errors, where, default={}, optional=True)
    if not all(isinstance(k, str) and isinstance(v, str) for k, v in updates.items()):
        errors.append(f"{where}: context_updates must map strings to strings")
        updates = {k: v for k, v in updates.items() if isinstance(k, str) and isinstance(v, str)}
    if node_id is None:
        return None
    return DialogNode(
        id=node_id,
        title=title or "",
        condition=condition,
        responses=tuple(responses),
        children=tuple(children),
        context_updates=tuple(updates.items()),
    )


def load_skill(document: str) -> Skill:
    """Structurally parse a skill document, without semantic validation.

    Raises SkillError listing every structural and condition-parse problem
    found, not just the first.
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SkillError([f"document is not valid JSON: {exc}"]) from exc
    if not isinstance(data, dict):
        raise SkillError(["top level must be a JSON object"])

    errors: list[str] = []
    name = _require(data, "name", str, errors, "skill", default="")

    intents = []
    for i, obj in enumerate(_require(data, "intents", list, errors, "skill", default=[])):
        where = f"intent #{i}"
        if not isinstance(obj, dict):
            errors.append(f"{where}: must be an object")
            continue
        intent_name = _require(obj, "name", str, errors, where)
        examples = _require(obj, "examples", list, errors, where, default=[])
        if not all(isinstance(e, str) for e in examples):
            errors.append(f"{where}: examples must be strings")
            examples = [e for e in examples if isinstance(e, str)]
        if intent_name:
            intents.append(Intent(intent_name, tuple(examples)))

    entities = []
    for i, obj in enumerate(_require(data, "entities", list, errors, "skill", default=[])):
        where = f"entity #{i}"
        if not isinstance(obj, dict):
            errors.append(f"{where}: must be an object")
            continue
        entity_name = _require(obj, "name", str, errors, where)
        values = []
        for j, vobj in enumerate(_require(obj, "values", list, errors, where, default=[])):
            vwhere = f"{where} value #{j}"
            if not isinstance(vobj, dict):
                errors.append(f"{vwhere}: must be an object")
                continue
            label = _require(vobj, "label", str, errors, vwhere)
            synonyms = _require(vobj, "synonyms", list, errors, vwhere, default=[], optional=True)
            if not all(isinstance(s, str) for s in synonyms):
                errors.append(f"{vwhere}: synonyms must be strings")
                synonyms = [s for s in synonyms if isinstance(s, str)]
            if label:
                values.append(EntityValue(label, tuple(synonyms)))
        if entity_name:
            entities.append(Entity(entity_name, tuple(values)))

    dialog = []
    for i, obj in enumerate(_require(data, "dialog", list, errors, "skill", default=[])):
        node = _parse_node(obj, errors, f"dialog node #{i}")
        if node is not None:
            dialog.append(node)

    metadata = data.get("metadata", {})
    if not isinstance(metadata, dict):
        errors.append("skill: metadata must be an object")
        metadata = {}

    if errors:
        raise SkillError(errors)
    return Skill(
        name=name,
        intents=tuple(intents),
        entities=tuple(entities),
        dialog=tuple(dialog),
        metadata=tuple((k, json.dumps(v)) for k, v in metadata.items()),
    )


def validate_skill(skill: Skill) -> ValidationReport:
    """Check every servability rule; an empty report means servable."""
    report = ValidationReport()

    seen: set[str] = set()
    for intent in skill.intents:
        where = f"intent {intent.name!r}"
        if intent.name in seen:
            report.add("duplicate_intent_name", f"intent {intent.name!r} declared twice", where)
        seen.add(intent.name)
        if not intent.examples:
            report.add("empty_intent_examples", "intent has no examples", where)
        normalized = set()
        for example in intent.examples:
            tokens = tuple(tokenize(example))
            if not tokens:
                report.add("empty_example", f"example {example!r} is empty after normalization", where)
            elif tokens in normalized:
                report.add("duplicate_example", f"example {example!r} duplicates another", where)
            normalized.add(tokens)

    seen = set()
    for entity in skill.entities:
        where = f"entity {entity.name!r}"
        if entity.name in seen:
            report.add("duplicate_entity_name", f"entity {entity.name!r} declared twice", where)
        seen.add(entity.name)
        if not entity.values:
            report.add("empty_entity", "entity has no values", where)
        labels = set()
        for value in entity.values:
            if value.label in labels:
                report.add("duplicate_value_label", f"value {value.label!r} declared twice", where)
            labels.add(value.label)
            forms = set()
            for form in value.surface_forms:
                if not tokenize(form):
                    report.add("empty_surface_form", f"surface form {form!r} is empty", where)
                if form in forms:
                    report.add(
                        "duplicate_surface_form",
                        f"surface form {form!r} repeated in value {value.label!r}",
                        where,
                    )
                forms.add(form)

    intent_names = {i.name for i in skill.intents}
    entity_names = {e.name for e in skill.entities}
    node_ids: set[str] = set()
    welcome_nodes: list[str] = []
    fallback_nodes: list[str] = []

    for node, path in skill.walk_nodes():
        where = f"node {node.id!r}"
        if node.id in node_ids:
            report.add("duplicate_node_id", f"node id {node.id!r} used twice", where)
        node_ids.add(node.id)
        if not node.responses and not node.children:
            report.add("empty_responses", "node has neither responses nor children", where)
        for name in sorted(referenced_intents(node.condition) - intent_names):
            report.add("undeclared_intent", f"condition references undeclared intent #{name}", where)
        for name in sorted(referenced_entities(node.condition) - entity_names):
            report.add("undeclared_entity", f"condition references undeclared entity @{name}", where)
        if node.condition == Welcome():
            welcome_nodes.append(node.id)
        if node.condition == AnythingElse():
            fallback_nodes.append(node.id)

    if not welcome_nodes:
        report.add("missing_welcome", "no node with the `welcome` condition", "dialog")
    elif len(welcome_nodes) > 1:
        report.add("duplicate_welcome", f"multiple welcome nodes: {welcome_nodes}", "dialog")

    top_ids = [n.id for n in skill.dialog]
    if not fallback_nodes:
        report.add("missing_fallback", "no node with the `anything_else` condition", "dialog")
    elif len(fallback_nodes) > 1:
        report.add("duplicate_fallback", f"multiple anything_else nodes: {fallback_nodes}", "dialog")
    elif fallback_nodes[0] not in top_ids or top_ids[-1] != fallback_nodes[0]:
        report.add(
            "misplaced_fallback",
            "the anything_else node must be the last top-level node",
            f"node {fallback_nodes[0]!r}",
        )

    # A sibling after an always-true condition can never fire.
    def check_reachable(nodes: tuple[DialogNode, ...]) -> None:
        blocked_by = None
        for node in nodes:
            if blocked_by is not None:
                report.add(
                    "unreachable_node",
                    f"node follows sibling {blocked_by!r} whose condition always holds",
                    f"node {node.id!r}",
                )
            if node.condition in (BoolLit(True), AnythingElse()):
                blocked_by = node.id
            check_reachable(node.children)

    check_reachable(skill.dialog)
    return report


def parse_skill(document: str) -> Skill:
    """Load and validate a skill document; raises SkillError on any problem."""
    skill = load_skill(document)
    report = validate_skill(skill)
    if not report.ok:
        raise SkillError([str(v) for v in report.violations])
    return skill


def serialize_skill(skill: Skill) -> str:
    """Render a Skill back to document form; parse_skill round-trips it."""

    def node_obj(node: DialogNode) -> dict:
        obj = {
            "id": node.id,
            "title": node.title,
            "condition": condition_to_source(node.condition),
            "responses": list(node.responses),
        }
        if node.children:
            obj["children"] = [node_obj(c) for c in node.children]
        if node.context_updates:
            obj["context_updates"] = dict(node.context_updates)
        return obj

    data = {
        "name": skill.name,
        "metadata": {k: json.loads(v) for k, v in skill.metadata},
        "intents": [{"name": i.name, "examples": list(i.examples)} for i in skill.intents],
        "entities": [
            {
                "name": e.name,
                "values": [{"label": v.label, "synonyms": list(v.synonyms)} for v in e.values],
            }
            for e in skill.entities
        ],
        "dialog": [node_obj(n) for n in skill.dialog],
    }
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
