"""Core data model: fluents, schemas, grounded actions and domains.

A fluent is represented as its canonical string: predicate name and ordered
object arguments joined with "_" and lower-cased (e.g. ``at_pkg-0_loc-c1-2``).
Canonical strings are unique identifiers, so the separator character is
forbidden inside predicate/object/action names.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import ValidationError

SEPARATOR = "_"

#: Fluents and grounded-action ids are canonical strings.
Fluent = str


def canonical(name: str, args: tuple[str, ...] | list[str] = ()) -> str:
    """Canonical string for a predicate or action instance."""
    return SEPARATOR.join((name, *args))


def check_name(name: str, role: str) -> str:
    """Reject names that would make canonical strings ambiguous."""
    if SEPARATOR in name:
        raise ValidationError(
            f"{role} name {name!r} contains the reserved separator {SEPARATOR!r}"
        )
    if not name or any(c.isspace() for c in name):
        raise ValidationError(f"invalid {role} name {name!r}")
    return name


@dataclass(frozen=True)
class Atom:
    """A predicate applied to terms (variables ``?x`` or object names)."""

    predicate: str
    terms: tuple[str, ...]

    def substitute(self, binding: dict[str, str]) -> Fluent:
        return canonical(self.predicate, tuple(binding.get(t, t) for t in self.terms))

    def __str__(self) -> str:
        return "(" + " ".join((self.predicate, *self.terms)) + ")"


@dataclass(frozen=True)
class ActionSchema:
    """An uninstantiated action: typed parameters plus atom lists over them."""

    name: str
    parameters: tuple[tuple[str, str], ...]  # (variable, type), ordered
    preconditions: tuple[Atom, ...]
    add_effects: tuple[Atom, ...]
    delete_effects: tuple[Atom, ...]

    def __post_init__(self):
        declared = {v for v, _ in self.parameters}
        for atom in (*self.preconditions, *self.add_effects, *self.delete_effects):
            for term in atom.terms:
                if term.startswith("?") and term not in declared:
                    raise ValidationError(
                        f"action {self.name}: variable {term} not in parameter list"
                    )
        overlap = set(self.add_effects) & set(self.delete_effects)
        if overlap:
            raise ValidationError(
                f"action {self.name}: atom {next(iter(overlap))} appears in both "
                "add and delete effects"
            )


@dataclass(frozen=True)
class DomainDescription:
    """Parsed (unground) PDDL domain."""

    name: str
    requirements: tuple[str, ...]
    types: dict[str, str]  # type -> parent ("object" is the root)
    predicates: dict[str, tuple[tuple[str, str], ...]]  # name -> (var, type) params
    constants: tuple[tuple[str, str], ...]  # (name, type)
    schemas: tuple[ActionSchema, ...]

    def is_subtype(self, t: str, ancestor: str) -> bool:
        if ancestor == "object":
            return True
        while True:
            if t == ancestor:
                return True
            if t == "object":
                return False
            t = self.types[t]


@dataclass(frozen=True)
class GroundedAction:
    """A fully instantiated action: the (preconditions, id, effects) triple."""

    id: str
    name: str
    args: tuple[str, ...]
    preconditions: frozenset[Fluent]
    add_effects: frozenset[Fluent]
    delete_effects: frozenset[Fluent]

    def __post_init__(self):
        if self.add_effects & self.delete_effects:
            raise ValidationError(
                f"grounded action {self.id}: add and delete effects overlap"
            )

    def ipc(self) -> str:
        """IPC plan-file form, e.g. ``(drive-truck t1 l1 l2)``."""
        return "(" + " ".join((self.name, *self.args)) + ")"


@dataclass(frozen=True)
class GroundedDomain:
    """All grounded actions plus the fluent universe V and its static subset.

    ``fluents`` and ``actions`` are sorted by canonical string so that
    iteration order (and every downstream artifact) is deterministic.
    """

    fluents: tuple[Fluent, ...]
    actions: tuple[GroundedAction, ...]
    static_fluents: frozenset[Fluent]
    objects: dict[str, str]  # object name -> type
    predicates: dict[str, tuple[tuple[str, str], ...]]
    skipped_conflicting: int = 0  # bindings dropped because add/delete collided
    fluent_set: frozenset[Fluent] = field(init=False)
    actions_by_id: dict[str, GroundedAction] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "fluent_set", frozenset(self.fluents))
        object.__setattr__(self, "actions_by_id", {a.id: a for a in self.actions})

    def to_json(self) -> dict:
        """Documented debug/golden-test export of the grounded domain."""
        return {
            "schema_version": 1,
            "fluents": list(self.fluents),
            "static_fluents": sorted(self.static_fluents),
            "actions": [
                {
                    "id": a.id,
                    "pre": sorted(a.preconditions),
                    "add": sorted(a.add_effects),
                    "del": sorted(a.delete_effects),
                }
                for a in self.actions
            ],
            "objects": dict(sorted(self.objects.items())),
            "skipped_conflicting": self.skipped_conflicting,
        }

    def dumps(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json(), indent=indent)


@dataclass(frozen=True)
class ProblemInstance:
    """Initial state and goal, canonicalized against a grounded domain."""

    name: str
    initial_state: frozenset[Fluent]
    goal: frozenset[Fluent]
