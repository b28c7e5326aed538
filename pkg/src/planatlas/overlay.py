"""Plan-trace overlays: red consumed / black produced segments over an embedding.

A trace replays a validated plan into per-step consumed (preconditions),
produced (add effects) and deleted fluent sets plus the chained states.  The
geometry step drops endpoints that have no coordinate in the active embedding
(static fluents filtered out of the graph) into an ``unplaced`` side-channel
rather than drawing them.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .embedding import EmbeddingSet
from .errors import InvalidPlanError, MutexViolation, ValidationError
from .graph import ACTION
from .pddl.model import GroundedDomain
from .planning import State, validate

CONSUMED = "consumed"  # drawn red
PRODUCED = "produced"  # drawn black

CLASS_CURRENT = "current"  # fluents true in the trace's final state (red)
CLASS_ACTION = "action"  # action nodes (green)
CLASS_OTHER = "other"  # remaining fluents (blue)


@dataclass(frozen=True)
class TraceStep:
    action_id: str
    consumed: tuple[str, ...]  # all preconditions, sorted
    produced: tuple[str, ...]  # add effects, sorted
    deleted: tuple[str, ...]  # delete effects, sorted

    def to_json(self) -> dict:
        return {
            "action_id": self.action_id,
            "consumed": list(self.consumed),
            "produced": list(self.produced),
            "deleted": list(self.deleted),
        }


@dataclass(frozen=True)
class PlanTrace:
    steps: tuple[TraceStep, ...]
    states: tuple[frozenset, ...]  # length = len(steps) + 1

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "steps": [s.to_json() for s in self.steps],
            "states": [sorted(s) for s in self.states],
        }


def trace_from_plan(
    domain: GroundedDomain, s0: State, steps: Iterable[str]
) -> PlanTrace:
    """Replay a plan into a trace; refuses invalid plans with the report."""
    step_ids = tuple(steps)
    report = validate(domain, s0, step_ids, frozenset())
    if not report.valid:
        raise InvalidPlanError(report)
    states = [frozenset(s0)]
    out: list[TraceStep] = []
    for action_id in step_ids:
        action = domain.actions_by_id[action_id]
        state = states[-1]
        out.append(
            TraceStep(
                action_id=action_id,
                consumed=tuple(sorted(action.preconditions)),
                produced=tuple(sorted(action.add_effects)),
                deleted=tuple(sorted(action.delete_effects)),
            )
        )
        states.append((state - action.delete_effects) | action.add_effects)
    return PlanTrace(steps=tuple(out), states=tuple(states))


@dataclass(frozen=True)
class Segment:
    from_node: str  # action id
    to_node: str  # fluent
    kind: str  # CONSUMED | PRODUCED
    step_index: int

    def to_json(self) -> dict:
        return {
            "from": self.from_node,
            "to": self.to_node,
            "kind": self.kind,
            "step": self.step_index,
        }


@dataclass(frozen=True)
class OverlayGeometry:
    segments: tuple[Segment, ...]  # ordered by step, consumed before produced
    node_classes: dict[str, str]  # node id -> CLASS_*
    unplaced: tuple[str, ...]  # plan fluents with no coordinate, not drawn

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "segments": [s.to_json() for s in self.segments],
            "node_classes": dict(self.node_classes),
            "unplaced": list(self.unplaced),
        }


def overlay_geometry(trace: PlanTrace, e: EmbeddingSet) -> OverlayGeometry:
    """Segments and node paint classes for a trace over an embedding.

    One consumed segment per (action, precondition) and one produced segment
    per (action, add effect); node classes follow the trace's final state.
    """
    placed = set(e.ids)
    segments: list[Segment] = []
    unplaced: set[str] = set()
    for i, step in enumerate(trace.steps):
        if step.action_id not in placed:
            unplaced.add(step.action_id)
            unplaced.update(f for f in (*step.consumed, *step.produced) if f not in placed)
            continue
        for fluent in step.consumed:
            if fluent in placed:
                segments.append(Segment(step.action_id, fluent, CONSUMED, i))
            else:
                unplaced.add(fluent)
        for fluent in step.produced:
            if fluent in placed:
                segments.append(Segment(step.action_id, fluent, PRODUCED, i))
            else:
                unplaced.add(fluent)
    current = trace.states[-1]
    node_classes: dict[str, str] = {}
    for node_id, kind in zip(e.ids, e.kinds):
        if kind == ACTION:
            node_classes[node_id] = CLASS_ACTION
        elif node_id in current:
            node_classes[node_id] = CLASS_CURRENT
        else:
            node_classes[node_id] = CLASS_OTHER
    return OverlayGeometry(
        segments=tuple(segments),
        node_classes=node_classes,
        unplaced=tuple(sorted(unplaced)),
    )


def fluent_trajectory(
    trace: PlanTrace,
    members: Sequence[str] | None = None,
    pattern: str | None = None,
) -> tuple[str, ...]:
    """Project a mutually-exclusive fluent family onto the trace's states.

    The family is an explicit member list or a regex over canonical names
    (e.g. ``(at|in)_p0_.*``).  Exactly one member must hold in every state;
    the result is the member sequence reduced to change points.
    """
    if (members is None) == (pattern is None):
        raise ValidationError("specify exactly one of members or pattern")
    if pattern is not None:
        rx = re.compile(pattern)
        universe = sorted({f for state in trace.states for f in state})
        family = frozenset(f for f in universe if rx.fullmatch(f))
    else:
        family = frozenset(members)
    trajectory: list[str] = []
    for i, state in enumerate(trace.states):
        true_members = sorted(family & state)
        if len(true_members) != 1:
            raise MutexViolation(i, true_members)
        member = true_members[0]
        if not trajectory or trajectory[-1] != member:
            trajectory.append(member)
    return tuple(trajectory)
