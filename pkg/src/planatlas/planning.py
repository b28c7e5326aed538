"""Forward state-space STRIPS planner: blind BFS and embedding-guided search.

States are frozensets of canonical fluent strings (closed world).  Blind mode
is breadth-first over unit costs, so returned plans are cost-optimal.
Embedding mode is greedy best-first on h(s) = sum over unmet goal fluents g of
min_{f in s} ||e(f) - e(g)||, the set lift of coordinate distance; it returns
valid but possibly suboptimal plans, typically expanding fewer nodes.
"""

from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np

from .embedding import EmbeddingSet
from .errors import (
    BudgetExceeded,
    PreconditionViolation,
    UnknownFluentError,
    Unsolvable,
    ValidationError,
)
from .pddl.model import GroundedAction, GroundedDomain

#: A state is the frozenset of currently-true fluents.
State = frozenset

BLIND = "blind"
EMBEDDING = "embedding"
DEFAULT_BUDGET = 1_000_000


def apply(s: State, a: GroundedAction) -> State:
    """STRIPS successor: (s minus deletes) union adds; preconditions checked."""
    missing = a.preconditions - s
    if missing:
        raise PreconditionViolation(a.id, missing)
    return (s - a.delete_effects) | a.add_effects


@dataclass(frozen=True)
class Plan:
    """An executable action sequence with unit-cost total and search stats."""

    steps: tuple[str, ...]  # grounded action ids, in execution order
    cost: int
    expansions: int
    heuristic: str

    def ipc_text(self, domain: GroundedDomain) -> str:
        """One action per line in IPC plan-file form."""
        lines = [domain.actions_by_id[s].ipc() for s in self.steps]
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "steps": list(self.steps),
            "cost": self.cost,
            "expansions": self.expansions,
            "heuristic": self.heuristic,
        }


class _SuccessorIndex:
    """Candidate filtering: each action watches one of its preconditions.

    An action is only tried when its watched fluent is true (actions without
    preconditions are always tried), cutting successor generation far below
    scanning every grounded action per expansion.
    """

    def __init__(self, actions: Iterable[GroundedAction]):
        self.by_watch: dict[str, list[GroundedAction]] = {}
        self.always: list[GroundedAction] = []
        load: dict[str, int] = {}
        for a in sorted(actions, key=lambda x: x.id):
            if not a.preconditions:
                self.always.append(a)
                continue
            watch = min(sorted(a.preconditions), key=lambda f: (load.get(f, 0), f))
            load[watch] = load.get(watch, 0) + 1
            self.by_watch.setdefault(watch, []).append(a)

    def applicable(self, s: State) -> Iterator[GroundedAction]:
        """Applicable actions in lexicographic id order."""
        candidates = list(self.always)
        for f in s:
            candidates.extend(self.by_watch.get(f, ()))
        candidates.sort(key=lambda a: a.id)
        for a in candidates:
            if a.preconditions <= s:
                yield a


def _check_fluents(domain: GroundedDomain, fluents: Iterable[str], what: str) -> None:
    for f in fluents:
        if f not in domain.fluent_set:
            raise UnknownFluentError(f"{what} fluent {f!r} is not in the grounded domain")


def _reconstruct(
    parents: dict[State, tuple[State, str] | None], goal_state: State
) -> tuple[str, ...]:
    steps: list[str] = []
    cur = goal_state
    while True:
        entry = parents[cur]
        if entry is None:
            break
        cur, action_id = entry
        steps.append(action_id)
    steps.reverse()
    return tuple(steps)


class _EmbeddingHeuristic:
    def __init__(self, embedding: EmbeddingSet, goal: frozenset):
        index = {nid: i for i, nid in enumerate(embedding.ids)}
        self.coords = embedding.coords
        self.index = index
        # goal fluents without coordinates cannot steer the search; they
        # contribute 0 and the search degrades toward blind order for them.
        self.goal_rows = {g: index[g] for g in sorted(goal) if g in index}

    def __call__(self, s: State) -> float:
        unmet = [row for g, row in self.goal_rows.items() if g not in s]
        if not unmet:
            return 0.0
        rows = [self.index[f] for f in s if f in self.index]
        if not rows:
            return 0.0
        have = self.coords[sorted(rows)]
        total = 0.0
        for row in unmet:
            diffs = have - self.coords[row]
            total += float(np.min(np.linalg.norm(diffs, axis=1)))
        return total


def plan(
    domain: GroundedDomain,
    s0: State,
    goal: frozenset,
    heuristic: str = BLIND,
    embedding: EmbeddingSet | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Plan:
    """Search for a plan from s0 to a state satisfying every goal fluent.

    Raises Unsolvable when the reachable space is exhausted and BudgetExceeded
    after ``budget`` expansions.
    """
    _check_fluents(domain, s0, "initial-state")
    _check_fluents(domain, goal, "goal")
    s0 = frozenset(s0)
    goal = frozenset(goal)
    if heuristic == BLIND:
        return _plan_blind(domain, s0, goal, budget)
    if heuristic == EMBEDDING:
        if embedding is None:
            raise ValidationError("embedding heuristic requires an EmbeddingSet")
        return _plan_greedy(domain, s0, goal, embedding, budget)
    raise ValidationError(f"unknown heuristic {heuristic!r}")


def _plan_blind(
    domain: GroundedDomain, s0: State, goal: frozenset, budget: int
) -> Plan:
    index = _SuccessorIndex(domain.actions)
    parents: dict[State, tuple[State, str] | None] = {s0: None}
    if goal <= s0:
        return Plan(steps=(), cost=0, expansions=0, heuristic=BLIND)
    queue: deque[State] = deque([s0])
    expansions = 0
    while queue:
        if expansions >= budget:
            raise BudgetExceeded(budget)
        state = queue.popleft()
        expansions += 1
        for a in index.applicable(state):
            nxt = (state - a.delete_effects) | a.add_effects
            if nxt in parents:
                continue
            parents[nxt] = (state, a.id)
            if goal <= nxt:
                steps = _reconstruct(parents, nxt)
                return Plan(
                    steps=steps, cost=len(steps), expansions=expansions, heuristic=BLIND
                )
            queue.append(nxt)
    raise Unsolvable("goal unreachable from the initial state")


def _plan_greedy(
    domain: GroundedDomain,
    s0: State,
    goal: frozenset,
    embedding: EmbeddingSet,
    budget: int,
) -> Plan:
    index = _SuccessorIndex(domain.actions)
    h = _EmbeddingHeuristic(embedding, goal)
    parents: dict[State, tuple[State, str] | None] = {s0: None}
    if goal <= s0:
        return Plan(steps=(), cost=0, expansions=0, heuristic=EMBEDDING)
    counter = 0
    heap: list[tuple[float, int, State]] = [(h(s0), counter, s0)]
    expansions = 0
    while heap:
        if expansions >= budget:
            raise BudgetExceeded(budget)
        _, _, state = heapq.heappop(heap)
        expansions += 1
        for a in index.applicable(state):
            nxt = (state - a.delete_effects) | a.add_effects
            if nxt in parents:
                continue
            parents[nxt] = (state, a.id)
            if goal <= nxt:
                steps = _reconstruct(parents, nxt)
                return Plan(
                    steps=steps,
                    cost=len(steps),
                    expansions=expansions,
                    heuristic=EMBEDDING,
                )
            counter += 1
            heapq.heappush(heap, (h(nxt), counter, nxt))
    raise Unsolvable("goal unreachable from the initial state")


@dataclass(frozen=True)
class ValidationReport:
    """Replay result: valid, or the first failing step and why."""

    valid: bool
    failing_step: int | None = None  # 0-based index into the plan
    missing: tuple[str, ...] = ()  # missing preconditions or unmet goal fluents
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "failing_step": self.failing_step,
            "missing": list(self.missing),
            "reason": self.reason,
        }

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        where = "goal" if self.failing_step is None else f"step {self.failing_step}"
        return f"invalid at {where}: {self.reason} [{', '.join(self.missing)}]"


def validate(
    domain: GroundedDomain,
    s0: State,
    steps: Iterable[str],
    goal: frozenset,
) -> ValidationReport:
    """Replay a plan, reporting the first violated precondition or unmet goal."""
    state = frozenset(s0)
    for i, action_id in enumerate(steps):
        action = domain.actions_by_id.get(action_id)
        if action is None:
            return ValidationReport(
                valid=False,
                failing_step=i,
                missing=(action_id,),
                reason="unknown action id",
            )
        missing = action.preconditions - state
        if missing:
            return ValidationReport(
                valid=False,
                failing_step=i,
                missing=tuple(sorted(missing)),
                reason=f"preconditions of {action_id} not satisfied",
            )
        state = (state - action.delete_effects) | action.add_effects
    unmet = frozenset(goal) - state
    if unmet:
        return ValidationReport(
            valid=False,
            failing_step=None,
            missing=tuple(sorted(unmet)),
            reason="goal not satisfied after final step",
        )
    return ValidationReport(valid=True)
