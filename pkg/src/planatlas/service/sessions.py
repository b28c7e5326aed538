"""In-memory session store: one grounded domain + embedding + plan history each.

Per-session operations run under a lock; the embedding is computed by a
background thread that broadcasts frames to any number of stream subscribers
through a FrameHub.  The session's current state is re-derived from the
initial state plus committed history after every mutation — a cheap integrity
check that concurrent interleavings cannot corrupt the state machine.
"""

from __future__ import annotations

import queue
import threading
import uuid
from dataclasses import dataclass, field

from ..embedding import EmbedConfig, EmbeddingSet, embed, rescale
from ..errors import NotReadyError, PlanatlasError, UnknownFluentError
from ..graph import GraphReport, TransitionGraph, build_graph, component_report, graph_report
from ..overlay import OverlayGeometry, PlanTrace, overlay_geometry, trace_from_plan
from ..pddl import GroundedDomain, ProblemInstance, load
from ..planning import EMBEDDING, Plan, plan as run_plan

DISPLAY_BOX = ((0.0, 100.0), (0.0, 100.0))
HEURISTIC_DIMENSION = 10


class SessionNotFound(PlanatlasError):
    code = "unknown-session"


@dataclass
class Frame:
    """One broadcast embedding snapshot."""

    iteration: int
    final: bool
    embedding: EmbeddingSet


class FrameHub:
    """Fan-out of embedding frames to SSE subscribers.

    Subscribers joining mid-run receive frames from that point on; subscribers
    joining after completion receive just the final frame.  The final frame is
    always delivered exactly once per subscriber and is marked.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._subscribers: list[queue.SimpleQueue] = []
        self._final: Frame | None = None

    def publish(self, frame: Frame) -> None:
        with self._lock:
            if frame.final:
                self._final = frame
            subscribers = list(self._subscribers)
        for q in subscribers:
            q.put(frame)

    def subscribe(self) -> queue.SimpleQueue:
        with self._lock:
            q: queue.SimpleQueue = queue.SimpleQueue()
            if self._final is not None:
                q.put(self._final)
            else:
                self._subscribers.append(q)
            return q

    def unsubscribe(self, q: queue.SimpleQueue) -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)


@dataclass
class Session:
    id: str
    domain: GroundedDomain
    problem: ProblemInstance
    graph: TransitionGraph
    config: EmbedConfig
    seed: int
    frame_stride: int
    current_state: frozenset
    history: list[Plan] = field(default_factory=list)
    embedding: EmbeddingSet | None = None
    hub: FrameHub = field(default_factory=FrameHub)
    lock: threading.RLock = field(default_factory=threading.RLock)
    _report: GraphReport | None = None
    _heuristic_embedding: EmbeddingSet | None = None
    _embed_done: threading.Event = field(default_factory=threading.Event)
    _embed_error: Exception | None = None

    # -- embedding lifecycle -------------------------------------------------

    def run_embedding(self) -> None:
        """Compute the embedding, streaming every Nth frame plus the final one."""

        def on_frame(e: EmbeddingSet) -> None:
            if e.iteration % self.frame_stride == 0 and e.iteration != self.config.iterations:
                self.hub.publish(Frame(iteration=e.iteration, final=False, embedding=e))

        try:
            final = embed(
                self.graph, self.config, self.seed,
                frame_callback=on_frame, display_box=DISPLAY_BOX,
            )
            with self.lock:
                self.embedding = final
            self.hub.publish(Frame(iteration=final.iteration, final=True, embedding=final))
        except Exception as exc:  # surfaced to waiting requests
            with self.lock:
                self._embed_error = exc
        finally:
            self._embed_done.set()

    def wait_ready(self, timeout: float | None = None) -> bool:
        return self._embed_done.wait(timeout)

    @property
    def status(self) -> str:
        return "ready" if self._embed_done.is_set() else "embedding"

    def display_embedding(self, wait: bool = True, timeout: float = 300.0) -> EmbeddingSet:
        if wait:
            self.wait_ready(timeout)
        with self.lock:
            if self._embed_error is not None:
                raise PlanatlasError(f"embedding failed: {self._embed_error}")
            if self.embedding is not None:
                return self.embedding
        raise NotReadyError("embedding not ready yet")

    def display_frame(self, frame: Frame) -> dict:
        """Serialize a frame rescaled into the display box."""
        shown = frame.embedding if frame.final else rescale(frame.embedding, DISPLAY_BOX)
        payload = shown.to_json()
        payload["iteration"] = frame.iteration
        payload["final"] = frame.final
        return payload

    # -- diagnostics ---------------------------------------------------------

    def report(self) -> GraphReport:
        with self.lock:
            if self._report is None:
                self._report = graph_report(self.graph)
            return self._report

    def metrics_json(self) -> dict:
        rep = self.report()
        data = rep.to_json()
        data["components"] = [c.to_json() for c in component_report(self.graph)]
        return data

    # -- planning ------------------------------------------------------------

    def heuristic_embedding(self) -> EmbeddingSet:
        """Higher-dimensional embedding for the distance heuristic, cached."""
        with self.lock:
            if self._heuristic_embedding is None:
                cfg = EmbedConfig.from_json(
                    {**self.config.to_json(), "dimension": HEURISTIC_DIMENSION}
                )
                self._heuristic_embedding = embed(self.graph, cfg, self.seed)
            return self._heuristic_embedding

    def request_plan(
        self,
        goal: frozenset,
        heuristic: str,
        commit: bool,
        budget: int,
    ) -> tuple[Plan, PlanTrace, OverlayGeometry, frozenset]:
        for fluent in goal:
            if fluent not in self.domain.fluent_set:
                raise UnknownFluentError(f"goal fluent {fluent!r} is not in the domain")
        embedding = self.heuristic_embedding() if heuristic == EMBEDDING else None
        display = self.display_embedding(wait=True)
        with self.lock:
            found = run_plan(
                self.domain,
                self.current_state,
                goal,
                heuristic=heuristic,
                embedding=embedding,
                budget=budget,
            )
            trace = trace_from_plan(self.domain, self.current_state, found.steps)
            overlay = overlay_geometry(trace, display)
            if commit:
                self.current_state = trace.states[-1]
                self.history.append(found)
                self._check_integrity()
            return found, trace, overlay, self.current_state

    def restart(self) -> frozenset:
        with self.lock:
            self.current_state = self.problem.initial_state
            self.history.clear()
            self._check_integrity()
            return self.current_state

    def _check_integrity(self) -> None:
        state = self.problem.initial_state
        for p in self.history:
            for action_id in p.steps:
                a = self.domain.actions_by_id[action_id]
                state = (state - a.delete_effects) | a.add_effects
        if state != self.current_state:
            raise PlanatlasError("session state diverged from replayed history")

    def snapshot_json(self) -> dict:
        with self.lock:
            return {
                "session_id": self.id,
                "domain": self.domain.to_json(),
                "problem": {
                    "name": self.problem.name,
                    "init": sorted(self.problem.initial_state),
                    "goal": sorted(self.problem.goal),
                },
                "current_state": sorted(self.current_state),
                "history": [p.to_json() for p in self.history],
                "embedding": self.embedding.to_json() if self.embedding else None,
            }


class SessionStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def create(
        self,
        domain_text: str,
        problem_text: str,
        config: EmbedConfig,
        seed: int,
        include_static: bool,
        grounding_cap: int,
        frame_stride: int,
        wait: bool,
    ) -> Session:
        _, grounded, problem = load(domain_text, problem_text, cap=grounding_cap)
        graph = build_graph(grounded.actions, include_static=include_static)
        session = Session(
            id=uuid.uuid4().hex,
            domain=grounded,
            problem=problem,
            graph=graph,
            config=config,
            seed=seed,
            frame_stride=frame_stride,
            current_state=problem.initial_state,
        )
        with self._lock:
            self._sessions[session.id] = session
        worker = threading.Thread(
            target=session.run_embedding, name=f"embed-{session.id[:8]}", daemon=True
        )
        worker.start()
        if wait:
            session.wait_ready(timeout=600.0)
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise SessionNotFound(f"unknown session {session_id!r}")
        return session

    def delete(self, session_id: str) -> None:
        with self._lock:
            if session_id not in self._sessions:
                raise SessionNotFound(f"unknown session {session_id!r}")
            del self._sessions[session_id]

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._sessions)
