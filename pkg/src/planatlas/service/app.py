"""HTTP/JSON service: sessions, graph/metrics/embedding exports, planning, SSE.

Error mapping: input errors (syntax, unsupported subset, validation, cap,
unknown fluent/node) are 400; unknown sessions 404; planning dead ends
(unsolvable, budget) 422; anything else from the package is 500.  Every error
body is the exception's machine-readable payload.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles

from .. import SCHEMA_VERSION, __version__
from ..embedding import EmbedConfig
from ..errors import (
    BudgetExceeded,
    GroundingCapExceeded,
    InvalidPlanError,
    MutexViolation,
    NotReadyError,
    PddlSyntaxError,
    PlanatlasError,
    PreconditionViolation,
    UnknownFluentError,
    UnknownNodeError,
    Unsolvable,
    UnsupportedFeatureError,
    UnsupportedRequirementError,
    ValidationError,
)
from ..pddl.ground import DEFAULT_GROUNDING_CAP
from ..planning import DEFAULT_BUDGET
from .schemas import (
    CreateSessionRequest,
    PlanRequest,
    PlanResponse,
    RestartResponse,
    SessionCreated,
    SessionState,
    SnapshotResponse,
)
from .sessions import Session, SessionNotFound, SessionStore

_STATUS_BY_ERROR: list[tuple[type[PlanatlasError], int]] = [
    (SessionNotFound, 404),
    (PddlSyntaxError, 400),
    (UnsupportedRequirementError, 400),
    (UnsupportedFeatureError, 400),
    (ValidationError, 400),
    (GroundingCapExceeded, 400),
    (UnknownFluentError, 400),
    (UnknownNodeError, 400),
    (PreconditionViolation, 400),
    (InvalidPlanError, 400),
    (MutexViolation, 400),
    (NotReadyError, 409),
    (Unsolvable, 422),
    (BudgetExceeded, 422),
]


def _status_for(exc: PlanatlasError) -> int:
    for cls, status in _STATUS_BY_ERROR:
        if isinstance(exc, cls):
            return status
    return 500


@dataclass
class ServerSettings:
    grounding_cap: int = DEFAULT_GROUNDING_CAP
    planner_budget: int = DEFAULT_BUDGET
    embed_defaults: EmbedConfig = field(default_factory=EmbedConfig)
    frame_stride: int = 50
    static_dir: str | None = None  # serve the browser UI from here if set


def create_app(settings: ServerSettings | None = None) -> FastAPI:
    settings = settings or ServerSettings()
    app = FastAPI(title="planatlas", version=__version__)
    store = SessionStore()
    app.state.store = store
    app.state.settings = settings

    @app.exception_handler(PlanatlasError)
    async def planatlas_error_handler(_request: Request, exc: PlanatlasError):
        payload = exc.payload()
        payload["schema_version"] = SCHEMA_VERSION
        return JSONResponse(status_code=_status_for(exc), content=payload)

    @app.get("/api/info")
    def info() -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "name": "planatlas",
            "version": __version__,
            "sessions": store.ids(),
            "defaults": {
                "grounding_cap": settings.grounding_cap,
                "planner_budget": settings.planner_budget,
                "embed": settings.embed_defaults.to_json(),
                "frame_stride": settings.frame_stride,
            },
        }

    @app.post("/sessions", response_model=SessionCreated)
    def create_session(req: CreateSessionRequest) -> SessionCreated:
        config = req.embed.resolve(settings.embed_defaults)
        session = store.create(
            domain_text=req.domain,
            problem_text=req.problem,
            config=config,
            seed=req.seed,
            include_static=req.include_static,
            grounding_cap=settings.grounding_cap,
            frame_stride=settings.frame_stride,
            wait=req.wait,
        )
        return SessionCreated(
            session_id=session.id,
            status=session.status,
            node_count=len(session.graph),
            edge_count=session.graph.edge_count,
            fluent_count=session.graph.fluent_count,
            action_count=len(session.graph) - session.graph.fluent_count,
            static_fluent_count=len(session.domain.static_fluents),
        )

    def _session(session_id: str) -> Session:
        return store.get(session_id)

    @app.get("/sessions/{session_id}/graph")
    def get_graph(session_id: str) -> dict:
        return _session(session_id).graph.to_json()

    @app.get("/sessions/{session_id}/metrics")
    def get_metrics(session_id: str) -> dict:
        return _session(session_id).metrics_json()

    @app.get("/sessions/{session_id}/embedding")
    def get_embedding(session_id: str, wait: bool = True) -> dict:
        session = _session(session_id)
        embedding = session.display_embedding(wait=wait)
        payload = embedding.to_json()
        payload["config"] = session.config.to_json()
        payload["final"] = True
        return payload

    @app.get("/sessions/{session_id}/embedding/frames")
    def stream_frames(session_id: str) -> StreamingResponse:
        session = _session(session_id)
        q = session.hub.subscribe()

        def generate():
            try:
                while True:
                    frame = q.get()
                    payload = session.display_frame(frame)
                    yield f"data: {json.dumps(payload)}\n\n"
                    if frame.final:
                        break
            finally:
                session.hub.unsubscribe(q)

        return StreamingResponse(generate(), media_type="text/event-stream")

    @app.get("/sessions/{session_id}/state", response_model=SessionState)
    def get_state(session_id: str) -> SessionState:
        session = _session(session_id)
        with session.lock:
            return SessionState(
                session_id=session.id,
                status=session.status,
                current_state=sorted(session.current_state),
                goal=sorted(session.problem.goal),
                history=[p.to_json() for p in session.history],
            )

    @app.post("/sessions/{session_id}/plan", response_model=PlanResponse)
    def request_plan(session_id: str, req: PlanRequest) -> PlanResponse:
        session = _session(session_id)
        goal = frozenset([req.goal] if isinstance(req.goal, str) else req.goal)
        budget = req.budget if req.budget is not None else settings.planner_budget
        found, trace, overlay, state = session.request_plan(
            goal=goal, heuristic=req.heuristic, commit=req.commit, budget=budget
        )
        return PlanResponse(
            plan=found.to_json(),
            trace=trace.to_json(),
            overlay=overlay.to_json(),
            committed=req.commit,
            current_state=sorted(state),
        )

    @app.post("/sessions/{session_id}/restart", response_model=RestartResponse)
    def restart(session_id: str) -> RestartResponse:
        session = _session(session_id)
        state = session.restart()
        return RestartResponse(current_state=sorted(state), history_length=0)

    @app.get("/sessions/{session_id}/snapshot", response_model=SnapshotResponse)
    def snapshot(session_id: str) -> SnapshotResponse:
        session = _session(session_id)
        data = session.snapshot_json()
        return SnapshotResponse(**data)

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str) -> dict:
        store.delete(session_id)
        return {"schema_version": SCHEMA_VERSION, "deleted": session_id}

    if settings.static_dir and Path(settings.static_dir).is_dir():
        app.mount("/", StaticFiles(directory=settings.static_dir, html=True), name="ui")

    return app
