"""Pydantic request/response models for the HTTP service.

Response payloads embed the module-level JSON exports (each carrying
``schema_version``) rather than re-declaring their fields, so the service and
the CLI/golden tests share one source of truth for those shapes.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

from .. import SCHEMA_VERSION
from ..embedding import EmbedConfig

__all__ = [
    "CreateSessionRequest",
    "EmbedConfigModel",
    "ErrorBody",
    "PlanRequest",
    "PlanResponse",
    "RestartResponse",
    "SessionCreated",
    "SessionState",
    "SnapshotResponse",
]


class EmbedConfigModel(BaseModel):
    """Wire form of EmbedConfig; unset fields fall back to server defaults."""

    iterations: int | None = None
    alpha: float | None = None
    dimension: int | None = None
    mode: Literal["half-jump", "force-attraction"] | None = None
    repulsion_sample_size: int | None = None
    init_range: tuple[float, float] | None = None
    epsilon: float | None = None
    repulsion_strength: float | None = None
    clamp_jump: bool | None = None
    workers: int | None = None

    def resolve(self, defaults: EmbedConfig) -> EmbedConfig:
        overrides = {k: v for k, v in self.model_dump().items() if v is not None}
        merged = {**defaults.to_json(), **overrides}
        return EmbedConfig.from_json(merged)


class CreateSessionRequest(BaseModel):
    domain: str = Field(description="PDDL domain source text")
    problem: str = Field(description="PDDL problem source text")
    seed: int = 0
    include_static: bool = False
    embed: EmbedConfigModel = Field(default_factory=EmbedConfigModel)
    wait: bool = True  # block until the embedding finishes


class SessionCreated(BaseModel):
    schema_version: int = SCHEMA_VERSION
    session_id: str
    status: Literal["ready", "embedding"]
    node_count: int
    edge_count: int
    fluent_count: int
    action_count: int
    static_fluent_count: int


class PlanRequest(BaseModel):
    goal: str | list[str] = Field(description="goal fluent id, or a list of them")
    heuristic: Literal["blind", "embedding"] = "blind"
    commit: bool = True
    budget: int | None = None


class PlanResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    plan: dict[str, Any]
    trace: dict[str, Any]
    overlay: dict[str, Any]
    committed: bool
    current_state: list[str]


class SessionState(BaseModel):
    schema_version: int = SCHEMA_VERSION
    session_id: str
    status: Literal["ready", "embedding"]
    current_state: list[str]
    goal: list[str]
    history: list[dict[str, Any]]


class RestartResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    current_state: list[str]
    history_length: int


class SnapshotResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    session_id: str
    domain: dict[str, Any]
    problem: dict[str, Any]
    current_state: list[str]
    history: list[dict[str, Any]]
    embedding: dict[str, Any] | None


class ErrorBody(BaseModel):
    type: str
    message: str
