/** Server JSON payload shapes. The UI consumes only these interfaces. */

export type NodeKind = "fluent" | "action";

export interface EmbeddingNode {
  id: string;
  kind: NodeKind;
  xy: number[];
}

export interface EmbeddingPayload {
  schema_version: number;
  seed: number;
  iteration: number;
  dimension: number;
  nodes: EmbeddingNode[];
}

/** One SSE frame from /sessions/{id}/embedding/frames. */
export interface FramePayload extends EmbeddingPayload {
  final: boolean;
}

export type SegmentKind = "consumed" | "produced";

export interface SegmentPayload {
  from: string;
  to: string;
  kind: SegmentKind;
  step: number;
}

export interface OverlayPayload {
  schema_version: number;
  segments: SegmentPayload[];
  node_classes: Record<string, string>;
  unplaced: string[];
}

export interface TraceStepPayload {
  action_id: string;
  consumed: string[];
  produced: string[];
  deleted: string[];
}

export interface TracePayload {
  schema_version: number;
  steps: TraceStepPayload[];
  states: string[][];
}

export interface PlanPayload {
  schema_version: number;
  steps: string[];
  cost: number;
  expansions: number;
  heuristic: string;
}

export interface PlanResponse {
  schema_version: number;
  plan: PlanPayload;
  trace: TracePayload;
  overlay: OverlayPayload;
  committed: boolean;
  current_state: string[];
}

export interface PlanRequest {
  goal: string | string[];
  heuristic?: "blind" | "embedding";
  commit?: boolean;
  budget?: number;
}

export interface SessionCreated {
  session_id: string;
  status: string;
  node_count: number;
  edge_count: number;
  fluent_count: number;
  action_count: number;
  static_fluent_count: number;
}

export interface SessionState {
  session_id: string;
  status: string;
  current_state: string[];
  goal: string[];
  history: PlanPayload[];
}

export interface GraphNodePayload {
  id: string;
  kind: NodeKind;
}

export interface GraphPayload {
  schema_version: number;
  nodes: GraphNodePayload[];
  edges: [number, number][];
}

export interface ActionInfoPayload {
  id: string;
  pre: string[];
  add: string[];
  del: string[];
}

export interface DomainPayload {
  schema_version: number;
  fluents: string[];
  static_fluents: string[];
  actions: ActionInfoPayload[];
  objects: Record<string, string>;
  skipped_conflicting: number;
}

export interface SnapshotPayload {
  session_id: string;
  domain: DomainPayload;
  problem: { name: string; init: string[]; goal: string[] };
  current_state: string[];
  history: PlanPayload[];
  embedding: EmbeddingPayload | null;
}

export interface RestartResponse {
  current_state: string[];
  history_length: number;
}

export interface ErrorPayload {
  type: string;
  message: string;
  schema_version: number;
  [extra: string]: unknown;
}
