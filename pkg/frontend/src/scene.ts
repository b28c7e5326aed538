/** Pure scene-graph construction.
 *
 * buildScene is a pure function of (server data, ViewState): identical inputs
 * produce an identical scene, field for field — replaying a recorded session
 * therefore renders identical scene graphs. The renderer just iterates the
 * result; all color, filtering, and coordinate policy lives here.
 *
 * Screen y grows downward while embedding y grows upward, so world y is
 * negated before the view transform (matching the server's SVG exporter).
 */

import type {
  EmbeddingPayload,
  OverlayPayload,
  SegmentKind,
} from "./types.js";
import { worldToScreen, type ViewState } from "./viewstate.js";

/** Actions are green, current-state fluents red, other fluents blue. */
export const NODE_COLORS = {
  action: "#2e8b57",
  current: "#d62728",
  other: "#1f77b4",
} as const;

/** Committed overlays: red into the action (consumed), black out (produced). */
export const SEGMENT_COLORS: Record<SegmentKind, string> = {
  consumed: "#d62728",
  produced: "#111111",
};

export const NODE_RADIUS = { fluent: 3.5, action: 3 } as const;

/** Hue for the i-th uncommitted what-if overlay: golden-angle steps from 45°
 * so consecutive previews are far apart on the wheel and the first few avoid
 * the red/green/blue reserved for nodes and committed overlays. */
export function whatIfHue(index: number): number {
  return (45 + index * 137.508) % 360;
}

export function whatIfColor(index: number, kind: SegmentKind): string {
  const lightness = kind === "consumed" ? 45 : 30;
  return `hsl(${whatIfHue(index).toFixed(3)}, 85%, ${lightness}%)`;
}

export interface OverlayView {
  overlay: OverlayPayload;
  committed: boolean;
  label: string;
}

export interface SceneNode {
  id: string;
  kind: "fluent" | "action";
  x: number;
  y: number;
  r: number;
  color: string;
}

export interface SceneSegment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  color: string;
  width: number;
  overlayIndex: number;
  kind: SegmentKind | "trajectory";
}

export interface LegendEntry {
  label: string;
  color: string;
  committed: boolean;
}

export interface Scene {
  nodes: SceneNode[];
  segments: SceneSegment[];
  legend: LegendEntry[];
}

function overlayColor(view: OverlayView, index: number, kind: SegmentKind): string {
  return view.committed ? SEGMENT_COLORS[kind] : whatIfColor(index, kind);
}

/** Polyline through the trajectory-family members an overlay touches, in
 * order of first touch (ties by id): the path a multi-valued fluent takes. */
function trajectorySegments(
  view: OverlayView,
  index: number,
  members: string[],
  position: Map<string, [number, number]>,
): SceneSegment[] {
  const firstStep = new Map<string, number>();
  for (const seg of view.overlay.segments) {
    for (const end of [seg.from, seg.to]) {
      if (members.includes(end) && !firstStep.has(end)) {
        firstStep.set(end, seg.step);
      }
    }
  }
  const ordered = [...firstStep.entries()]
    .sort((a, b) => a[1] - b[1] || (a[0] < b[0] ? -1 : 1))
    .map(([id]) => position.get(id))
    .filter((p): p is [number, number] => p !== undefined);
  const color = overlayColor(view, index, "consumed");
  const out: SceneSegment[] = [];
  for (let i = 0; i + 1 < ordered.length; i++) {
    const [x1, y1] = ordered[i]!;
    const [x2, y2] = ordered[i + 1]!;
    out.push({ x1, y1, x2, y2, color, width: 2, overlayIndex: index, kind: "trajectory" });
  }
  return out;
}

export function buildScene(
  embedding: EmbeddingPayload,
  currentState: Iterable<string>,
  overlays: OverlayView[],
  staticFluents: Iterable<string>,
  view: ViewState,
): Scene {
  const current = new Set(currentState);
  const statics = new Set(staticFluents);
  const position = new Map<string, [number, number]>();
  const nodes: SceneNode[] = [];
  for (const node of embedding.nodes) {
    const [sx, sy] = worldToScreen(view, node.xy[0] ?? 0, -(node.xy[1] ?? 0));
    position.set(node.id, [sx, sy]);
    if (node.kind === "action" && !view.showActions) continue;
    if (node.kind === "fluent" && !view.showStatic && statics.has(node.id)) continue;
    const color =
      node.kind === "action"
        ? NODE_COLORS.action
        : current.has(node.id)
          ? NODE_COLORS.current
          : NODE_COLORS.other;
    nodes.push({
      id: node.id,
      kind: node.kind,
      x: sx,
      y: sy,
      r: NODE_RADIUS[node.kind],
      color,
    });
  }

  // Segments always draw, even when their action endpoint is hidden: hiding
  // a node class removes the dots, not the plan structure anchored to them.
  const segments: SceneSegment[] = [];
  const legend: LegendEntry[] = [];
  let whatIfIndex = 0;
  for (const ov of overlays) {
    const index = ov.committed ? -1 : whatIfIndex++;
    legend.push({
      label: ov.label,
      color: ov.committed ? SEGMENT_COLORS.consumed : whatIfColor(index, "consumed"),
      committed: ov.committed,
    });
    if (view.trajectory) {
      segments.push(
        ...trajectorySegments(ov, index, view.trajectory.members, position),
      );
      continue;
    }
    for (const seg of ov.overlay.segments) {
      const a = position.get(seg.from);
      const b = position.get(seg.to);
      if (!a || !b) continue; // endpoint not embedded: listed unplaced server-side
      segments.push({
        x1: a[0],
        y1: a[1],
        x2: b[0],
        y2: b[1],
        color: overlayColor(ov, index, seg.kind),
        width: ov.committed ? 1.5 : 1.25,
        overlayIndex: index,
        kind: seg.kind,
      });
    }
  }
  return { nodes, segments, legend };
}

/** World-space bounding box of an embedding (y already flipped). */
export function worldBounds(embedding: EmbeddingPayload): {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
} {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const node of embedding.nodes) {
    const x = node.xy[0] ?? 0;
    const y = -(node.xy[1] ?? 0);
    minX = Math.min(minX, x);
    minY = Math.min(minY, y);
    maxX = Math.max(maxX, x);
    maxY = Math.max(maxY, y);
  }
  if (!Number.isFinite(minX)) {
    return { minX: 0, minY: 0, maxX: 1, maxY: 1 };
  }
  return { minX, minY, maxX, maxY };
}
