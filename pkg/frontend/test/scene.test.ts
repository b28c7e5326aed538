import { describe, expect, it } from "vitest";

import {
  NODE_COLORS,
  SEGMENT_COLORS,
  buildScene,
  whatIfColor,
  whatIfHue,
  worldBounds,
  type OverlayView,
} from "../src/scene.js";
import type { EmbeddingPayload, OverlayPayload } from "../src/types.js";
import { initialView, zoomAtCursor, type ViewState } from "../src/viewstate.js";

/** A small recorded session: what the server would hand the client. */
const EMBEDDING: EmbeddingPayload = {
  schema_version: 1,
  seed: 7,
  iteration: 120,
  dimension: 2,
  nodes: [
    { id: "at_box_depot", kind: "fluent", xy: [10, 80] },
    { id: "at_box_port", kind: "fluent", xy: [90, 75] },
    { id: "at_rig_depot", kind: "fluent", xy: [15, 20] },
    { id: "road_depot_port", kind: "fluent", xy: [50, 95] },
    { id: "move_rig_depot_port", kind: "action", xy: [45, 40] },
    { id: "pick_box_rig_depot", kind: "action", xy: [30, 60] },
  ],
};

const COMMITTED: OverlayPayload = {
  schema_version: 1,
  segments: [
    { from: "at_box_depot", to: "pick_box_rig_depot", kind: "consumed", step: 0 },
    { from: "pick_box_rig_depot", to: "at_box_port", kind: "produced", step: 0 },
    { from: "at_rig_depot", to: "move_rig_depot_port", kind: "consumed", step: 1 },
  ],
  node_classes: {},
  unplaced: [],
};

const WHAT_IF_A: OverlayPayload = {
  schema_version: 1,
  segments: [
    { from: "at_rig_depot", to: "move_rig_depot_port", kind: "consumed", step: 0 },
    { from: "move_rig_depot_port", to: "at_box_port", kind: "produced", step: 0 },
  ],
  node_classes: {},
  unplaced: [],
};

const WHAT_IF_B: OverlayPayload = {
  schema_version: 1,
  segments: [
    { from: "at_box_depot", to: "move_rig_depot_port", kind: "consumed", step: 0 },
  ],
  node_classes: {},
  unplaced: [],
};

const STATE = ["at_box_depot", "at_rig_depot", "road_depot_port"];
const STATICS = ["road_depot_port"];

function views(): OverlayView[] {
  return [
    { overlay: COMMITTED, committed: true, label: "plan 1" },
    { overlay: WHAT_IF_A, committed: false, label: "what-if A" },
    { overlay: WHAT_IF_B, committed: false, label: "what-if B" },
  ];
}

describe("buildScene determinism", () => {
  it("replaying a recorded session yields identical scene graphs", () => {
    // A recorded interaction: initial view, then two zooms and a hover.
    const recorded: ViewState[] = [];
    let v = initialView();
    recorded.push(v);
    v = zoomAtCursor(v, 2, 300, 200);
    recorded.push(v);
    v = zoomAtCursor(v, -1, 640, 450);
    recorded.push({ ...v, hovered: "at_box_depot" });

    const replay = () =>
      recorded.map((view) =>
        JSON.stringify(buildScene(EMBEDDING, STATE, views(), STATICS, view)),
      );
    expect(replay()).toEqual(replay());
  });
});

describe("node painting", () => {
  it("actions green, current-state fluents red, other fluents blue", () => {
    const scene = buildScene(EMBEDDING, STATE, [], STATICS, initialView());
    const byId = new Map(scene.nodes.map((n) => [n.id, n]));
    expect(byId.get("move_rig_depot_port")?.color).toBe(NODE_COLORS.action);
    expect(byId.get("at_box_depot")?.color).toBe(NODE_COLORS.current);
    expect(byId.get("at_box_port")?.color).toBe(NODE_COLORS.other);
  });

  it("flips y so larger embedding y draws higher on screen", () => {
    const scene = buildScene(EMBEDDING, STATE, [], STATICS, initialView());
    const byId = new Map(scene.nodes.map((n) => [n.id, n]));
    const high = byId.get("at_box_depot")!; // embedding y=80
    const low = byId.get("at_rig_depot")!; // embedding y=20
    expect(high.y).toBeLessThan(low.y);
  });

  it("hiding actions removes their dots but keeps overlay segments", () => {
    const view = { ...initialView(), showActions: false };
    const scene = buildScene(EMBEDDING, STATE, views(), STATICS, view);
    expect(scene.nodes.some((n) => n.kind === "action")).toBe(false);
    const withActions = buildScene(EMBEDDING, STATE, views(), STATICS, initialView());
    expect(scene.segments).toEqual(withActions.segments);
  });

  it("hiding statics removes exactly the static fluents", () => {
    const view = { ...initialView(), showStatic: false };
    const scene = buildScene(EMBEDDING, STATE, [], STATICS, view);
    expect(scene.nodes.some((n) => n.id === "road_depot_port")).toBe(false);
    expect(scene.nodes.filter((n) => n.kind === "fluent")).toHaveLength(3);
  });
});

describe("overlays", () => {
  it("fresh session renders zero segments", () => {
    const scene = buildScene(EMBEDDING, STATE, [], STATICS, initialView());
    expect(scene.segments).toHaveLength(0);
  });

  it("committed overlays draw red consumed / black produced", () => {
    const scene = buildScene(
      EMBEDDING,
      STATE,
      [{ overlay: COMMITTED, committed: true, label: "plan 1" }],
      STATICS,
      initialView(),
    );
    const colors = scene.segments.map((s) => s.color);
    expect(colors).toEqual([
      SEGMENT_COLORS.consumed,
      SEGMENT_COLORS.produced,
      SEGMENT_COLORS.consumed,
    ]);
  });

  it("two uncommitted overlays use distinct hues, both differing from committed red", () => {
    const scene = buildScene(EMBEDDING, STATE, views(), STATICS, initialView());
    const a = new Set(
      scene.segments.filter((s) => s.overlayIndex === 0).map((s) => s.color),
    );
    const b = new Set(
      scene.segments.filter((s) => s.overlayIndex === 1).map((s) => s.color),
    );
    expect(a.size).toBeGreaterThan(0);
    expect(b.size).toBeGreaterThan(0);
    for (const color of a) expect(b.has(color)).toBe(false);
    expect(Math.abs(whatIfHue(0) - whatIfHue(1))).toBeGreaterThan(30);
    const committedColors = new Set(
      scene.segments.filter((s) => s.overlayIndex === -1).map((s) => s.color),
    );
    expect(committedColors).toEqual(
      new Set([SEGMENT_COLORS.consumed, SEGMENT_COLORS.produced]),
    );
    for (const color of [...a, ...b]) {
      expect(committedColors.has(color)).toBe(false);
    }
  });

  it("legend lists one entry per overlay with its color", () => {
    const scene = buildScene(EMBEDDING, STATE, views(), STATICS, initialView());
    expect(scene.legend.map((e) => e.label)).toEqual([
      "plan 1",
      "what-if A",
      "what-if B",
    ]);
    expect(scene.legend[1]!.color).toBe(whatIfColor(0, "consumed"));
    expect(scene.legend[2]!.color).toBe(whatIfColor(1, "consumed"));
  });

  it("skips segments whose endpoints have no coordinate", () => {
    const overlay: OverlayPayload = {
      schema_version: 1,
      segments: [
        { from: "ghost_fluent", to: "move_rig_depot_port", kind: "consumed", step: 0 },
        { from: "at_box_depot", to: "pick_box_rig_depot", kind: "consumed", step: 0 },
      ],
      node_classes: {},
      unplaced: ["ghost_fluent"],
    };
    const scene = buildScene(
      EMBEDDING,
      STATE,
      [{ overlay, committed: true, label: "p" }],
      STATICS,
      initialView(),
    );
    expect(scene.segments).toHaveLength(1);
  });

  it("trajectory mode draws only the family path, in first-touch order", () => {
    const view = {
      ...initialView(),
      trajectory: { members: ["at_box_depot", "at_box_port"] },
    };
    const scene = buildScene(
      EMBEDDING,
      STATE,
      [{ overlay: COMMITTED, committed: true, label: "plan 1" }],
      STATICS,
      view,
    );
    expect(scene.segments).toHaveLength(1);
    const seg = scene.segments[0]!;
    expect(seg.kind).toBe("trajectory");
    // at_box_depot (step 0, first) -> at_box_port (step 0, later id order)
    const plain = buildScene(EMBEDDING, STATE, [], STATICS, initialView());
    const byId = new Map(plain.nodes.map((n) => [n.id, n]));
    expect(seg.x1).toBeCloseTo(byId.get("at_box_depot")!.x, 9);
    expect(seg.x2).toBeCloseTo(byId.get("at_box_port")!.x, 9);
  });
});

describe("worldBounds", () => {
  it("covers every node with the y flip applied", () => {
    const b = worldBounds(EMBEDDING);
    expect(b.minX).toBe(10);
    expect(b.maxX).toBe(90);
    expect(b.minY).toBe(-95);
    expect(b.maxY).toBe(-20);
  });
});
