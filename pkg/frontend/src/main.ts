/** Page bootstrap: session form, canvas wiring, and the event loop glue.
 * All planning state flows through SessionController; all drawing flows
 * through buildScene + drawScene. */

import { ApiClient } from "./api.js";
import { SessionController, hoverInfo, type Notice } from "./controller.js";
import { buildScene, worldBounds } from "./scene.js";
import { SpatialIndex } from "./spatial.js";
import { drawInfoPanel, drawLegend, drawScene } from "./render.js";
import type {
  DomainPayload,
  EmbeddingPayload,
  GraphPayload,
  NodeKind,
} from "./types.js";
import {
  fitView,
  initialView,
  panBy,
  screenToWorld,
  zoomAtCursor,
  type ViewState,
} from "./viewstate.js";

const api = new ApiClient("");

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

interface App {
  controller: SessionController;
  embedding: EmbeddingPayload;
  domain: DomainPayload;
  degrees: Map<string, number>;
  kinds: Map<string, NodeKind>;
  index: SpatialIndex;
  view: ViewState;
}

let app: App | null = null;

function redraw(): void {
  if (!app) return;
  const canvas = el<HTMLCanvasElement>("map");
  const scene = buildScene(
    app.embedding,
    app.controller.currentState,
    app.controller.overlays,
    app.domain.static_fluents,
    app.view,
  );
  const ctx = canvas.getContext("2d");
  if (ctx) drawScene(ctx, scene);
  drawLegend(el("legend"), scene);
  el("state-line").textContent =
    `${app.controller.currentState.size} fluents true · ` +
    `${app.controller.plansCommitted} plans committed · goal: ${app.controller.goal.join(", ")}`;
}

function toast(notice: Notice): void {
  const box = el("toast");
  box.textContent = notice.text;
  box.className = `toast ${notice.kind}`;
  box.hidden = false;
  setTimeout(() => (box.hidden = true), 4000);
}

function rebuildIndex(embedding: EmbeddingPayload): SpatialIndex {
  return new SpatialIndex(
    embedding.nodes.map((n) => ({ id: n.id, x: n.xy[0] ?? 0, y: -(n.xy[1] ?? 0) })),
  );
}

function hitTest(sx: number, sy: number): string | null {
  if (!app) return null;
  const [wx, wy] = screenToWorld(app.view, sx, sy);
  const hit = app.index.nearest(wx, wy, 8 / app.view.zoom);
  return hit ? hit.id : null;
}

async function createSession(): Promise<void> {
  const domainText = el<HTMLTextAreaElement>("domain-text").value;
  const problemText = el<HTMLTextAreaElement>("problem-text").value;
  const seed = Number(el<HTMLInputElement>("seed").value) || 0;
  el("status-line").textContent = "grounding…";
  try {
    const created = await api.createSession({
      domain: domainText,
      problem: problemText,
      seed,
      wait: false,
    });
    const id = created.session_id;
    el("status-line").textContent =
      `session ${id}: ${created.node_count} nodes, ${created.edge_count} edges — embedding…`;

    const graph = await api.getGraph(id);
    const degrees = degreeMap(graph);
    const kinds = new Map(graph.nodes.map((n) => [n.id, n.kind] as const));

    // Animate layout frames as they stream, then settle on the final frame.
    const partial: { em: EmbeddingPayload | null } = { em: null };
    api.streamFrames(id, (frame) => {
      partial.em = frame;
      if (app && app.controller.sessionId === id) {
        app.embedding = frame;
        app.index = rebuildIndex(frame);
        redraw();
      }
      if (frame.final) {
        el("status-line").textContent = `session ${id}: layout final (iteration ${frame.iteration})`;
      }
    });

    const [state, snapshot, embedding] = await Promise.all([
      api.getState(id),
      api.getSnapshot(id),
      api.getEmbedding(id, true),
    ]);
    const controller = new SessionController(api, id, state, toast);
    const canvas = el<HTMLCanvasElement>("map");
    const view = fitView(
      initialView(),
      worldBounds(embedding),
      canvas.width,
      canvas.height,
    );
    app = {
      controller,
      embedding: partial.em ?? embedding,
      domain: snapshot.domain,
      degrees,
      kinds,
      index: rebuildIndex(partial.em ?? embedding),
      view,
    };
    el("status-line").textContent = `session ${id}: ready`;
    redraw();
  } catch (err) {
    el("status-line").textContent = "";
    toast({ kind: "error", text: String((err as Error).message ?? err) });
  }
}

function degreeMap(graph: GraphPayload): Map<string, number> {
  const degrees = new Map<string, number>(graph.nodes.map((n) => [n.id, 0]));
  for (const [i, j] of graph.edges) {
    const a = graph.nodes[i];
    const b = graph.nodes[j];
    if (a) degrees.set(a.id, (degrees.get(a.id) ?? 0) + 1);
    if (b) degrees.set(b.id, (degrees.get(b.id) ?? 0) + 1);
  }
  return degrees;
}

function wireEvents(): void {
  const canvas = el<HTMLCanvasElement>("map");

  canvas.addEventListener("wheel", (ev) => {
    if (!app) return;
    ev.preventDefault();
    const rect = canvas.getBoundingClientRect();
    const notches = -Math.sign(ev.deltaY);
    app.view = zoomAtCursor(
      app.view,
      notches,
      ev.clientX - rect.left,
      ev.clientY - rect.top,
    );
    redraw();
  });

  let dragging: { x: number; y: number } | null = null;
  let moved = false;
  canvas.addEventListener("mousedown", (ev) => {
    dragging = { x: ev.clientX, y: ev.clientY };
    moved = false;
  });
  window.addEventListener("mouseup", () => (dragging = null));
  canvas.addEventListener("mousemove", (ev) => {
    if (!app) return;
    const rect = canvas.getBoundingClientRect();
    if (dragging) {
      app.view = panBy(app.view, ev.clientX - dragging.x, ev.clientY - dragging.y);
      dragging = { x: ev.clientX, y: ev.clientY };
      moved = true;
      redraw();
      return;
    }
    const id = hitTest(ev.clientX - rect.left, ev.clientY - rect.top);
    if (id !== app.view.hovered) {
      app.view = { ...app.view, hovered: id };
      const kind = id ? (app.kinds.get(id) ?? "fluent") : "fluent";
      const action = id ? app.domain.actions.find((a) => a.id === id) : undefined;
      drawInfoPanel(
        el("info-panel"),
        id ? hoverInfo(id, kind, app.degrees.get(id) ?? 0, action) : [],
      );
    }
  });

  canvas.addEventListener("click", (ev) => {
    if (!app || moved || ev.detail > 1) return;
    const rect = canvas.getBoundingClientRect();
    const id = hitTest(ev.clientX - rect.left, ev.clientY - rect.top);
    if (!id) return;
    const kind = app.kinds.get(id) ?? "fluent";
    void app.controller
      .clickNode(id, kind, app.view.commitOnClick)
      .then(redraw);
  });

  canvas.addEventListener("dblclick", (ev) => {
    if (!app) return;
    const rect = canvas.getBoundingClientRect();
    const id = hitTest(ev.clientX - rect.left, ev.clientY - rect.top);
    if (!id) return;
    const kind = app.kinds.get(id) ?? "fluent";
    void app.controller.whatIf(id, kind).then(redraw);
  });

  el("restart").addEventListener("click", () => {
    if (!app) return;
    void app.controller.restart().then(redraw);
  });
  el<HTMLInputElement>("toggle-actions").addEventListener("change", (ev) => {
    if (!app) return;
    app.view = { ...app.view, showActions: (ev.target as HTMLInputElement).checked };
    redraw();
  });
  el<HTMLInputElement>("toggle-static").addEventListener("change", (ev) => {
    if (!app) return;
    app.view = { ...app.view, showStatic: (ev.target as HTMLInputElement).checked };
    redraw();
  });
  el<HTMLInputElement>("toggle-commit").addEventListener("change", (ev) => {
    if (!app) return;
    app.view = { ...app.view, commitOnClick: (ev.target as HTMLInputElement).checked };
  });
  el("create").addEventListener("click", () => void createSession());
}

wireEvents();
