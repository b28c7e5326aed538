/** Immediate-mode canvas renderer. Dumb by design: it iterates a Scene and
 * draws; every decision about what appears was already made in buildScene. */

import type { Scene } from "./scene.js";

export function drawScene(ctx: CanvasRenderingContext2D, scene: Scene): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#fafafa";
  ctx.fillRect(0, 0, width, height);

  ctx.lineCap = "round";
  for (const seg of scene.segments) {
    ctx.strokeStyle = seg.color;
    ctx.lineWidth = seg.width;
    ctx.beginPath();
    ctx.moveTo(seg.x1, seg.y1);
    ctx.lineTo(seg.x2, seg.y2);
    ctx.stroke();
  }

  for (const node of scene.nodes) {
    ctx.fillStyle = node.color;
    ctx.beginPath();
    ctx.arc(node.x, node.y, node.r, 0, Math.PI * 2);
    ctx.fill();
  }
}

export function drawLegend(el: HTMLElement, scene: Scene): void {
  el.replaceChildren();
  for (const entry of scene.legend) {
    const row = document.createElement("div");
    row.className = "legend-row";
    const swatch = document.createElement("span");
    swatch.className = "legend-swatch";
    swatch.style.background = entry.color;
    const label = document.createElement("span");
    label.textContent = entry.committed ? entry.label : `${entry.label} [preview]`;
    row.append(swatch, label);
    el.append(row);
  }
}

export function drawInfoPanel(el: HTMLElement, lines: string[]): void {
  el.replaceChildren();
  el.hidden = lines.length === 0;
  for (const line of lines) {
    const div = document.createElement("div");
    div.textContent = line;
    el.append(div);
  }
}
