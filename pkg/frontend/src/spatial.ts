/** Uniform-grid spatial index for hover hit-testing.
 *
 * Built once per embedding in world coordinates, so pan/zoom never
 * invalidates it; hit queries convert the cursor to world space and scale
 * the pick radius by 1/zoom. Dense mixology-class graphs put >10k nodes on
 * screen, so hover must not scan the whole node list per mouse move.
 */

export interface IndexedPoint {
  id: string;
  x: number;
  y: number;
}

export class SpatialIndex {
  private cells = new Map<string, IndexedPoint[]>();
  private readonly cellSize: number;
  // Bounding box of occupied cells; query loops clamp to it so a large pick
  // radius (or a degenerate cell size) can never scan more cells than exist.
  private minCX = Infinity;
  private maxCX = -Infinity;
  private minCY = Infinity;
  private maxCY = -Infinity;

  constructor(points: Iterable<IndexedPoint>, cellSize?: number) {
    const all = [...points];
    if (cellSize === undefined) {
      // Aim for O(1) points per cell on a roughly uniform layout.
      let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
      for (const p of all) {
        minX = Math.min(minX, p.x);
        minY = Math.min(minY, p.y);
        maxX = Math.max(maxX, p.x);
        maxY = Math.max(maxY, p.y);
      }
      const span = Math.max(maxX - minX, maxY - minY, 1);
      cellSize = span / Math.max(1, Math.ceil(Math.sqrt(all.length)));
    }
    this.cellSize = Math.max(cellSize, 1e-9);
    for (const p of all) {
      const cx = Math.floor(p.x / this.cellSize);
      const cy = Math.floor(p.y / this.cellSize);
      this.minCX = Math.min(this.minCX, cx);
      this.maxCX = Math.max(this.maxCX, cx);
      this.minCY = Math.min(this.minCY, cy);
      this.maxCY = Math.max(this.maxCY, cy);
      const key = `${cx},${cy}`;
      const bucket = this.cells.get(key);
      if (bucket) bucket.push(p);
      else this.cells.set(key, [p]);
    }
  }

  /** Closest point within `radius` of (x, y), or null. Ties break toward the
   * point encountered first in insertion order (stable for equal inputs). */
  nearest(x: number, y: number, radius: number): IndexedPoint | null {
    const r = Math.max(radius, 0);
    const loX = Math.max(Math.floor((x - r) / this.cellSize), this.minCX);
    const hiX = Math.min(Math.floor((x + r) / this.cellSize), this.maxCX);
    const loY = Math.max(Math.floor((y - r) / this.cellSize), this.minCY);
    const hiY = Math.min(Math.floor((y + r) / this.cellSize), this.maxCY);
    let best: IndexedPoint | null = null;
    let bestD2 = r * r;
    for (let cx = loX; cx <= hiX; cx++) {
      for (let cy = loY; cy <= hiY; cy++) {
        const bucket = this.cells.get(`${cx},${cy}`);
        if (!bucket) continue;
        for (const p of bucket) {
          const dx = p.x - x;
          const dy = p.y - y;
          const d2 = dx * dx + dy * dy;
          if (d2 < bestD2 || (d2 === bestD2 && best === null)) {
            best = p;
            bestD2 = d2;
          }
        }
      }
    }
    return best;
  }
}
