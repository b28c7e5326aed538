/** Camera and interaction state. Pure data + pure transforms; the view never
 * holds authoritative planning state — the server session does. */

export const ZOOM_MIN = 0.05;
export const ZOOM_MAX = 100;
/** Scale multiplier per wheel notch. */
export const ZOOM_STEP = 1.15;

export interface TrajectorySpec {
  /** Canonical ids of a mutually-exclusive fluent family, e.g. every
   * location fluent of one package. */
  members: string[];
}

export interface ViewState {
  /** Screen-space translation applied after scaling. */
  panX: number;
  panY: number;
  /** World-to-screen scale factor, in (0, ∞), clamped to [ZOOM_MIN, ZOOM_MAX]. */
  zoom: number;
  showActions: boolean;
  showStatic: boolean;
  /** Single click commits the plan when true; what-ifs always preview. */
  commitOnClick: boolean;
  trajectory: TrajectorySpec | null;
  hovered: string | null;
}

export function initialView(): ViewState {
  return {
    panX: 0,
    panY: 0,
    zoom: 1,
    showActions: true,
    showStatic: true,
    commitOnClick: true,
    trajectory: null,
    hovered: null,
  };
}

export function worldToScreen(v: ViewState, x: number, y: number): [number, number] {
  return [x * v.zoom + v.panX, y * v.zoom + v.panY];
}

export function screenToWorld(v: ViewState, sx: number, sy: number): [number, number] {
  return [(sx - v.panX) / v.zoom, (sy - v.panY) / v.zoom];
}

export function panBy(v: ViewState, dx: number, dy: number): ViewState {
  return { ...v, panX: v.panX + dx, panY: v.panY + dy };
}

function clampZoom(z: number): number {
  return Math.min(ZOOM_MAX, Math.max(ZOOM_MIN, z));
}

/** Multiplicative zoom keeping the world point under the cursor fixed.
 *
 * notches > 0 zooms in, < 0 out; each notch multiplies the scale by
 * ZOOM_STEP. After clamping to [ZOOM_MIN, ZOOM_MAX], the pan is solved so
 * that screen(world(cursor)) === cursor exactly:
 * pan' = cursor − (cursor − pan) · (zoom'/zoom).
 */
export function zoomAtCursor(
  v: ViewState,
  notches: number,
  cursorX: number,
  cursorY: number,
): ViewState {
  const zoom = clampZoom(v.zoom * Math.pow(ZOOM_STEP, notches));
  const ratio = zoom / v.zoom;
  return {
    ...v,
    zoom,
    panX: cursorX - (cursorX - v.panX) * ratio,
    panY: cursorY - (cursorY - v.panY) * ratio,
  };
}

/** Fit a world bounding box into a screen rectangle with a margin. */
export function fitView(
  v: ViewState,
  world: { minX: number; minY: number; maxX: number; maxY: number },
  screenW: number,
  screenH: number,
  margin = 24,
): ViewState {
  const spanX = Math.max(world.maxX - world.minX, 1e-9);
  const spanY = Math.max(world.maxY - world.minY, 1e-9);
  const zoom = clampZoom(
    Math.min((screenW - 2 * margin) / spanX, (screenH - 2 * margin) / spanY),
  );
  const panX = (screenW - spanX * zoom) / 2 - world.minX * zoom;
  const panY = (screenH - spanY * zoom) / 2 - world.minY * zoom;
  return { ...v, zoom, panX, panY };
}
