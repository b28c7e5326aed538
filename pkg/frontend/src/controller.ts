/** Mixed-initiative session controller: the glue between user gestures and
 * the server, free of DOM so the loop is testable.
 *
 * Planning state lives on the server; this class only mirrors the latest
 * responses. Communication is asynchronous with at most one in-flight plan
 * request per session, and responses that started before the latest restart
 * are discarded by epoch.
 */

import type { OverlayView } from "./scene.js";
import type {
  ActionInfoPayload,
  NodeKind,
  PlanResponse,
  PlanRequest,
  RestartResponse,
  SessionState,
} from "./types.js";

export interface PlannerApi {
  plan(id: string, req: PlanRequest): Promise<PlanResponse>;
  restart(id: string): Promise<RestartResponse>;
}

export type ClickOutcome =
  | "planned" // plan received and overlay applied
  | "empty" // goal already satisfied: toast, no overlay
  | "ignored-action" // only fluents are clickable goals
  | "busy" // a plan request is already in flight
  | "stale" // response arrived after a restart; discarded
  | "error"; // server refused; reason surfaced via notice

export interface Notice {
  kind: "info" | "error";
  text: string;
}

/** How many uncommitted what-if overlays stay visible at once. */
export const WHAT_IF_LIMIT = 4;

export class SessionController {
  currentState: Set<string>;
  goal: string[];
  overlays: OverlayView[] = [];
  plansCommitted: number;

  private inFlight = false;
  private epoch = 0;
  private readonly notify: (n: Notice) => void;

  constructor(
    private readonly api: PlannerApi,
    readonly sessionId: string,
    state: SessionState,
    onNotice?: (n: Notice) => void,
  ) {
    this.currentState = new Set(state.current_state);
    this.goal = [...state.goal];
    this.plansCommitted = state.history.length;
    this.notify = onNotice ?? (() => {});
  }

  /** A click on a node. Fluents become plan goals; actions are inert. */
  clickNode(id: string, kind: NodeKind, commit: boolean): Promise<ClickOutcome> {
    if (kind !== "fluent") return Promise.resolve("ignored-action");
    return this.requestPlan(id, commit);
  }

  /** What-if preview: plan without committing, keep the overlay alongside
   * earlier previews so alternatives can be compared in distinct hues. */
  whatIf(id: string, kind: NodeKind): Promise<ClickOutcome> {
    return this.clickNode(id, kind, false);
  }

  private async requestPlan(goal: string, commit: boolean): Promise<ClickOutcome> {
    if (this.inFlight) return "busy";
    this.inFlight = true;
    const epoch = this.epoch;
    try {
      const resp = await this.api.plan(this.sessionId, { goal, commit });
      if (epoch !== this.epoch) return "stale";
      return this.applyPlan(goal, resp);
    } catch (err) {
      if (epoch === this.epoch) {
        this.notify({ kind: "error", text: describeError(err) });
      }
      return "error";
    } finally {
      this.inFlight = false;
    }
  }

  private applyPlan(goal: string, resp: PlanResponse): ClickOutcome {
    if (resp.plan.steps.length === 0) {
      this.notify({ kind: "info", text: `goal already satisfied: ${goal}` });
      if (resp.committed) this.currentState = new Set(resp.current_state);
      return "empty";
    }
    if (resp.committed) {
      // The session advanced: previews against the old state are obsolete.
      this.currentState = new Set(resp.current_state);
      this.plansCommitted += 1;
      this.overlays = [
        {
          overlay: resp.overlay,
          committed: true,
          label: `plan ${this.plansCommitted}: ${goal} (${resp.plan.cost} steps)`,
        },
      ];
    } else {
      this.overlays.push({
        overlay: resp.overlay,
        committed: false,
        label: `what-if: ${goal} (${resp.plan.cost} steps)`,
      });
      const uncommitted = this.overlays.filter((o) => !o.committed);
      if (uncommitted.length > WHAT_IF_LIMIT) {
        const drop = uncommitted[0];
        this.overlays = this.overlays.filter((o) => o !== drop);
      }
    }
    return "planned";
  }

  /** Back to the initial state: clears overlays, refreshes node classes, and
   * invalidates any in-flight plan response. */
  async restart(): Promise<void> {
    this.epoch += 1;
    const resp = await this.api.restart(this.sessionId);
    this.currentState = new Set(resp.current_state);
    this.overlays = [];
    this.plansCommitted = 0;
    this.notify({ kind: "info", text: "session restarted" });
  }
}

function describeError(err: unknown): string {
  if (err && typeof err === "object") {
    const payload = (err as { payload?: { type?: string; message?: string } }).payload;
    if (payload?.message) {
      return payload.type ? `${payload.type}: ${payload.message}` : payload.message;
    }
    if (err instanceof Error) return err.message;
  }
  return String(err);
}

/** Top-left info panel lines for a hovered node. */
export function hoverInfo(
  id: string,
  kind: NodeKind,
  degree: number,
  action?: ActionInfoPayload,
): string[] {
  const lines = [id, `kind: ${kind}`, `degree: ${degree}`];
  if (kind === "action" && action) {
    lines.push(
      `pre: ${action.pre.join(", ") || "—"}`,
      `add: ${action.add.join(", ") || "—"}`,
      `del: ${action.del.join(", ") || "—"}`,
    );
  }
  return lines;
}
