import type { SessionPayload } from "./types.js";
import { ApiError } from "./api.js";

/** What the browsing protocol lets the user do right now.
 *
 * The service is the authority; these flags are derived from the latest
 * session payload so controls are disabled before a request is ever made.
 * When the service still answers 409 (say, after a race), the conflict is
 * recorded the same way: the control goes disabled with the reason attached,
 * it is never shown as a failure.
 */
export interface Affordances {
  /** The mode radio may be used. Only true before a session exists; the
   * mode is fixed at creation and never offered again. */
  modeOpen: boolean;
  /** Switching scope to local is allowed (requires a global transition
   * first). */
  localAllowed: boolean;
  /** Switching scope back to global is allowed. */
  globalAllowed: boolean;
  /** Concept transitions are allowed at all. */
  transitionsAllowed: boolean;
  /** Human-readable reasons for whatever is disabled, keyed by control. */
  reasons: Partial<Record<"mode" | "local" | "global", string>>;
}

export function affordances(s: SessionPayload | null): Affordances {
  if (s === null) {
    return {
      modeOpen: true,
      localAllowed: false,
      globalAllowed: false,
      transitionsAllowed: false,
      reasons: {
        local: "start a session first",
        global: "start a session first",
      },
    };
  }
  const reasons: Affordances["reasons"] = {
    mode: "the mode is fixed for the life of the session",
  };
  let localAllowed = true;
  if (s.scope === "local") {
    localAllowed = false;
    reasons.local = "already browsing locally";
  } else if (!s.browsed_global) {
    localAllowed = false;
    reasons.local = "browse somewhere globally before going local";
  }
  const globalAllowed = s.scope === "local";
  if (!globalAllowed) reasons.global = "already in global scope";
  return {
    modeOpen: false,
    localAllowed,
    globalAllowed,
    transitionsAllowed: true,
    reasons,
  };
}

/** A sticky record of server-side refusals, per control. */
export class ConflictLog {
  private readonly held = new Map<string, string>();

  /** Record err when it is a 409; rethrow anything else. Returns the
   * reason text so callers can show it next to the control. */
  absorb(control: string, err: unknown): string {
    if (err instanceof ApiError && err.conflict) {
      this.held.set(control, err.detail);
      return err.detail;
    }
    throw err;
  }

  reason(control: string): string | undefined {
    return this.held.get(control);
  }

  clear(control?: string): void {
    if (control === undefined) this.held.clear();
    else this.held.delete(control);
  }
}
