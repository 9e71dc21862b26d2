import { ApiError, Client } from "./api.js";
import { affordances, ConflictLog } from "./protocol.js";
import { renderDiagram } from "./diagram.js";
import { renderRanking } from "./ranking.js";
import type {
  ConceptsListing,
  ModeName,
  SessionPayload,
  SessionWithRanking,
} from "./types.js";

/** Page controller. All lattice math lives on the other side of the HTTP
 * boundary; this file only moves payloads into the DOM and user gestures
 * back out. Refreshing the page keeps the session: the id rides in the URL
 * hash and the next load picks it back up from the service.
 */
export class App {
  private lattice: string | null = null;
  private listing: ConceptsListing | null = null;
  private session: SessionPayload | null = null;
  private readonly conflicts = new ConflictLog();

  constructor(
    private readonly doc: Document,
    private readonly client: Client,
  ) {}

  async boot(): Promise<void> {
    const cat = await this.client.catalog();
    const select = this.el<HTMLSelectElement>("lattice-select");
    select.innerHTML = "";
    for (const name of cat.lattices) {
      const opt = this.doc.createElement("option");
      opt.value = name;
      opt.textContent = name;
      select.appendChild(opt);
    }

    this.el<HTMLButtonElement>("create").addEventListener("click", () => {
      void this.createSession();
    });
    this.el<HTMLButtonElement>("scope-local").addEventListener("click", () => {
      void this.switchScope("local");
    });
    this.el<HTMLButtonElement>("scope-global").addEventListener("click", () => {
      void this.switchScope("global");
    });
    this.el<HTMLButtonElement>("query-run").addEventListener("click", () => {
      void this.runQuery();
    });

    const sid = new URLSearchParams(
      this.doc.location?.hash.replace(/^#/, "") ?? "",
    ).get("s");
    if (sid) await this.restore(sid);
    this.paintControls();
  }

  /** Pick the session back up after a reload; a dead id is not an error,
   * the page just starts fresh. */
  private async restore(sid: string): Promise<void> {
    try {
      const got = await this.client.ranking(sid);
      this.session = got;
      this.lattice = this.latticeOfHash() ?? this.session.lattice ?? null;
      if (this.lattice) {
        this.el<HTMLSelectElement>("lattice-select").value = this.lattice;
        this.listing = await this.client.concepts(this.lattice);
      }
      this.paintSession(got);
    } catch (e) {
      if (e instanceof ApiError && e.status === 404) {
        this.setHash(null);
        return;
      }
      throw e;
    }
  }

  private async createSession(): Promise<void> {
    const name = this.el<HTMLSelectElement>("lattice-select").value;
    const mode = this.el<HTMLInputElement>("mode-int").checked ? "int" : "ext";
    await this.guard("create", async () => {
      this.session = await this.client.createSession(name, mode as ModeName);
      this.lattice = name;
      this.listing = await this.client.concepts(name);
      this.conflicts.clear();
      this.setHash(this.session.session, name);
      await this.refreshPanel();
    });
  }

  private async switchScope(scope: "global" | "local"): Promise<void> {
    const s = this.session;
    if (!s) return;
    await this.guard(`scope-${scope}`, async () => {
      this.session = await this.client.setScope(s.session, scope);
      this.conflicts.clear(`scope-${scope}`);
      await this.refreshPanel();
    });
  }

  private async transition(target: number): Promise<void> {
    const s = this.session;
    if (!s) return;
    await this.guard("transition", async () => {
      this.session = await this.client.transition(s.session, target);
      await this.refreshPanel();
    });
  }

  private async refreshPanel(): Promise<void> {
    const s = this.session;
    if (!s) return;
    const got = await this.client.ranking(s.session);
    this.session = got;
    this.paintSession(got);
  }

  private async runQuery(): Promise<void> {
    if (!this.lattice) return;
    const raw = this.el<HTMLInputElement>("query-elements").value;
    const elements = raw
      .split(",")
      .map((t) => t.trim())
      .filter(Boolean);
    const kind = this.el<HTMLSelectElement>("query-kind").value as
      | "intensional"
      | "extensional";
    const threshold =
      this.el<HTMLInputElement>("query-threshold").value.trim() || undefined;
    await this.guard("query", async () => {
      const got = await this.client.query(
        this.lattice as string,
        kind,
        elements,
        threshold,
      );
      const host = this.el<HTMLElement>("query-panel");
      host.innerHTML = "";
      // No onPick here: these labels index a throwaway goal-extended
      // lattice, so they are display-only.
      host.appendChild(
        renderRanking(this.doc, got.ranking, { title: `matches (${kind})` }),
      );
    });
  }

  /** Run fn; a 409 disables the control with the server's reason, anything
   * else lands in the status line. */
  private async guard(control: string, fn: () => Promise<void>): Promise<void> {
    try {
      await fn();
      this.status("");
    } catch (e) {
      if (e instanceof ApiError && e.conflict) {
        this.conflicts.absorb(control, e);
      } else if (e instanceof ApiError) {
        this.status(e.detail);
      } else {
        throw e;
      }
    }
    this.paintControls();
  }

  private paintSession(got: SessionWithRanking): void {
    const meta = [
      got.session,
      this.lattice ?? "",
      `${got.mode} mode`,
      `${got.scope} scope`,
      `at: ${this.stateNames(got)}`,
    ]
      .filter(Boolean)
      .join(" · ");
    this.el<HTMLElement>("session-meta").textContent = meta;

    const host = this.el<HTMLElement>("panel");
    host.innerHTML = "";
    const local = got.scope === "local";
    host.appendChild(
      renderRanking(this.doc, got.ranking, {
        title: local ? "what each neighbor adds" : "similar concepts",
        pinned: local ? this.seedIntent(got) : undefined,
        onPick: (k) => void this.transition(k),
      }),
    );

    const diagramHost = this.el<HTMLElement>("diagram");
    diagramHost.innerHTML = "";
    if (this.listing) {
      const state = local ? got.global_state : got.state;
      diagramHost.appendChild(
        renderDiagram(this.doc, this.listing, {
          state,
          onPick: local ? undefined : (k) => void this.transition(k),
        }),
      );
    }
    this.paintControls();
  }

  /** The seed's own intent, pinned at the top of a local panel. The seed
   * field is a global index, so it joins safely against the listing. */
  private seedIntent(s: SessionPayload): string[] {
    if (s.seed === undefined || !this.listing) return [];
    const hit = this.listing.concepts.find((c) => c.index === s.seed);
    return hit ? hit.intent : [];
  }

  private stateNames(s: SessionPayload): string {
    const names = [
      ...s.labels.views,
      ...(s.mode === "ext" ? s.labels.attributes : s.labels.objects),
    ];
    return names.length ? names.join(", ") : `concept ${s.state}`;
  }

  private paintControls(): void {
    const can = affordances(this.session);
    for (const id of ["mode-ext", "mode-int"]) {
      this.el<HTMLInputElement>(id).disabled = !can.modeOpen;
    }
    this.setControl("scope-local", can.localAllowed, can.reasons.local, "scope-local");
    this.setControl("scope-global", can.globalAllowed, can.reasons.global, "scope-global");
    this.el<HTMLButtonElement>("create").disabled = false;
  }

  private setControl(
    id: string,
    allowed: boolean,
    reason: string | undefined,
    conflictKey: string,
  ): void {
    const btn = this.el<HTMLButtonElement>(id);
    const held = this.conflicts.reason(conflictKey);
    btn.disabled = !allowed || held !== undefined;
    btn.title = held ?? (allowed ? "" : reason ?? "");
  }

  private status(text: string): void {
    this.el<HTMLElement>("status").textContent = text;
  }

  private setHash(sid: string | null, lattice?: string): void {
    if (!this.doc.location) return;
    this.doc.location.hash = sid
      ? `s=${encodeURIComponent(sid)}&lattice=${encodeURIComponent(lattice ?? "")}`
      : "";
  }

  private latticeOfHash(): string | null {
    return new URLSearchParams(
      this.doc.location?.hash.replace(/^#/, "") ?? "",
    ).get("lattice");
  }

  private el<T extends HTMLElement>(id: string): T {
    const node = this.doc.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as T;
  }
}

export function apiBase(doc: Document): string {
  const param = new URLSearchParams(doc.location?.search ?? "").get("api");
  return param ?? "";
}
