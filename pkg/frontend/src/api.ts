import type {
  Catalog,
  ConceptsListing,
  CrispResponse,
  ModeName,
  QueryResponse,
  ScopeName,
  SessionPayload,
  SessionWithRanking,
} from "./types.js";

/** A non-2xx answer from the service, with its status and detail text.
 *
 * 409 means "the protocol forbids that step right now" and is expected
 * during normal use; callers turn it into a disabled control, not an error
 * screen.
 */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
    this.name = "ApiError";
  }

  get conflict(): boolean {
    return this.status === 409;
  }
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  };
}

/** Thin fetch wrapper around the service. One method per endpoint, no
 * interpretation of the payloads beyond JSON decoding. */
export class Client {
  constructor(readonly base: string = "") {}

  private async go<T>(path: string, init?: RequestInit): Promise<T> {
    let res: Response;
    try {
      res = await fetch(this.base + path, init);
    } catch (e) {
      throw new ApiError(0, `service unreachable: ${String(e)}`);
    }
    if (!res.ok) {
      let detail = res.statusText || `HTTP ${res.status}`;
      try {
        const body: unknown = await res.json();
        if (
          typeof body === "object" &&
          body !== null &&
          "detail" in body &&
          typeof (body as { detail: unknown }).detail === "string"
        ) {
          detail = (body as { detail: string }).detail;
        }
      } catch {
        // non-JSON error body, keep the status text
      }
      throw new ApiError(res.status, detail);
    }
    return (await res.json()) as T;
  }

  catalog(): Promise<Catalog> {
    return this.go("/contexts");
  }

  concepts(lattice: string): Promise<ConceptsListing> {
    return this.go(`/lattices/${encodeURIComponent(lattice)}/concepts`);
  }

  createSession(lattice: string, mode: ModeName): Promise<SessionPayload> {
    return this.go("/sessions", post({ lattice, mode }));
  }

  ranking(session: string): Promise<SessionWithRanking> {
    return this.go(`/sessions/${encodeURIComponent(session)}/ranking`);
  }

  transition(session: string, target: number): Promise<SessionPayload> {
    return this.go(
      `/sessions/${encodeURIComponent(session)}/transition`,
      post({ target }),
    );
  }

  setScope(session: string, scope: ScopeName): Promise<SessionPayload> {
    return this.go(
      `/sessions/${encodeURIComponent(session)}/scope`,
      post({ scope }),
    );
  }

  query(
    lattice: string,
    kind: "intensional" | "extensional",
    elements: string[],
    threshold?: string,
  ): Promise<QueryResponse> {
    const body: Record<string, unknown> = { kind, elements };
    if (threshold !== undefined) body.threshold = threshold;
    return this.go(`/lattices/${encodeURIComponent(lattice)}/query`, post(body));
  }

  crisp(lattice: string, threshold: string): Promise<CrispResponse> {
    const q = encodeURIComponent(threshold);
    return this.go(
      `/lattices/${encodeURIComponent(lattice)}/crisp?threshold=${q}`,
    );
  }
}
