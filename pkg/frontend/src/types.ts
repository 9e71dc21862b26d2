/** Wire shapes, field for field as the service emits them.
 *
 * Every exact rational (rank values, link weights, thresholds) is a string
 * like "1/2"; the client never parses them into floats, only displays and
 * compares them verbatim.
 */

export type ModeName = "ext" | "int";
export type ScopeName = "global" | "local";

export interface Catalog {
  contexts: string[];
  lattices: string[];
}

export interface ConceptPayload {
  index: number;
  extent: string[];
  intent: string[];
  upper: number[];
  lower: number[];
  views: string[];
  attributes: string[];
  objects: string[];
}

export interface ConceptsListing {
  lattice: string;
  count: number;
  concepts: ConceptPayload[];
  /** Stored diagram coordinates, keyed by concept index as a string. */
  layout?: Record<string, [number, number]>;
}

export interface RankLabel {
  /** Concept index in the lattice the ranking was computed over. For query
   * responses that lattice is a temporary goal-extended one, so the index
   * must not be joined against the concepts listing; use names/text. */
  concept: number;
  names: string[];
  text: string;
}

export interface RankGroup {
  rank: string;
  labels: RankLabel[];
}

export interface RankingPayload {
  measure: string;
  display: "direct" | "reverse";
  state_extent: string[];
  state_intent: string[];
  groups: RankGroup[];
  text: string;
}

export interface NamesPayload {
  views: string[];
  attributes: string[];
  objects: string[];
}

export interface SessionPayload {
  session: string;
  mode: ModeName;
  scope: ScopeName;
  state: number;
  state_extent: string[];
  state_intent: string[];
  browsed_global: boolean;
  labels: NamesPayload;
  lattice?: string;
  seed?: number;
  global_state?: number;
}

export interface SessionWithRanking extends SessionPayload {
  ranking: RankingPayload;
}

export interface QueryResponse {
  lattice: string;
  kind: "intensional" | "extensional";
  elements: string[];
  ranking: RankingPayload;
}

export interface CrispLinkRow {
  source: number;
  target: number;
  weight: string;
}

export interface CrispResponse {
  lattice: string;
  threshold: string;
  links: CrispLinkRow[];
}
