import type { RankGroup, RankingPayload } from "./types.js";

/** Render a ranking panel.
 *
 * The panel never regroups, reorders, or recomputes anything: one row per
 * entry of payload.groups, in payload order, showing the rank string
 * verbatim. What the service groups together stays together.
 */
export interface RankingOptions {
  /** Heading text, e.g. "similar concepts". */
  title?: string;
  /** Intent serials pinned above the rows (the seed, in a local panel). */
  pinned?: string[];
  /** Click handler for a label; receives the label's concept index.
   * Labels render as buttons only when this is given. */
  onPick?: (concept: number) => void;
}

export function renderRanking(
  doc: Document,
  payload: RankingPayload,
  opts: RankingOptions = {},
): HTMLElement {
  const root = doc.createElement("section");
  root.className = "ranking";
  root.dataset.measure = payload.measure;
  root.dataset.display = payload.display;

  if (opts.title) {
    const h = doc.createElement("h2");
    h.textContent = opts.title;
    root.appendChild(h);
  }
  if (opts.pinned && opts.pinned.length > 0) {
    const pin = doc.createElement("p");
    pin.className = "pinned";
    pin.textContent = opts.pinned.join("  ");
    root.appendChild(pin);
  }

  const list = doc.createElement("ol");
  list.className = "groups";
  for (const group of payload.groups) {
    list.appendChild(renderGroup(doc, group, opts));
  }
  root.appendChild(list);
  return root;
}

function renderGroup(
  doc: Document,
  group: RankGroup,
  opts: RankingOptions,
): HTMLElement {
  const row = doc.createElement("li");
  row.className = "group";
  row.dataset.rank = group.rank;

  const badge = doc.createElement("span");
  badge.className = "rank";
  badge.textContent = group.rank;
  row.appendChild(badge);

  const labels = doc.createElement("ul");
  labels.className = "labels";
  for (const label of group.labels) {
    const item = doc.createElement("li");
    item.className = "label";
    item.dataset.concept = String(label.concept);
    if (opts.onPick) {
      const btn = doc.createElement("button");
      btn.type = "button";
      btn.textContent = label.text;
      const pick = opts.onPick;
      btn.addEventListener("click", () => pick(label.concept));
      item.appendChild(btn);
    } else {
      item.textContent = label.text;
    }
    labels.appendChild(item);
  }
  row.appendChild(labels);
  return row;
}

/** Read a rendered panel back into {rank, labels} rows, for comparing the
 * DOM against the payload it came from. */
export function groupedText(
  root: HTMLElement,
): { rank: string; labels: string[] }[] {
  const rows: { rank: string; labels: string[] }[] = [];
  for (const li of root.querySelectorAll("li.group")) {
    const rank = (li as HTMLElement).dataset.rank ?? "";
    const labels: string[] = [];
    for (const item of li.querySelectorAll("li.label")) {
      labels.push(item.textContent ?? "");
    }
    rows.push({ rank, labels });
  }
  return rows;
}
