import type { ConceptsListing } from "./types.js";

/** Line diagram geometry.
 *
 * Stored coordinates win: when the listing carries a layout (hand-placed in
 * a lattice file), nodes go exactly where it says. Otherwise concepts are
 * layered by their depth below the top and spread evenly within a layer.
 */

export interface NodePos {
  index: number;
  x: number;
  y: number;
}

/** Depth of each concept below the top: longest cover path from index 1.
 *
 * Canonical indexing orders concepts by shrinking extent, so every upper
 * cover of k has an index below k and one ascending pass suffices.
 */
export function layerOf(listing: ConceptsListing): Map<number, number> {
  const depth = new Map<number, number>();
  for (const c of listing.concepts) {
    let d = 0;
    for (const up of c.upper) {
      const above = depth.get(up);
      if (above === undefined) {
        throw new Error(`cover ${up} of ${c.index} not seen yet`);
      }
      d = Math.max(d, above + 1);
    }
    depth.set(c.index, d);
  }
  return depth;
}

const COL_GAP = 90;
const ROW_GAP = 70;
const MARGIN = 40;

export function positions(listing: ConceptsListing): NodePos[] {
  if (listing.layout) {
    return Object.entries(listing.layout).map(([k, [x, y]]) => ({
      index: Number(k),
      x,
      y,
    }));
  }
  const depth = layerOf(listing);
  const layers = new Map<number, number[]>();
  for (const c of listing.concepts) {
    const d = depth.get(c.index) ?? 0;
    const row = layers.get(d);
    if (row) row.push(c.index);
    else layers.set(d, [c.index]);
  }
  const widest = Math.max(...[...layers.values()].map((row) => row.length));
  const out: NodePos[] = [];
  for (const [d, row] of layers) {
    const offset = ((widest - row.length) * COL_GAP) / 2;
    row.forEach((index, i) => {
      out.push({
        index,
        x: MARGIN + offset + i * COL_GAP,
        y: MARGIN + d * ROW_GAP,
      });
    });
  }
  return out.sort((a, b) => a.index - b.index);
}

export interface DiagramOptions {
  /** Concept index to highlight as the current state. */
  state?: number;
  /** Click handler; only concepts with a name get one. */
  onPick?: (concept: number) => void;
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderDiagram(
  doc: Document,
  listing: ConceptsListing,
  opts: DiagramOptions = {},
): SVGSVGElement {
  const pos = new Map(positions(listing).map((p) => [p.index, p]));
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "diagram");

  let maxX = 0;
  let maxY = 0;
  for (const p of pos.values()) {
    maxX = Math.max(maxX, p.x);
    maxY = Math.max(maxY, p.y);
  }
  svg.setAttribute("viewBox", `0 0 ${maxX + MARGIN} ${maxY + MARGIN}`);

  for (const c of listing.concepts) {
    const from = pos.get(c.index);
    if (!from) continue;
    for (const below of c.lower) {
      const to = pos.get(below);
      if (!to) continue;
      const line = doc.createElementNS(SVG_NS, "line");
      line.setAttribute("class", "cover");
      line.setAttribute("x1", String(from.x));
      line.setAttribute("y1", String(from.y));
      line.setAttribute("x2", String(to.x));
      line.setAttribute("y2", String(to.y));
      svg.appendChild(line);
    }
  }

  for (const c of listing.concepts) {
    const p = pos.get(c.index);
    if (!p) continue;
    const names = [...c.views, ...c.attributes, ...c.objects];
    const labeled = names.length > 0;
    const g = doc.createElementNS(SVG_NS, "g");
    g.setAttribute(
      "class",
      ["node", labeled ? "labeled" : "bare", c.index === opts.state ? "state" : ""]
        .filter(Boolean)
        .join(" "),
    );
    g.dataset.concept = String(c.index);

    const dot = doc.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(p.x));
    dot.setAttribute("cy", String(p.y));
    dot.setAttribute("r", c.index === opts.state ? "10" : "7");
    g.appendChild(dot);

    if (labeled) {
      const text = doc.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(p.x + 12));
      text.setAttribute("y", String(p.y + 4));
      text.textContent = names.join(", ");
      g.appendChild(text);
      if (opts.onPick) {
        const pick = opts.onPick;
        g.addEventListener("click", () => pick(c.index));
      }
    }
    svg.appendChild(g);
  }
  return svg;
}
