/** Argument-graph rendering as an SVG string.
 *
 * Fixed three-ring layout: profile arguments inside, preference arguments in
 * the middle, valuation arguments outside.  Attacks are solid arrows;
 * meta-attacks are dashed red arrows landing on a small square anchor at the
 * midpoint of the attacked edge.  Every node carries a data-node-id
 * attribute so the page can focus referents that the dialogue cites.
 */

import type { FrameworkDoc, NodeKind } from "./types.js";

export type Point = { x: number; y: number };

const KIND_COLORS: Record<NodeKind, string> = {
  game: "#7fb3d5",
  preference: "#f7dc6f",
  valuation: "#7dcea0",
};

const RING_FRACTIONS: Record<NodeKind, number> = {
  game: 0.3,
  preference: 0.62,
  valuation: 0.92,
};

export function layoutPositions(
  doc: FrameworkDoc,
  size: number,
): Map<string, Point> {
  const center = size / 2;
  const positions = new Map<string, Point>();
  for (const kind of ["game", "preference", "valuation"] as NodeKind[]) {
    const ids = doc.nodes
      .filter((n) => n.kind === kind)
      .map((n) => n.id)
      .sort();
    const radius = (size / 2 - 40) * RING_FRACTIONS[kind];
    ids.forEach((id, k) => {
      const angle = (2 * Math.PI * k) / Math.max(ids.length, 1);
      positions.set(id, {
        x: center + radius * Math.cos(angle),
        y: center + radius * Math.sin(angle),
      });
    });
  }
  return positions;
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export type GraphOptions = {
  size?: number;
  members?: Set<string> | null;
  focus?: string | null;
};

export function renderGraphSvg(
  doc: FrameworkDoc,
  options: GraphOptions = {},
): string {
  const size = options.size ?? 640;
  const members = options.members ?? null;
  const focus = options.focus ?? null;
  const positions = layoutPositions(doc, size);
  const dimmed = (id: string) => members !== null && !members.has(id);

  const metaByAttack = new Map<string, string[]>();
  for (const meta of doc.metaAttacks) {
    const existing = metaByAttack.get(meta.attackId) ?? [];
    existing.push(meta.from);
    metaByAttack.set(meta.attackId, existing);
  }

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${size} ${size}" ` +
      `width="${size}" height="${size}">`,
  );
  parts.push(
    `<defs>` +
      `<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" ` +
      `markerWidth="6" markerHeight="6" orient="auto-start-reverse">` +
      `<path d="M 0 0 L 10 5 L 0 10 z" fill="#333"/></marker>` +
      `<marker id="arrow-meta" viewBox="0 0 10 10" refX="9" refY="5" ` +
      `markerWidth="6" markerHeight="6" orient="auto-start-reverse">` +
      `<path d="M 0 0 L 10 5 L 0 10 z" fill="#c0392b"/></marker>` +
      `</defs>`,
  );

  for (const attack of doc.attacks) {
    const from = positions.get(attack.from);
    const to = positions.get(attack.to);
    if (!from || !to) continue;
    const faded = dimmed(attack.from) || dimmed(attack.to);
    const opacity = faded ? 0.12 : 0.55;
    const metaSources = metaByAttack.get(attack.id);
    if (metaSources && metaSources.length > 0) {
      const mid = { x: (from.x + to.x) / 2, y: (from.y + to.y) / 2 };
      parts.push(
        `<line x1="${from.x}" y1="${from.y}" x2="${mid.x}" y2="${mid.y}" ` +
          `stroke="#333" stroke-width="1" opacity="${opacity}"/>`,
      );
      parts.push(
        `<line x1="${mid.x}" y1="${mid.y}" x2="${to.x}" y2="${to.y}" ` +
          `stroke="#333" stroke-width="1" opacity="${opacity}" ` +
          `marker-end="url(#arrow)"/>`,
      );
      parts.push(
        `<rect class="meta-anchor" data-attack-id="${escapeXml(attack.id)}" ` +
          `x="${mid.x - 3}" y="${mid.y - 3}" width="6" height="6" ` +
          `fill="#444" opacity="${faded ? 0.2 : 0.9}"/>`,
      );
      for (const source of metaSources) {
        const z = positions.get(source);
        if (!z) continue;
        const metaOpacity = dimmed(source) ? 0.12 : 0.65;
        parts.push(
          `<line x1="${z.x}" y1="${z.y}" x2="${mid.x}" y2="${mid.y}" ` +
            `stroke="#c0392b" stroke-width="1" stroke-dasharray="5,3" ` +
            `opacity="${metaOpacity}" marker-end="url(#arrow-meta)"/>`,
        );
      }
    } else {
      parts.push(
        `<line x1="${from.x}" y1="${from.y}" x2="${to.x}" y2="${to.y}" ` +
          `stroke="#333" stroke-width="1" opacity="${opacity}" ` +
          `marker-end="url(#arrow)"/>`,
      );
    }
  }

  for (const node of doc.nodes) {
    const pos = positions.get(node.id);
    if (!pos) continue;
    const faded = dimmed(node.id);
    const focused = focus === node.id;
    const fill = faded ? "#eeeeee" : KIND_COLORS[node.kind];
    const stroke = focused ? "#c0392b" : "#333";
    const strokeWidth = focused ? 3 : 1;
    parts.push(
      `<g class="graph-node" data-node-id="${escapeXml(node.id)}">` +
        `<circle cx="${pos.x}" cy="${pos.y}" r="16" fill="${fill}" ` +
        `stroke="${stroke}" stroke-width="${strokeWidth}" ` +
        `opacity="${faded ? 0.5 : 1}"/>` +
        `<text x="${pos.x}" y="${pos.y + 26}" font-size="8" ` +
        `text-anchor="middle" fill="${faded ? "#999" : "#222"}">` +
        `${escapeXml(node.label)}</text>` +
        `</g>`,
    );
  }

  parts.push("</svg>");
  return parts.join("\n");
}
