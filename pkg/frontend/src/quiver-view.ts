/**
 * Layout for the quiver panel.
 *
 * Mutable vertices sit on a circle; a framing pair, when present, is
 * pinned side by side above it.  Arrows are straight segments trimmed
 * at the node discs, with the multiplicity carried for the painter.
 */

import { QuiverDoc } from "./api";

export interface QuiverNode {
  id: string;
  x: number;
  y: number;
  r: number;
  frozen: boolean;
  framing: boolean;
  /** clicking a node requests a mutation; frozen and framing nodes do not */
  clickable: boolean;
}

export interface QuiverArrow {
  from: string;
  to: string;
  mult: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface QuiverModel {
  width: number;
  height: number;
  nodes: QuiverNode[];
  arrows: QuiverArrow[];
  /** the framing pair ids in engine order, if the quiver carries one */
  pinned: [string, string] | null;
}

const NODE_RADIUS = 17;

export function buildQuiverModel(q: QuiverDoc, width = 440, height = 440): QuiverModel {
  const frozen = new Set(q.frozen);
  const framing = new Set(q.framing_pairs.flat());
  const pinned = q.framing_pairs.length > 0 ? q.framing_pairs[0] : null;

  const ringIds = q.vertices.filter((v) => !framing.has(v));
  const cx = width / 2;
  const cy = pinned === null ? height / 2 : height / 2 + 40;
  const radius = Math.min(width, height) / 2 - 60;

  const nodes: QuiverNode[] = [];
  ringIds.forEach((id, index) => {
    const angle = -Math.PI / 2 + (2 * Math.PI * index) / Math.max(ringIds.length, 1);
    nodes.push({
      id,
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
      r: NODE_RADIUS,
      frozen: frozen.has(id),
      framing: false,
      clickable: !frozen.has(id),
    });
  });
  if (pinned !== null) {
    pinned.forEach((id, side) => {
      nodes.push({
        id,
        x: cx + (side === 0 ? -1 : 1) * 50,
        y: 46,
        r: NODE_RADIUS,
        frozen: frozen.has(id),
        framing: true,
        clickable: false,
      });
    });
  }

  const at = new Map(nodes.map((n) => [n.id, n]));
  const arrows: QuiverArrow[] = [];
  for (const arrow of q.arrows) {
    const a = at.get(arrow.from);
    const b = at.get(arrow.to);
    if (a === undefined || b === undefined) {
      throw new Error(`arrow ${arrow.from}->${arrow.to} references a missing vertex`);
    }
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy);
    if (len === 0) {
      // loop: the painter draws a circle tangent at the node
      arrows.push({ ...arrow, x1: a.x, y1: a.y - a.r, x2: a.x, y2: a.y - a.r });
      continue;
    }
    arrows.push({
      from: arrow.from,
      to: arrow.to,
      mult: arrow.mult,
      x1: a.x + (dx / len) * a.r,
      y1: a.y + (dy / len) * a.r,
      x2: b.x - (dx / len) * b.r,
      y2: b.y - (dy / len) * b.r,
    });
  }

  return { width, height, nodes, arrows, pinned };
}

export function hitNode(model: QuiverModel, x: number, y: number): QuiverNode | null {
  for (const node of model.nodes) {
    const dx = x - node.x;
    const dy = y - node.y;
    if (dx * dx + dy * dy <= node.r * node.r) return node;
  }
  return null;
}
