/**
 * Layout for the cylinder-strip view of a triangulation.
 *
 * The annulus is cut open and drawn as a horizontal strip: the outer
 * boundary is the lower edge read left-to-right, the inner boundary the
 * upper edge read right-to-left.  One fundamental frame is drawn plus
 * half a frame of context on each side; arcs reappear once per frame.
 *
 * Everything here is presentation geometry.  Which arcs exist, what
 * they connect, and what is flippable all come from the engine's JSON
 * untouched.
 */

import { ArcDoc, TriangulationDoc } from "./api";

export interface MarkedPoint {
  boundary: "outer" | "inner";
  /** engine lift coordinate (multiples of q on the outer edge, p on the inner) */
  lift: number;
  /** downstairs label, following the strip reading direction of its edge */
  label: number;
  x: number;
  y: number;
}

export interface RenderedArc {
  id: string;
  kind: ArcDoc["kind"];
  /** which deck copy this drawing is (0 = the fundamental frame) */
  copy: number;
  /** polyline control points; the painter runs a curve through them */
  path: { x: number; y: number }[];
  label: { x: number; y: number };
  bounding: boolean;
  hit: { x: number; y: number; r: number };
}

export interface StripModel {
  width: number;
  height: number;
  /** pixel x-extent of the fundamental frame */
  frame: { x0: number; x1: number };
  /** y-extent of the meridian band where spirals are truncated */
  band: { y0: number; y1: number };
  points: MarkedPoint[];
  arcs: RenderedArc[];
}

const MARGIN_Y = 36;
const BAND_HALF = 22;
const HIT_RADIUS = 16;

export function buildStripModel(
  t: TriangulationDoc,
  bounding: string[],
  width = 960,
  height = 320
): StripModel {
  const period = t.p * t.q;
  // engine-space window: one frame plus half a frame each side
  const windowX0 = -period / 2;
  const windowX1 = 1.5 * period;
  const sx = width / (windowX1 - windowX0);
  const px = (x: number) => (x - windowX0) * sx;

  const yOuter = height - MARGIN_Y;
  const yInner = MARGIN_Y;
  const yMid = height / 2;

  const points: MarkedPoint[] = [];
  for (let o = Math.ceil(windowX0 / t.q); o * t.q <= windowX1; o++) {
    points.push({
      boundary: "outer",
      lift: o,
      label: mod(o, t.p),
      x: px(o * t.q),
      y: yOuter,
    });
  }
  for (let i = Math.ceil(windowX0 / t.p); i * t.p <= windowX1; i++) {
    points.push({
      boundary: "inner",
      lift: i,
      label: mod(-i, t.q),
      x: px(i * t.p),
      y: yInner,
    });
  }

  const boundingSet = new Set(bounding);
  const arcs: RenderedArc[] = [];
  for (const arc of t.arcs) {
    for (let copy = -2; copy <= 2; copy++) {
      const shift = copy * period;
      const path = arcPath(arc, t, shift, px, yOuter, yInner, yMid);
      if (path === null) continue;
      if (!path.some((pt) => pt.x >= -HIT_RADIUS && pt.x <= width + HIT_RADIUS)) continue;
      const mid = path[Math.floor(path.length / 2)];
      arcs.push({
        id: arc.id,
        kind: arc.kind,
        copy,
        path,
        label: { x: mid.x + 8, y: mid.y - 8 },
        bounding: boundingSet.has(arc.id),
        hit: { x: mid.x, y: mid.y, r: HIT_RADIUS },
      });
    }
  }

  return {
    width,
    height,
    frame: { x0: px(0), x1: px(period) },
    band: { y0: yMid - BAND_HALF, y1: yMid + BAND_HALF },
    points,
    arcs,
  };
}

function mod(value: number, m: number): number {
  return ((value % m) + m) % m;
}

function arcPath(
  arc: ArcDoc,
  t: TriangulationDoc,
  shift: number,
  px: (x: number) => number,
  yOuter: number,
  yInner: number,
  yMid: number
): { x: number; y: number }[] | null {
  if (arc.kind === "bridging") {
    const x0 = arc.outer * t.q + shift;
    const x1 = arc.inner * t.p + shift;
    return [
      { x: px(x0), y: yOuter },
      { x: px((x0 + x1) / 2), y: yMid },
      { x: px(x1), y: yInner },
    ];
  }
  if (arc.kind === "peripheral") {
    const spacing = arc.boundary === "outer" ? t.q : t.p;
    const edgeY = arc.boundary === "outer" ? yOuter : yInner;
    const bulge = arc.boundary === "outer" ? -1 : 1;
    const x0 = arc.a * spacing + shift;
    const x1 = arc.b * spacing + shift;
    const rise = Math.min(70, Math.abs(px(x1) - px(x0)) / 3);
    return [
      { x: px(x0), y: edgeY },
      { x: px((x0 + x1) / 2), y: edgeY + bulge * rise },
      { x: px(x1), y: edgeY },
    ];
  }
  // spiralling arcs leave their marked point, reach the meridian band,
  // and run off toward the wrapping direction; prufer and adic arcs
  // wind opposite ways
  const spacing = arc.boundary === "outer" ? t.q : t.p;
  const edgeY = arc.boundary === "outer" ? yOuter : yInner;
  const toward = arc.boundary === "outer" ? -1 : 1;
  const sense = arc.kind === "prufer" ? 1 : -1;
  const bandEdge = yMid - toward * BAND_HALF;
  const x0 = arc.point * spacing + shift;
  const reach = sense * t.p * t.q * 0.45;
  return [
    { x: px(x0), y: edgeY },
    { x: px(x0 + reach * 0.25), y: (edgeY + bandEdge) / 2 },
    { x: px(x0 + reach), y: bandEdge },
  ];
}

/** Arc id under the pointer, if any; copies of an arc share its id. */
export function hitTest(model: StripModel, x: number, y: number): string | null {
  for (const arc of model.arcs) {
    const dx = x - arc.hit.x;
    const dy = y - arc.hit.y;
    if (dx * dx + dy * dy <= arc.hit.r * arc.hit.r) return arc.id;
  }
  return null;
}
