/**
 * Toolbar state derived from the session.
 *
 * Every control corresponds to exactly one endpoint, and a control is
 * enabled exactly when the engine lists the transform as available (the
 * frame switch additionally needs a second spiralling arc on the same
 * boundary to switch to, mirroring the engine's own precondition).
 */

import { SessionState } from "./api";

export interface EngineRequest {
  method: "POST" | "GET";
  path: string;
  body?: Record<string, unknown>;
}

export interface Control {
  id:
    | "dehn-plus"
    | "dehn-minus"
    | "coxeter"
    | "limit-plus"
    | "limit-minus"
    | "undo"
    | "frame-switch";
  label: string;
  enabled: boolean;
  request: EngineRequest | null;
  /** for the frame switch: arc ids eligible as the new frame */
  candidates?: string[];
}

export function toolbarControls(state: SessionState): Control[] {
  const has = (name: string) => state.transforms.includes(name);
  const base = `/api/session/${state.id}`;
  const controls: Control[] = [
    control("dehn-plus", "Twist +", has("dehn"), {
      method: "POST",
      path: `${base}/dehn`,
      body: { direction: "plus", n: 1 },
    }),
    control("dehn-minus", "Twist −", has("dehn"), {
      method: "POST",
      path: `${base}/dehn`,
      body: { direction: "minus", n: 1 },
    }),
    control("coxeter", "Coxeter", has("coxeter"), {
      method: "POST",
      path: `${base}/coxeter`,
      body: {},
    }),
    control("limit-plus", "Limit +∞", has("limit"), {
      method: "POST",
      path: `${base}/limit`,
      body: { direction: "plus" },
    }),
    control("limit-minus", "Limit −∞", has("limit"), {
      method: "POST",
      path: `${base}/limit`,
      body: { direction: "minus" },
    }),
    control("undo", "Undo", has("undo"), { method: "POST", path: `${base}/undo` }),
  ];

  const candidates = frameCandidates(state);
  controls.push({
    id: "frame-switch",
    label: "Switch frame",
    enabled: candidates.length >= 2,
    request:
      candidates.length >= 2
        ? frameRequest(state, candidates[0])
        : null,
    candidates,
  });
  return controls;
}

export function frameRequest(state: SessionState, arcId: string): EngineRequest {
  return {
    method: "GET",
    path: `/api/session/${state.id}/quiver?framed=${encodeURIComponent(arcId)}`,
  };
}

/** Spiralling arcs grouped on the better-populated boundary. */
function frameCandidates(state: SessionState): string[] {
  if (state.kind !== "asymptotic") return [];
  const byBoundary: Record<"outer" | "inner", string[]> = { outer: [], inner: [] };
  for (const arc of state.triangulation.arcs) {
    if (arc.kind === "prufer" || arc.kind === "adic") {
      byBoundary[arc.boundary].push(arc.id);
    }
  }
  return byBoundary.outer.length >= byBoundary.inner.length
    ? byBoundary.outer
    : byBoundary.inner;
}

function control(
  id: Control["id"],
  label: string,
  enabled: boolean,
  request: EngineRequest
): Control {
  return { id, label, enabled, request: enabled ? request : null };
}
