import { describe, expect, it } from "vitest";

import { SessionState } from "../src/api";
import { frameRequest, toolbarControls } from "../src/toolbar";
import { asymptoticState, startState } from "./fixtures";

const byId = (state: SessionState) =>
  new Map(toolbarControls(state).map((ctl) => [ctl.id, ctl]));

describe("toolbarControls", () => {
  it("maps each control to exactly one endpoint on a finite session", () => {
    const controls = byId(startState());
    const base = "/api/session/a3fc317e6c0d";

    expect(controls.get("dehn-plus")!.request).toEqual({
      method: "POST",
      path: `${base}/dehn`,
      body: { direction: "plus", n: 1 },
    });
    expect(controls.get("dehn-minus")!.request).toEqual({
      method: "POST",
      path: `${base}/dehn`,
      body: { direction: "minus", n: 1 },
    });
    expect(controls.get("coxeter")!.request).toEqual({
      method: "POST",
      path: `${base}/coxeter`,
      body: {},
    });
    expect(controls.get("limit-plus")!.request).toEqual({
      method: "POST",
      path: `${base}/limit`,
      body: { direction: "plus" },
    });
    expect(controls.get("limit-minus")!.request).toEqual({
      method: "POST",
      path: `${base}/limit`,
      body: { direction: "minus" },
    });
  });

  it("disables what the engine does not offer", () => {
    const controls = byId(startState());
    // a fresh session has no history, so nothing to undo
    expect(controls.get("undo")!.enabled).toBe(false);
    expect(controls.get("undo")!.request).toBeNull();
    // and it is finite, so there is no frame to switch
    expect(controls.get("frame-switch")!.enabled).toBe(false);
    expect(controls.get("frame-switch")!.candidates).toEqual([]);
  });

  it("after the limit only flip, undo and the frame switch remain", () => {
    const controls = byId(asymptoticState());
    for (const id of ["dehn-plus", "dehn-minus", "coxeter", "limit-plus", "limit-minus"] as const) {
      expect(controls.get(id)!.enabled).toBe(false);
      expect(controls.get(id)!.request).toBeNull();
    }
    const undo = controls.get("undo")!;
    expect(undo.enabled).toBe(true);
    expect(undo.request).toEqual({ method: "POST", path: "/api/session/a3fc317e6c0d/undo" });
  });

  it("offers the frame switch when a second spiral shares the boundary", () => {
    const ctl = byId(asymptoticState()).get("frame-switch")!;
    expect(ctl.enabled).toBe(true);
    expect(ctl.candidates).toEqual(["pro1", "pro2"]);
    expect(ctl.request).toEqual({
      method: "GET",
      path: "/api/session/a3fc317e6c0d/quiver?framed=pro1",
    });
  });

  it("keeps the frame switch off with one lone spiral per boundary", () => {
    const state = asymptoticState();
    state.triangulation.arcs = state.triangulation.arcs.filter(
      (arc) => arc.id === "pro1" || arc.id === "pri1"
    );
    const ctl = byId(state).get("frame-switch")!;
    expect(ctl.enabled).toBe(false);
    expect(ctl.candidates).toEqual(["pro1"]);
    expect(ctl.request).toBeNull();
  });

  it("follows the spirals to the better populated boundary", () => {
    const state = asymptoticState();
    state.triangulation.arcs = state.triangulation.arcs.filter((arc) => arc.id !== "pro2");
    const ctl = byId(state).get("frame-switch")!;
    expect(ctl.candidates).toEqual(["pri1", "pri2"]);
    expect(ctl.request!.path).toContain("framed=pri1");
  });

  it("encodes the framing arc id into the query", () => {
    const request = frameRequest(startState(), "a b");
    expect(request.path).toBe("/api/session/a3fc317e6c0d/quiver?framed=a%20b");
  });
});
