/**
 * Session payloads captured verbatim from the engine: the default
 * two-by-two annulus, the asymptotic state it reaches after
 * flip / twist / limit, and a framed quiver.  Parsing them through the
 * schemas on every access doubles as a check that the schemas accept
 * what the engine actually sends.
 */

import { QuiverDoc, SessionState } from "../src/api";

const START_RAW = `{"id": "a3fc317e6c0d", "kind": "finite", "triangulation": {"p": 2, "q": 2, "arcs": [{"id": "d1", "kind": "bridging", "outer": 0, "inner": 0}, {"id": "d2", "kind": "bridging", "outer": 0, "inner": 1}, {"id": "d3", "kind": "peripheral", "boundary": "outer", "a": 0, "b": 2}, {"id": "d4", "kind": "bridging", "outer": 0, "inner": -1}]}, "quiver": {"vertices": ["d1", "d2", "d3", "d4"], "arrows": [{"from": "d1", "to": "d2", "mult": 1}, {"from": "d2", "to": "d3", "mult": 1}, {"from": "d3", "to": "d4", "mult": 1}, {"from": "d4", "to": "d1", "mult": 1}, {"from": "d4", "to": "d2", "mult": 1}], "framing_pairs": [], "frozen": []}, "flippable": ["d1", "d2", "d3", "d4"], "bounding": ["d3"], "transforms": ["flip", "dehn", "coxeter", "limit"], "history": []}`;

const ASYMPTOTIC_RAW = `{"id": "a3fc317e6c0d", "kind": "asymptotic", "triangulation": {"p": 2, "q": 2, "arcs": [{"id": "pro1", "kind": "prufer", "boundary": "outer", "point": 0}, {"id": "pro2", "kind": "prufer", "boundary": "outer", "point": 1}, {"id": "pri1", "kind": "prufer", "boundary": "inner", "point": 0}, {"id": "pri2", "kind": "prufer", "boundary": "inner", "point": 1}]}, "quiver": {"vertices": ["pro1", "pro2", "pri1", "pri2"], "arrows": [{"from": "pri1", "to": "pri2", "mult": 1}, {"from": "pri2", "to": "pri1", "mult": 1}, {"from": "pro1", "to": "pro2", "mult": 1}, {"from": "pro2", "to": "pro1", "mult": 1}], "framing_pairs": [], "frozen": []}, "flippable": ["pro1", "pro2", "pri1", "pri2"], "bounding": [], "transforms": ["flip", "undo"], "history": [{"op": "flip", "arc_id": "d3"}, {"op": "dehn", "direction": "plus", "n": 1}, {"op": "limit", "direction": "plus"}]}`;

const FRAMED_RAW = `{"vertices": ["pro1_left", "pro1_right", "pro2"], "arrows": [{"from": "pro1_right", "to": "pro2", "mult": 1}, {"from": "pro2", "to": "pro1_left", "mult": 1}], "framing_pairs": [["pro1_left", "pro1_right"]], "frozen": []}`;

export function startState(): SessionState {
  return SessionState.parse(JSON.parse(START_RAW));
}

export function asymptoticState(): SessionState {
  return SessionState.parse(JSON.parse(ASYMPTOTIC_RAW));
}

export function framedQuiver(): QuiverDoc {
  return QuiverDoc.parse(JSON.parse(FRAMED_RAW));
}
