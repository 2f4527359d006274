/**
 * Browser entry: two canvases (strip and quiver), a toolbar, and an
 * error line.  All state transitions go through the engine; this file
 * only paints the models and forwards clicks.
 */

import { EngineApiError, EngineClient, SessionState } from "./api";
import { ActionQueue } from "./queue";
import { buildQuiverModel, hitNode, QuiverModel } from "./quiver-view";
import { buildStripModel, hitTest, StripModel } from "./strip";
import { Control, toolbarControls } from "./toolbar";

const client = new EngineClient("");
const queue = new ActionQueue();

let state: SessionState | null = null;

const stripCanvas = document.getElementById("strip") as HTMLCanvasElement;
const quiverCanvas = document.getElementById("quiver") as HTMLCanvasElement;
const toolbarHost = document.getElementById("toolbar") as HTMLDivElement;
const errorLine = document.getElementById("error") as HTMLDivElement;

function showError(message: string) {
  errorLine.textContent = message;
  errorLine.style.display = message === "" ? "none" : "block";
}

function apply(action: () => Promise<SessionState>) {
  queue
    .push(async () => {
      showError("");
      state = await action();
      render();
    })
    .catch((err) => {
      showError(err instanceof EngineApiError ? `${err.code}: ${err.message}` : String(err));
    });
}

function render() {
  if (state === null) return;
  paintStrip(buildStripModel(state.triangulation, state.bounding, stripCanvas.width, stripCanvas.height));
  paintQuiver(buildQuiverModel(state.quiver, quiverCanvas.width, quiverCanvas.height));
  paintToolbar(toolbarControls(state));
}

function paintStrip(model: StripModel) {
  const g = stripCanvas.getContext("2d")!;
  g.clearRect(0, 0, model.width, model.height);

  g.fillStyle = "#f3f1ec";
  g.fillRect(model.frame.x0, 0, model.frame.x1 - model.frame.x0, model.height);
  g.fillStyle = "#e8edf5";
  g.fillRect(0, model.band.y0, model.width, model.band.y1 - model.band.y0);

  for (const arc of model.arcs) {
    g.beginPath();
    g.moveTo(arc.path[0].x, arc.path[0].y);
    for (let i = 1; i < arc.path.length - 1; i++) {
      const a = arc.path[i];
      const b = arc.path[i + 1];
      g.quadraticCurveTo(a.x, a.y, (a.x + b.x) / 2, (a.y + b.y) / 2);
    }
    const last = arc.path[arc.path.length - 1];
    g.lineTo(last.x, last.y);
    g.lineWidth = arc.bounding ? 3.5 : 2;
    g.strokeStyle = arc.copy === 0 ? (arc.bounding ? "#b8860b" : "#2d4f6e") : "#b9c4cf";
    g.stroke();
    if (arc.copy === 0) {
      g.fillStyle = "#2d4f6e";
      g.font = "13px sans-serif";
      g.fillText(arc.id, arc.label.x, arc.label.y);
    }
  }

  for (const point of model.points) {
    g.beginPath();
    g.arc(point.x, point.y, 4, 0, 2 * Math.PI);
    g.fillStyle = point.boundary === "outer" ? "#7a3b2e" : "#2e5d7a";
    g.fill();
    g.fillStyle = "#666";
    g.font = "11px sans-serif";
    g.fillText(String(point.label), point.x - 3, point.boundary === "outer" ? point.y + 18 : point.y - 10);
  }
}

function paintQuiver(model: QuiverModel) {
  const g = quiverCanvas.getContext("2d")!;
  g.clearRect(0, 0, model.width, model.height);

  for (const arrow of model.arrows) {
    const loop = arrow.x1 === arrow.x2 && arrow.y1 === arrow.y2;
    g.strokeStyle = "#444";
    g.lineWidth = 1.6;
    if (loop) {
      g.beginPath();
      g.arc(arrow.x1, arrow.y1 - 12, 12, 0, 2 * Math.PI);
      g.stroke();
      continue;
    }
    for (let k = 0; k < arrow.mult; k++) {
      const offset = (k - (arrow.mult - 1) / 2) * 6;
      const nx = -(arrow.y2 - arrow.y1);
      const ny = arrow.x2 - arrow.x1;
      const norm = Math.hypot(nx, ny) || 1;
      const ox = (nx / norm) * offset;
      const oy = (ny / norm) * offset;
      g.beginPath();
      g.moveTo(arrow.x1 + ox, arrow.y1 + oy);
      g.lineTo(arrow.x2 + ox, arrow.y2 + oy);
      g.stroke();
      paintArrowHead(g, arrow.x1 + ox, arrow.y1 + oy, arrow.x2 + ox, arrow.y2 + oy);
    }
  }

  for (const node of model.nodes) {
    g.beginPath();
    g.arc(node.x, node.y, node.r, 0, 2 * Math.PI);
    g.fillStyle = node.framing ? "#f0e0c0" : node.frozen ? "#ddd" : "#fff";
    g.fill();
    g.strokeStyle = node.clickable ? "#2d4f6e" : "#999";
    g.lineWidth = node.framing ? 3 : 1.5;
    g.stroke();
    g.fillStyle = "#222";
    g.font = "12px sans-serif";
    const w = g.measureText(node.id).width;
    g.fillText(node.id, node.x - w / 2, node.y + 4);
  }
  if (model.pinned !== null) {
    g.strokeStyle = "#b8860b";
    g.setLineDash([4, 3]);
    const [a, b] = model.pinned.map((id) => model.nodes.find((n) => n.id === id)!);
    g.strokeRect(Math.min(a.x, b.x) - 24, a.y - 24, Math.abs(b.x - a.x) + 48, 48);
    g.setLineDash([]);
  }
}

function paintArrowHead(g: CanvasRenderingContext2D, x1: number, y1: number, x2: number, y2: number) {
  const angle = Math.atan2(y2 - y1, x2 - x1);
  g.beginPath();
  g.moveTo(x2, y2);
  g.lineTo(x2 - 9 * Math.cos(angle - 0.4), y2 - 9 * Math.sin(angle - 0.4));
  g.moveTo(x2, y2);
  g.lineTo(x2 - 9 * Math.cos(angle + 0.4), y2 - 9 * Math.sin(angle + 0.4));
  g.stroke();
}

function paintToolbar(controls: Control[]) {
  toolbarHost.replaceChildren();
  for (const ctl of controls) {
    const button = document.createElement("button");
    button.textContent = ctl.label;
    button.disabled = !ctl.enabled;
    button.onclick = () => {
      if (state === null || ctl.request === null) return;
      const sid = state.id;
      if (ctl.id === "undo") apply(() => client.undo(sid));
      else if (ctl.id === "coxeter") apply(() => client.coxeter(sid));
      else if (ctl.id === "dehn-plus") apply(() => client.dehn(sid, "plus"));
      else if (ctl.id === "dehn-minus") apply(() => client.dehn(sid, "minus"));
      else if (ctl.id === "limit-plus") apply(() => client.limit(sid, "plus"));
      else if (ctl.id === "limit-minus") apply(() => client.limit(sid, "minus"));
      else if (ctl.candidates && ctl.candidates.length > 0) {
        queue
          .push(async () => {
            const framed = await client.quiver(sid, ctl.candidates![0]);
            paintQuiver(buildQuiverModel(framed, quiverCanvas.width, quiverCanvas.height));
          })
          .catch((err) => showError(String(err)));
      }
    };
    toolbarHost.appendChild(button);
  }
}

stripCanvas.onclick = (ev) => {
  if (state === null) return;
  const rect = stripCanvas.getBoundingClientRect();
  const model = buildStripModel(state.triangulation, state.bounding, stripCanvas.width, stripCanvas.height);
  const arcId = hitTest(model, ev.clientX - rect.left, ev.clientY - rect.top);
  if (arcId !== null && state.flippable.includes(arcId)) {
    const sid = state.id;
    apply(() => client.flip(sid, arcId));
  }
};

quiverCanvas.onclick = (ev) => {
  if (state === null) return;
  const rect = quiverCanvas.getBoundingClientRect();
  const model = buildQuiverModel(state.quiver, quiverCanvas.width, quiverCanvas.height);
  const node = hitNode(model, ev.clientX - rect.left, ev.clientY - rect.top);
  if (node !== null && node.clickable && state.kind === "finite") {
    // mutation of the session quiver is flip of the matching arc
    const sid = state.id;
    if (state.flippable.includes(node.id)) apply(() => client.flip(sid, node.id));
  }
};

apply(() => client.createSession({ shape: [2, 2] }));
