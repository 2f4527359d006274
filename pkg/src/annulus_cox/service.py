"""HTTP facade over the engine.

Sessions are kept in memory.  Each session owns a current triangulation
plus an undo history; every state-changing request takes the session's
lock, so concurrent edits serialize.  Set ``ANNULUS_COX_SNAPSHOT`` to a
file path to append one JSON line per state change.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import jsonio
from .errors import EngineError, IncompatibleInput, MalformedArc, MalformedInput
from .potentials import potential_of
from .quiver import framed_quiver, quiver_of
from .surface import (
    FINITE,
    Annulus,
    Boundary,
    Bridging,
    Peripheral,
    Triangulation,
    bounding_arcs,
    complete_to_triangulation,
    flip,
)
from .transforms import Direction, coxeter, dehn_limit, dehn_twist

SNAPSHOT_ENV = "ANNULUS_COX_SNAPSHOT"


@dataclass
class Session:
    """One editable triangulation with its undo history."""

    id: str
    current: Triangulation
    history: List[Tuple[Dict[str, Any], Triangulation]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class UnknownSession(EngineError):
    """Session id not present in the store."""


app = FastAPI(title="annulus-cox")

_sessions: Dict[str, Session] = {}
_registry_lock = threading.Lock()


def reset_sessions() -> None:
    """Drop every session (used by tests)."""
    with _registry_lock:
        _sessions.clear()


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


@app.exception_handler(EngineError)
async def _engine_error(request: Request, exc: EngineError) -> JSONResponse:
    if isinstance(exc, UnknownSession):
        return _error(404, "unknown_session", str(exc))
    if isinstance(exc, (MalformedInput, MalformedArc)):
        return _error(400, "malformed", str(exc))
    return _error(409, type(exc).__name__, str(exc))


@app.exception_handler(RequestValidationError)
async def _validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
    return _error(400, "malformed", str(exc))


async def _body(request: Request) -> Dict[str, Any]:
    raw = await request.body()
    if not raw:
        return {}
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"request body is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise MalformedInput("request body must be a JSON object")
    return data


def _check_keys(data: Dict[str, Any], allowed: set, where: str) -> None:
    extra = sorted(set(data) - allowed)
    if extra:
        raise MalformedInput(f"unexpected fields in {where}: {', '.join(extra)}")


def _session(session_id: str) -> Session:
    with _registry_lock:
        sess = _sessions.get(session_id)
    if sess is None:
        raise UnknownSession(f"no session {session_id!r}")
    return sess


def default_triangulation(p: int, q: int) -> Triangulation:
    """Starting triangulation for a fresh session on the (p, q) annulus.

    The (2, 2) shape gets the standard four-arc example (one peripheral
    arc, three bridging arcs); other shapes start from the greedy
    completion of the empty arc set.
    """
    try:
        ann = Annulus(p, q)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    if (p, q) == (2, 2):
        return Triangulation(
            ann,
            (
                ("d1", Bridging(0, 0)),
                ("d2", Bridging(0, 1)),
                ("d3", Peripheral(Boundary.OUTER, 0, 2)),
                ("d4", Bridging(0, -1)),
            ),
        )
    return complete_to_triangulation(ann)


def _shape(value: Any) -> Tuple[int, int]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        raise MalformedInput("shape must be a pair of integers [p, q]")
    return value[0], value[1]


def _direction(value: Any) -> Direction:
    if value == "plus":
        return Direction.PLUS
    if value == "minus":
        return Direction.MINUS
    raise MalformedInput("direction must be 'plus' or 'minus'")


def _can_flip(t: Triangulation, arc_id: str) -> bool:
    try:
        flip(t, arc_id)
    except IncompatibleInput:
        return False
    return True


def _state(sess: Session) -> Dict[str, Any]:
    t = sess.current
    transforms = ["flip"]
    if t.kind == FINITE:
        transforms += ["dehn", "coxeter", "limit"]
    if sess.history:
        transforms.append("undo")
    return {
        "id": sess.id,
        "kind": t.kind,
        "triangulation": jsonio.triangulation_to_json(t),
        "quiver": jsonio.quiver_to_json(quiver_of(t)),
        "flippable": [arc_id for arc_id, _ in t.arcs if _can_flip(t, arc_id)],
        "bounding": list(bounding_arcs(t)),
        "transforms": transforms,
        "history": [desc for desc, _ in sess.history],
    }


def _snapshot(sess: Session, desc: Dict[str, Any]) -> None:
    path = os.environ.get(SNAPSHOT_ENV)
    if not path:
        return
    line = jsonio.dumps(
        {
            "session": sess.id,
            "op": desc,
            "state": jsonio.triangulation_to_json(sess.current),
        }
    )
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(line + "\n")


def _apply(
    sess: Session,
    desc: Dict[str, Any],
    step: Callable[[Triangulation], Triangulation],
) -> Dict[str, Any]:
    with sess.lock:
        new = step(sess.current)
        sess.history.append((desc, sess.current))
        sess.current = new
        state = _state(sess)
    _snapshot(sess, desc)
    return state


@app.post("/api/session", status_code=201)
async def create_session(request: Request) -> Dict[str, Any]:
    data = await _body(request)
    _check_keys(data, {"shape", "triangulation"}, "session request")
    if "triangulation" in data and "shape" in data:
        raise MalformedInput("give either a shape or a triangulation, not both")
    if "triangulation" in data:
        t = jsonio.triangulation_from_json(data["triangulation"])
    else:
        p, q = _shape(data.get("shape", [2, 2]))
        t = default_triangulation(p, q)
    sess = Session(id=uuid.uuid4().hex[:12], current=t)
    with _registry_lock:
        _sessions[sess.id] = sess
    _snapshot(sess, {"op": "create"})
    with sess.lock:
        return _state(sess)


@app.get("/api/session/{session_id}")
async def get_session(session_id: str) -> Dict[str, Any]:
    sess = _session(session_id)
    with sess.lock:
        return _state(sess)


@app.post("/api/session/{session_id}/flip")
async def flip_arc(session_id: str, request: Request) -> Dict[str, Any]:
    sess = _session(session_id)
    data = await _body(request)
    _check_keys(data, {"arc_id"}, "flip request")
    arc_id = data.get("arc_id")
    if not isinstance(arc_id, str):
        raise MalformedInput("flip needs an 'arc_id' string")
    desc = {"op": "flip", "arc_id": arc_id}
    return _apply(sess, desc, lambda t: flip(t, arc_id))


@app.post("/api/session/{session_id}/dehn")
async def dehn(session_id: str, request: Request) -> Dict[str, Any]:
    sess = _session(session_id)
    data = await _body(request)
    _check_keys(data, {"direction", "n"}, "dehn request")
    direction = _direction(data.get("direction"))
    n = data.get("n", 1)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedInput("n must be a positive integer")
    desc = {"op": "dehn", "direction": direction.value, "n": n}
    return _apply(sess, desc, lambda t: dehn_twist(t, direction, n))


@app.post("/api/session/{session_id}/coxeter")
async def coxeter_step(session_id: str, request: Request) -> Dict[str, Any]:
    sess = _session(session_id)
    data = await _body(request)
    _check_keys(data, set(), "coxeter request")
    return _apply(sess, {"op": "coxeter"}, coxeter)


@app.post("/api/session/{session_id}/limit")
async def limit(session_id: str, request: Request) -> Dict[str, Any]:
    sess = _session(session_id)
    data = await _body(request)
    _check_keys(data, {"direction"}, "limit request")
    direction = _direction(data.get("direction"))
    desc = {"op": "limit", "direction": direction.value}
    return _apply(sess, desc, lambda t: dehn_limit(t, direction))


@app.post("/api/session/{session_id}/undo")
async def undo(session_id: str) -> Dict[str, Any]:
    sess = _session(session_id)
    with sess.lock:
        if not sess.history:
            raise IncompatibleInput("nothing to undo")
        _, previous = sess.history.pop()
        sess.current = previous
        state = _state(sess)
    _snapshot(sess, {"op": "undo"})
    return state


@app.get("/api/session/{session_id}/quiver")
async def get_quiver(session_id: str, framed: Optional[str] = None) -> Dict[str, Any]:
    sess = _session(session_id)
    with sess.lock:
        t = sess.current
        q = quiver_of(t) if framed is None else framed_quiver(t, framed)
    return jsonio.quiver_to_json(q)


@app.get("/api/session/{session_id}/qp")
async def get_qp(session_id: str) -> Dict[str, Any]:
    sess = _session(session_id)
    with sess.lock:
        qp = potential_of(sess.current)
    return jsonio.qp_to_json(qp)
