"""Mapping-class-group actions on annulus triangulations.

Dehn twists along the core curve, their two spiralling limits, and the
Coxeter transformation realized by replaying flips along an admissible
ordering, plus the commutativity relations tying the three together.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import lcm
from typing import List, Optional, Tuple

from .errors import MalformedInput, NotBridging, NotFinite, TooLarge
from .quiver import admissible_ordering, quiver_of
from .surface import (
    Adic,
    Bridging,
    FINITE,
    INNER,
    OUTER,
    Peripheral,
    Prufer,
    Triangulation,
    bounding_arcs,
    canonicalize,
    flip,
)


class Direction(Enum):
    PLUS = "plus"
    MINUS = "minus"


def same_triangulation(a: Triangulation, b: Triangulation) -> bool:
    """Equality as labelled arc systems, ignoring storage order."""
    return a.ann == b.ann and dict(a.arcs) == dict(b.arcs)


def _require_finite(t: Triangulation, op: str) -> None:
    if t.kind != FINITE:
        raise NotFinite(f"{op} needs a finite triangulation")


def dehn_twist(t: Triangulation, direction: Direction, n: int = 1) -> Triangulation:
    """Twist along the core curve n times; Plus winds towards the Prufer limit."""
    _require_finite(t, "dehn_twist")
    if n < 1:
        raise MalformedInput(f"twist count must be positive, got {n}")
    shift = t.ann.q * n * (1 if direction is Direction.PLUS else -1)
    arcs = tuple(
        (i, Bridging(a.outer, a.inner + shift) if isinstance(a, Bridging) else a)
        for i, a in t.arcs
    )
    return Triangulation(t.ann, arcs)


def dehn_limit(t: Triangulation, direction: Direction) -> Triangulation:
    """Limit of twisting forever: bridging arcs become spirals, merged by endpoint."""
    _require_finite(t, "dehn_limit")
    ann = t.ann
    spiral = Prufer if direction is Direction.PLUS else Adic
    feet = sorted({a.outer % ann.p for _, a in t.arcs if isinstance(a, Bridging)})
    tips = sorted({a.inner % ann.q for _, a in t.arcs if isinstance(a, Bridging)})
    po, pi = ("pro", "pri") if spiral is Prufer else ("ado", "adi")
    arcs = [(i, a) for i, a in t.arcs if isinstance(a, Peripheral)]
    arcs += [(f"{po}{m}", spiral(OUTER, pt)) for m, pt in enumerate(feet, 1)]
    arcs += [(f"{pi}{m}", spiral(INNER, pt)) for m, pt in enumerate(tips, 1)]
    return Triangulation(ann, tuple(arcs))


def coxeter_bridging(t: Triangulation) -> Triangulation:
    """Flip along an admissible ordering; shifts every endpoint one step back."""
    _require_finite(t, "coxeter_bridging")
    if not all(isinstance(a, Bridging) for _, a in t.arcs):
        raise NotBridging("coxeter_bridging needs an all-bridging triangulation")
    cur = t
    for arc_id in admissible_ordering(quiver_of(t)):
        cur = flip(cur, arc_id)
    for arc_id, arc in t.arcs:
        want = canonicalize(Bridging(arc.outer - 1, arc.inner + 1), t.ann)
        got = cur.arc(arc_id)
        assert got == want, f"coxeter moved {arc_id} to {got}, expected {want}"
    return cur


def reduce_to_bridging(t: Triangulation) -> Tuple[Triangulation, List[str]]:
    """Flip peripheral arcs away (lowest bounding arc id first); return the trail."""
    _require_finite(t, "reduce_to_bridging")
    cur, seq = t, []
    while any(isinstance(a, Peripheral) for _, a in cur.arcs):
        candidates = bounding_arcs(cur)
        assert candidates, "peripheral arcs present but none bounding"
        arc_id = min(candidates, key=lambda i: (len(i), i))
        cur = flip(cur, arc_id)
        seq.append(arc_id)
    return cur, seq


def coxeter(t: Triangulation) -> Triangulation:
    """Coxeter transformation of any finite triangulation, via its reduction."""
    reduced, seq = reduce_to_bridging(t)
    out = coxeter_bridging(reduced)
    for arc_id in reversed(seq):
        out = flip(out, arc_id)
    return out


@dataclass(frozen=True)
class RelationResult:
    """Outcome of one commutativity relation; witness names the first mismatch."""

    relation: str
    passed: bool
    m: int
    r: int
    s: int
    witness: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "pass": self.passed,
            "m": self.m,
            "r": self.r,
            "s": self.s,
            "witness": self.witness,
        }


def _first_difference(a: Triangulation, b: Triangulation) -> Optional[str]:
    left, right = dict(a.arcs), dict(b.arcs)
    for arc_id in sorted(set(left) | set(right), key=lambda i: (len(i), i)):
        if left.get(arc_id) != right.get(arc_id):
            return f"{arc_id}: {left.get(arc_id)} vs {right.get(arc_id)}"
    return None


def check_commutativity(t: Triangulation) -> List[RelationResult]:
    """Verify the twist/flip/Coxeter relations on one triangulation."""
    _require_finite(t, "check_commutativity")
    ann = t.ann
    if ann.p + ann.q > 10:
        raise TooLarge(f"relation check capped at p+q <= 10, got {ann.p + ann.q}")
    m = lcm(ann.p, ann.q)
    r, s = m // ann.p, m // ann.q
    results = []

    witness = None
    for arc_id in t.ids:
        one = dehn_twist(flip(t, arc_id), Direction.PLUS)
        other = flip(dehn_twist(t, Direction.PLUS), arc_id)
        if not same_triangulation(one, other):
            witness = arc_id
            break
    results.append(
        RelationResult("flip_commutes_with_dehn", witness is None, m, r, s, witness)
    )

    reduced, _ = reduce_to_bridging(t)
    cur = reduced
    for _ in range(m):
        cur = coxeter_bridging(cur)
    witness = _first_difference(cur, dehn_twist(reduced, Direction.PLUS, r + s))
    results.append(
        RelationResult("cox_m_eq_dehn_rs", witness is None, m, r, s, witness)
    )

    cur = t
    for _ in range(m):
        cur = coxeter(cur)
    witness = _first_difference(cur, dehn_twist(t, Direction.PLUS, r + s))
    results.append(
        RelationResult("cox_m_eq_dehn_rs_general", witness is None, m, r, s, witness)
    )
    return results
