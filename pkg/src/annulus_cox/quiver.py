"""Quivers of triangulations, mutation, frames, and lattice forms.

The adjacency quiver is computed in the universal cover: at every
representative boundary point the incident arc ends are sorted by angle,
and each pair of neighbouring ends spans a triangle corner contributing
one arrow from the later end to the earlier one.  Spiralling arcs meet
again at the closed end of the surface, which adds one arrow per pair of
neighbouring spirals on a boundary (a loop when the spiral is alone).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import (
    LoopAtVertex,
    NoAdmissibleOrdering,
    NotMutable,
    NotStrictlyAsymptotic,
    NoOtherStrictAsymptoticArc,
    UnknownArcId,
    UnknownVertex,
)
from .surface import (
    Adic,
    Annulus,
    Arc,
    ArcLift,
    Boundary,
    Bridging,
    INNER,
    OUTER,
    Peripheral,
    Prufer,
    Triangulation,
    ends_at_inner,
    ends_at_outer,
    is_spiral,
)


@dataclass(frozen=True)
class Quiver:
    """Finite quiver with multiplicities and optional frozen/framing data."""

    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[str, str, int], ...]
    framing_pairs: Tuple[Tuple[str, str], ...] = ()
    frozen: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        counts: Dict[Tuple[str, str], int] = {}
        for s, d, m in self.arrows:
            if s not in seen or d not in seen:
                raise UnknownVertex(f"arrow {s}->{d} leaves the vertex set")
            if m < 1:
                raise ValueError(f"arrow {s}->{d} with multiplicity {m}")
            counts[(s, d)] = counts.get((s, d), 0) + m
        object.__setattr__(
            self,
            "arrows",
            tuple((s, d, counts[(s, d)]) for s, d in sorted(counts)),
        )
        for pair in self.framing_pairs:
            for v in pair:
                if v not in seen:
                    raise UnknownVertex(f"framing vertex {v!r} missing")
        for v in self.frozen:
            if v not in seen:
                raise UnknownVertex(f"frozen vertex {v!r} missing")

    def mult(self, src: str, dst: str) -> int:
        for s, d, m in self.arrows:
            if s == src and d == dst:
                return m
        return 0

    def counts(self) -> Dict[Tuple[str, str], int]:
        return {(s, d): m for s, d, m in self.arrows}

    def arrow_pairs(self) -> List[Tuple[str, str]]:
        """Every arrow as a (src, dst) pair, repeated by multiplicity."""
        out = []
        for s, d, m in self.arrows:
            out.extend([(s, d)] * m)
        return out


def quiver_from_pairs(
    vertices: Sequence[str],
    pairs: Sequence[Tuple[str, str]],
    framing_pairs: Sequence[Tuple[str, str]] = (),
    frozen: Sequence[str] = (),
) -> Quiver:
    return Quiver(
        tuple(vertices),
        tuple((s, d, 1) for s, d in pairs),
        tuple(framing_pairs),
        tuple(frozen),
    )


# ---------------------------------------------------------------------------
# adjacency quiver of a triangulation


@dataclass(frozen=True)
class Corner:
    """Two angularly neighbouring ends at a point; spans one triangle corner."""

    side: Boundary
    x: int
    lower: ArcLift
    upper: ArcLift

    @property
    def src(self) -> str:
        return self.upper.arc_id

    @property
    def dst(self) -> str:
        return self.lower.arc_id


def corner_records(t: Triangulation) -> List[Corner]:
    """All triangle corners between two arcs, one per deck orbit."""
    corners: List[Corner] = []
    for o in range(t.ann.p):
        ends = ends_at_outer(t, o)
        for (_, lo), (_, hi) in zip(ends, ends[1:]):
            corners.append(Corner(OUTER, o * t.ann.q, lo, hi))
    for i in range(t.ann.q):
        ends = ends_at_inner(t, i)
        for (_, lo), (_, hi) in zip(ends, ends[1:]):
            corners.append(Corner(INNER, i * t.ann.p, lo, hi))
    return corners


def _spiral_adjacency(t: Triangulation) -> List[Tuple[str, str]]:
    """Arrows between neighbouring spirals at the closed end of each side."""
    out: List[Tuple[str, str]] = []
    for boundary in (OUTER, INNER):
        spirals = sorted(
            ((a.point, i) for i, a in t.arcs if is_spiral(a) and a.boundary is boundary),
        )
        if not spirals:
            continue
        kind = type(t.arc(spirals[0][1]))
        ids = [i for _, i in spirals]
        n = len(ids)
        for k in range(n):
            earlier, later = ids[k], ids[(k + 1) % n]
            # outer Prufer / inner adic spiral arrows run right to left
            if (boundary is OUTER) == (kind is Prufer):
                out.append((later, earlier))
            else:
                out.append((earlier, later))
    return out


def quiver_of(t: Triangulation) -> Quiver:
    """Adjacency quiver of the triangulation (loops and 2-cycles allowed)."""
    pairs = [(c.src, c.dst) for c in corner_records(t)]
    pairs += _spiral_adjacency(t)
    return quiver_from_pairs(t.ids, pairs)


# ---------------------------------------------------------------------------
# mutation and orderings


def mutate(q: Quiver, k: str) -> Quiver:
    """Quiver mutation at k; refuses frozen, framing, loop or 2-cycle vertices."""
    if k not in q.vertices:
        raise UnknownVertex(f"no vertex {k!r}")
    if k in q.frozen:
        raise NotMutable(f"vertex {k!r} is frozen")
    if any(k in pair for pair in q.framing_pairs):
        raise NotMutable(f"vertex {k!r} belongs to a framing pair")
    counts = q.counts()
    if counts.get((k, k)):
        raise NotMutable(f"loop at {k!r}")
    for v in q.vertices:
        if counts.get((v, k)) and counts.get((k, v)):
            raise NotMutable(f"2-cycle between {v!r} and {k!r}")
    created: Dict[Tuple[str, str], int] = {}
    for (s, d), m in counts.items():
        if d == k:
            for (s2, d2), m2 in counts.items():
                if s2 == k:
                    key = (s, d2)
                    created[key] = created.get(key, 0) + m * m2
    out: Dict[Tuple[str, str], int] = {}
    for (s, d), m in counts.items():
        if s == k or d == k:
            out[(d, s)] = out.get((d, s), 0) + m
        else:
            out[(s, d)] = out.get((s, d), 0) + m
    for key, m in created.items():
        out[key] = out.get(key, 0) + m
    for (s, d), m in created.items():
        # cancel only the 2-cycles that step one created
        c = min(m, out.get((s, d), 0), out.get((d, s), 0))
        if c > 0:
            out[(s, d)] -= c
            out[(d, s)] -= c
    arrows = tuple((s, d, m) for (s, d), m in sorted(out.items()) if m > 0)
    return Quiver(q.vertices, arrows, q.framing_pairs, q.frozen)


def sources(q: Quiver) -> List[str]:
    counts = q.counts()
    return [
        v for v in q.vertices
        if not any(counts.get((u, v)) for u in q.vertices)
    ]


def _reflect(counts: Dict[Tuple[str, str], int], v: str) -> Dict[Tuple[str, str], int]:
    out: Dict[Tuple[str, str], int] = {}
    for (s, d), m in counts.items():
        key = (d, s) if (s == v or d == v) else (s, d)
        out[key] = out.get(key, 0) + m
    return out


def is_admissible(q: Quiver, ordering: Sequence[str]) -> bool:
    """Is each vertex a source once its predecessors have been reflected?"""
    if sorted(ordering) != sorted(q.vertices):
        return False
    counts = q.counts()
    for v in ordering:
        if any(counts.get((u, v)) for u in q.vertices):
            return False
        counts = _reflect(counts, v)
    return True


def admissible_ordering(q: Quiver) -> Tuple[str, ...]:
    """First admissible ordering by vertex order; raises if none exists."""
    counts = q.counts()
    remaining = list(q.vertices)
    order: List[str] = []
    while remaining:
        srcs = [
            v for v in remaining
            if not any(counts.get((u, v)) for u in remaining)
        ]
        if not srcs:
            raise NoAdmissibleOrdering(
                f"no source among {remaining} (cycle or loop)"
            )
        v = srcs[0]
        order.append(v)
        remaining.remove(v)
    return tuple(order)


def admissible_orderings(q: Quiver) -> Iterator[Tuple[str, ...]]:
    """Every admissible ordering (topological orders of the quiver)."""
    counts = q.counts()

    def rec(remaining: List[str], acc: List[str]) -> Iterator[Tuple[str, ...]]:
        if not remaining:
            yield tuple(acc)
            return
        for v in remaining:
            if not any(counts.get((u, v)) for u in remaining):
                yield from rec([u for u in remaining if u != v], acc + [v])

    yield from rec(list(q.vertices), [])


def coxeter_quiver(q: Quiver, ordering: Optional[Sequence[str]] = None) -> Quiver:
    """Reflect at sources along the ordering, first entry first."""
    if ordering is None:
        ordering = admissible_ordering(q)
    if not is_admissible(q, ordering):
        raise NoAdmissibleOrdering(f"ordering {ordering} is not admissible")
    counts = q.counts()
    for v in ordering:
        counts = _reflect(counts, v)
    arrows = tuple((s, d, m) for (s, d), m in sorted(counts.items()) if m > 0)
    return Quiver(q.vertices, arrows, q.framing_pairs, q.frozen)


# ---------------------------------------------------------------------------
# lattice forms


def euler_matrix(q: Quiver) -> List[List[int]]:
    n = len(q.vertices)
    index = {v: i for i, v in enumerate(q.vertices)}
    mat = [[int(i == j) for j in range(n)] for i in range(n)]
    for s, d, m in q.arrows:
        mat[index[s]][index[d]] -= m
    return mat


def sym_matrix(q: Quiver) -> List[List[int]]:
    e = euler_matrix(q)
    n = len(e)
    return [[e[i][j] + e[j][i] for j in range(n)] for i in range(n)]


def euler_form(q: Quiver, x: Sequence[int], y: Sequence[int]) -> int:
    e = euler_matrix(q)
    n = len(e)
    return sum(x[i] * e[i][j] * y[j] for i in range(n) for j in range(n))


def reflection(q: Quiver, v: str, x: Sequence[int]) -> Tuple[int, ...]:
    """Simple reflection of the dimension vector at the loop-free vertex v."""
    if v not in q.vertices:
        raise UnknownVertex(f"no vertex {v!r}")
    if q.mult(v, v):
        raise LoopAtVertex(f"reflection undefined at loop vertex {v!r}")
    s = sym_matrix(q)
    i = q.vertices.index(v)
    pairing = sum(s[i][j] * x[j] for j in range(len(q.vertices)))
    out = list(x)
    out[i] -= pairing
    return tuple(out)


def coxeter_vector(
    q: Quiver, ordering: Sequence[str], x: Sequence[int]
) -> Tuple[int, ...]:
    """Compose the reflections along the ordering, first entry first."""
    if sorted(ordering) != sorted(q.vertices):
        raise UnknownVertex(f"ordering {ordering} is not a permutation")
    vec = tuple(x)
    for v in ordering:
        vec = reflection(q, v, vec)
    return vec


# ---------------------------------------------------------------------------
# frames of asymptotic boundary sides


def _frame_data(t: Triangulation, framing_arc_id: str):
    arc = t.arc(framing_arc_id)
    if not is_spiral(arc):
        raise NotStrictlyAsymptotic(f"arc {framing_arc_id!r} does not spiral")
    boundary = arc.boundary
    side = t.side(boundary)
    period = t.ann.period(boundary)
    # map every side arc into the convention "spirals head right on the
    # bottom edge"; mirrored configurations are computed there and their
    # arrows reversed afterwards (a mirror reverses the orientation)
    kind = type(arc)
    mirrored = (boundary is OUTER) == (kind is Adic)
    entries: List[Tuple[str, Arc]] = []
    for arc_id, a in side:
        if mirrored:
            if isinstance(a, Peripheral):
                a = Peripheral(a.boundary, -a.b, -a.a)
            else:
                a = type(a)(a.boundary, -a.point)
        entries.append((arc_id, a))
    return entries, period, mirrored


def framed_quiver(t: Triangulation, framing_arc_id: str) -> Quiver:
    """Quiver of the frame cut along the lifts of the framing spiral arc."""
    entries, period, mirrored = _frame_data(t, framing_arc_id)
    framing = dict(entries)[framing_arc_id]
    m0 = framing.point % period
    left = f"{framing_arc_id}_left"
    right = f"{framing_arc_id}_right"

    apex: List[Tuple[int, str]] = [(m0, left), (m0 + period, right)]
    humps: List[Tuple[int, int, str]] = []  # (start, width, id)
    for arc_id, a in entries:
        if arc_id == framing_arc_id:
            continue
        if isinstance(a, Peripheral):
            w = a.b - a.a
            start = m0 + (a.a - m0) % period
            if start + w > m0 + period:
                raise NotStrictlyAsymptotic(
                    f"arc {arc_id!r} crosses the framing arc"
                )
            humps.append((start, w, arc_id))
        else:
            apex.append((m0 + (a.point - m0) % period, arc_id))
    apex.sort()

    pairs: List[Tuple[str, str]] = []
    for (_, lo), (_, hi) in zip(apex, apex[1:]):
        pairs.append((hi, lo))
    for x in range(m0, m0 + period + 1):
        ends: List[Tuple[Tuple, str]] = []
        for start, w, arc_id in humps:
            if start == x:
                ends.append(((0, w, arc_id), arc_id))
            if start + w == x:
                ends.append(((2, -w, arc_id), arc_id))
        for u, vid in apex:
            if u == x:
                ends.append(((1, 0, vid), vid))
        ends.sort(key=lambda e: e[0])
        for (_, lo), (_, hi) in zip(ends, ends[1:]):
            pairs.append((hi, lo))

    if mirrored:
        pairs = [(d, s) for s, d in pairs]
    vertices = [left, right] + [i for i, _ in entries if i != framing_arc_id]
    return quiver_from_pairs(vertices, pairs, framing_pairs=[(left, right)])


def switch_frame(t: Triangulation, q: Quiver, new_framing_vertex: str) -> Quiver:
    """Re-cut the frame at another spiralling arc of the same side."""
    if len(q.framing_pairs) != 1:
        raise NotStrictlyAsymptotic("quiver carries no framing pair")
    left, _right = q.framing_pairs[0]
    if not left.endswith("_left"):
        raise NotStrictlyAsymptotic(f"unrecognized framing vertex {left!r}")
    current = left[: -len("_left")]
    built = framed_quiver(t, current)
    if (
        set(q.vertices) != set(built.vertices)
        or q.counts() != built.counts()
        or set(q.framing_pairs) != set(built.framing_pairs)
    ):
        raise ValueError("frame switching is defined on the quiver of a frame")
    boundary = t.arc(current).boundary
    spirals = [i for i, a in t.side(boundary) if is_spiral(a)]
    if len(spirals) < 2:
        raise NoOtherStrictAsymptoticArc(
            f"{boundary.value} side has a single spiralling arc"
        )
    if new_framing_vertex not in t.ids:
        raise UnknownArcId(f"no arc named {new_framing_vertex!r}")
    if new_framing_vertex not in spirals:
        raise NotStrictlyAsymptotic(
            f"arc {new_framing_vertex!r} is not a spiral on that side"
        )
    return framed_quiver(t, new_framing_vertex)


# ---------------------------------------------------------------------------
# isomorphism and components


def _signature(q: Quiver, counts: Dict[Tuple[str, str], int], v: str) -> Tuple:
    outs = sorted(m for (s, d), m in counts.items() if s == v and d != v)
    ins = sorted(m for (s, d), m in counts.items() if d == v and s != v)
    return (tuple(outs), tuple(ins), counts.get((v, v), 0))


def is_isomorphic(q1: Quiver, q2: Quiver, respect_frozen: bool = False) -> bool:
    """Backtracking isomorphism test on the labelled arrow multiplicities."""
    if len(q1.vertices) != len(q2.vertices):
        return False
    c1, c2 = q1.counts(), q2.counts()
    if sorted(c1.values()) != sorted(c2.values()):
        return False
    sig1 = {v: _signature(q1, c1, v) for v in q1.vertices}
    sig2 = {v: _signature(q2, c2, v) for v in q2.vertices}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return False
    if respect_frozen and len(q1.frozen) != len(q2.frozen):
        return False
    order = sorted(q1.vertices, key=lambda v: (sig1[v], v))
    mapping: Dict[str, str] = {}
    used = set()

    def ok(v: str, w: str) -> bool:
        if sig1[v] != sig2[w]:
            return False
        if respect_frozen and ((v in q1.frozen) != (w in q2.frozen)):
            return False
        for u, image in mapping.items():
            if c1.get((v, u), 0) != c2.get((w, image), 0):
                return False
            if c1.get((u, v), 0) != c2.get((image, w), 0):
                return False
        return True

    def rec(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for w in q2.vertices:
            if w not in used and ok(v, w):
                mapping[v] = w
                used.add(w)
                if rec(pos + 1):
                    return True
                del mapping[v]
                used.remove(w)
        return False

    return rec(0)


def components(q: Quiver) -> List[Tuple[str, ...]]:
    """Connected components of the underlying graph, in vertex order."""
    adj: Dict[str, set] = {v: set() for v in q.vertices}
    for s, d, _ in q.arrows:
        adj[s].add(d)
        adj[d].add(s)
    seen: set = set()
    out: List[Tuple[str, ...]] = []
    for v in q.vertices:
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(tuple(sorted(comp, key=q.vertices.index)))
    return out
