"""Arcs and triangulations of the annulus with marked boundary points.

Everything is exact integer combinatorics in the universal cover: the
annulus unrolls to a horizontal strip whose bottom edge carries the outer
boundary points at x = o*q and whose top edge carries the inner boundary
points at x = i*p.  The deck translation acts on bridging lifts by
(o, i) -> (o + p, i + q).  Working with straight-line lifts makes every
crossing test a finite sign check, so no floating point is involved.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from .errors import (
    IncompatibleInput,
    MalformedArc,
    TooLarge,
    UnknownArcId,
)


class Boundary(str, Enum):
    OUTER = "outer"
    INNER = "inner"


OUTER = Boundary.OUTER
INNER = Boundary.INNER

FINITE = "finite"
ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class Annulus:
    """Shape of the surface: p outer and q inner marked points."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 0:
            raise ValueError(f"invalid shape ({self.p}, {self.q})")

    def period(self, boundary: Boundary) -> int:
        """Number of marked points on the given boundary."""
        return self.p if boundary is OUTER else self.q

    def spacing(self, boundary: Boundary) -> int:
        """Horizontal distance between neighbouring lifts on that edge."""
        return self.q if boundary is OUTER else self.p


@dataclass(frozen=True)
class MarkedPoint:
    """A lift of a marked point; `lift` counts copies along the cover."""

    boundary: Boundary
    lift: int

    def point(self, ann: Annulus) -> int:
        return self.lift % ann.period(self.boundary)


@dataclass(frozen=True)
class Bridging:
    """Arc between the boundaries: bottom lift o*q joined to top lift i*p."""

    outer: int
    inner: int


@dataclass(frozen=True)
class Peripheral:
    """Arc with both ends on one boundary, spanning lifts a < b."""

    boundary: Boundary
    a: int
    b: int


@dataclass(frozen=True)
class Prufer:
    """Strictly asymptotic arc spiralling one way from the given point."""

    boundary: Boundary
    point: int


@dataclass(frozen=True)
class Adic:
    """Strictly asymptotic arc spiralling the opposite way."""

    boundary: Boundary
    point: int


Arc = Union[Bridging, Peripheral, Prufer, Adic]
Spiral = (Prufer, Adic)


def is_spiral(arc: Arc) -> bool:
    return isinstance(arc, Spiral)


def is_finite_arc(arc: Arc) -> bool:
    return isinstance(arc, (Bridging, Peripheral))


def validate_arc(arc: Arc, ann: Annulus) -> None:
    """Raise MalformedArc unless the arc makes sense on this shape."""
    if isinstance(arc, Bridging):
        if ann.q < 1:
            raise MalformedArc("bridging arc needs inner marked points")
        return
    period = ann.period(arc.boundary)
    if period < 1:
        raise MalformedArc(f"no marked points on {arc.boundary.value}")
    if isinstance(arc, Peripheral):
        width = arc.b - arc.a
        if not 2 <= width <= period:
            raise MalformedArc(
                f"peripheral width {width} outside [2, {period}] on {arc.boundary.value}"
            )


def canonicalize(arc: Arc, ann: Annulus) -> Arc:
    """Translate by the deck action into the canonical window."""
    validate_arc(arc, ann)
    if isinstance(arc, Bridging):
        k = arc.outer // ann.p
        return Bridging(arc.outer - k * ann.p, arc.inner - k * ann.q)
    period = ann.period(arc.boundary)
    if isinstance(arc, Peripheral):
        k = arc.a // period
        return Peripheral(arc.boundary, arc.a - k * period, arc.b - k * period)
    if isinstance(arc, Prufer):
        return Prufer(arc.boundary, arc.point % period)
    return Adic(arc.boundary, arc.point % period)


def _point_in_interior(m: int, a: int, b: int, period: int) -> bool:
    """Is some lift m + k*period strictly inside (a, b)?"""
    r = (m - a) % period
    return 0 < r < b - a


def _arc_sort_key(arc: Arc) -> Tuple:
    if isinstance(arc, Bridging):
        return (0, arc.outer, arc.inner)
    rank = {Peripheral: 1, Prufer: 2, Adic: 3}[type(arc)]
    rest = (arc.a, arc.b) if isinstance(arc, Peripheral) else (arc.point,)
    return (rank, arc.boundary.value) + rest


@lru_cache(maxsize=None)
def _crosses_canonical(x: Arc, y: Arc, p: int, q: int) -> bool:
    ann = Annulus(p, q)
    if isinstance(x, Bridging) and isinstance(y, Bridging):
        b1, t1 = x.outer * q, x.inner * p
        b2, t2 = y.outer * q, y.inner * p
        m = p * q
        span = (abs(b1) + abs(t1) + abs(b2) + abs(t2)) // m + 2
        for k in range(-span, span + 1):
            if (b1 - b2 - k * m) * (t1 - t2 - k * m) < 0:
                return True
        return False
    if isinstance(x, Bridging) or isinstance(y, Bridging):
        br, other = (x, y) if isinstance(x, Bridging) else (y, x)
        if is_spiral(other):
            return True
        base = br.outer if other.boundary is OUTER else br.inner
        return _point_in_interior(base, other.a, other.b, ann.period(other.boundary))
    if x.boundary != y.boundary:
        return False
    period = ann.period(x.boundary)
    if isinstance(x, Peripheral) and isinstance(y, Peripheral):
        for k in range(-3, 4):
            a2, b2 = y.a + k * period, y.b + k * period
            if x.a < a2 < x.b < b2 or a2 < x.a < b2 < x.b:
                return True
        return False
    if isinstance(x, Peripheral) or isinstance(y, Peripheral):
        peri, spiral = (x, y) if isinstance(x, Peripheral) else (y, x)
        return _point_in_interior(spiral.point, peri.a, peri.b, period)
    # two spirals on the same boundary: opposite directions always cross
    return type(x) is not type(y)


def crosses(x: Arc, y: Arc, ann: Annulus) -> bool:
    """Do the two arcs intersect in every realization (endpoints excluded)?"""
    x = canonicalize(x, ann)
    y = canonicalize(y, ann)
    if x == y:
        return False
    if _arc_sort_key(y) < _arc_sort_key(x):
        x, y = y, x
    return _crosses_canonical(x, y, ann.p, ann.q)


def compatible(x: Arc, y: Arc, ann: Annulus) -> bool:
    return not crosses(x, y, ann)


@dataclass(frozen=True)
class Triangulation:
    """Maximal collection of pairwise compatible arcs, with stable ids."""

    ann: Annulus
    arcs: Tuple[Tuple[str, Arc], ...]

    def __post_init__(self) -> None:
        ann = self.ann
        if ann.q < 1:
            raise MalformedArc("triangulations need marked points on both boundaries")
        canon = tuple((i, canonicalize(a, ann)) for i, a in self.arcs)
        object.__setattr__(self, "arcs", canon)
        ids = [i for i, _ in canon]
        if len(set(ids)) != len(ids):
            raise IncompatibleInput(f"duplicate arc ids in {ids}")
        n = ann.p + ann.q
        if len(canon) != n:
            raise IncompatibleInput(f"expected {n} arcs, got {len(canon)}")
        payloads = [a for _, a in canon]
        if len(set(payloads)) != len(payloads):
            raise IncompatibleInput("duplicate arcs")
        for (i1, a1), (i2, a2) in itertools.combinations(canon, 2):
            if crosses(a1, a2, ann):
                raise IncompatibleInput(f"arcs {i1} and {i2} cross")
        if any(is_spiral(a) for a in payloads):
            for boundary in (OUTER, INNER):
                side = [
                    a for a in payloads
                    if not isinstance(a, Bridging) and a.boundary is boundary
                ]
                if len(side) != ann.period(boundary):
                    raise IncompatibleInput(
                        f"{boundary.value} side has {len(side)} arcs, "
                        f"wanted {ann.period(boundary)}"
                    )

    @property
    def kind(self) -> str:
        return ASYMPTOTIC if any(is_spiral(a) for _, a in self.arcs) else FINITE

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(i for i, _ in self.arcs)

    def arc(self, arc_id: str) -> Arc:
        for i, a in self.arcs:
            if i == arc_id:
                return a
        raise UnknownArcId(f"no arc named {arc_id!r}")

    def with_arc(self, arc_id: str, arc: Arc) -> "Triangulation":
        if arc_id not in self.ids:
            raise UnknownArcId(f"no arc named {arc_id!r}")
        pairs = tuple((i, arc if i == arc_id else a) for i, a in self.arcs)
        return Triangulation(self.ann, pairs)

    def side(self, boundary: Boundary) -> Tuple[Tuple[str, Arc], ...]:
        """Arcs touching only the given boundary (asymptotic decomposition)."""
        return tuple(
            (i, a) for i, a in self.arcs
            if not isinstance(a, Bridging) and a.boundary is boundary
        )


def _peripheral_candidates(ann: Annulus) -> List[Peripheral]:
    out: List[Peripheral] = []
    for boundary in (OUTER, INNER):
        period = ann.period(boundary)
        for a in range(period):
            for width in range(2, period + 1):
                out.append(Peripheral(boundary, a, a + width))
    return out


def _bridging_candidates(ann: Annulus, lo: int, hi: int) -> List[Bridging]:
    return [Bridging(o, i) for o in range(ann.p) for i in range(lo, hi + 1)]


def _spiral_candidates(ann: Annulus) -> List[Arc]:
    out: List[Arc] = []
    for boundary in (OUTER, INNER):
        out.extend(Prufer(boundary, m) for m in range(ann.period(boundary)))
    for boundary in (OUTER, INNER):
        out.extend(Adic(boundary, m) for m in range(ann.period(boundary)))
    return out


def complete_to_triangulation(
    ann: Annulus,
    partial: Iterable[Union[Arc, Tuple[str, Arc]]] = (),
) -> Triangulation:
    """Greedily extend the given compatible arcs to a full triangulation.

    Candidates are tried in a fixed order (bridging arcs by lift, then
    peripheral arcs by position, then spirals), so the result is
    deterministic; fresh arcs are named a1, a2, ...
    """
    pairs: List[Tuple[str, Arc]] = []
    fresh = 0
    for entry in partial:
        if isinstance(entry, tuple) and len(entry) == 2 and isinstance(entry[0], str):
            pairs.append((entry[0], canonicalize(entry[1], ann)))
        else:
            fresh += 1
            pairs.append((f"a{fresh}", canonicalize(entry, ann)))
    for (i1, a1), (i2, a2) in itertools.combinations(pairs, 2):
        if crosses(a1, a2, ann):
            raise IncompatibleInput(f"arcs {i1} and {i2} cross")
    used_ids = {i for i, _ in pairs}
    chosen = [a for _, a in pairs]
    present = set(chosen)

    slack = ann.p + ann.q
    lifts = [a.inner for a in chosen if isinstance(a, Bridging)]
    lo, hi = (min(lifts) - slack, max(lifts) + slack) if lifts else (0, slack)
    candidates: List[Arc] = list(_bridging_candidates(ann, lo, hi))
    candidates += _peripheral_candidates(ann)
    candidates += _spiral_candidates(ann)

    target = ann.p + ann.q
    for cand in candidates:
        if len(chosen) == target:
            break
        if cand in present:
            continue
        if all(not crosses(cand, a, ann) for a in chosen):
            chosen.append(cand)
            present.add(cand)
            while f"a{fresh + 1}" in used_ids:
                fresh += 1
            fresh += 1
            name = f"a{fresh}"
            used_ids.add(name)
            pairs.append((name, cand))
    if len(chosen) != target:
        raise IncompatibleInput(
            f"could not complete: reached {len(chosen)} of {target} arcs"
        )
    return Triangulation(ann, tuple(pairs))


LiftEnd = Tuple[str, int]


@dataclass(frozen=True)
class ArcLift:
    """One lift of an arc, identified by its endpoint positions."""

    arc_id: str
    ends: Tuple[LiftEnd, ...]


def ends_at_outer(t: Triangulation, o: int) -> List[Tuple[Tuple, ArcLift]]:
    """Arc ends at the outer lift o, sorted by angle from the right ray.

    Rightward peripheral humps come first (narrow before wide), then
    bridging lifts by the position of their inner end (east to west) or
    the spiralling arc, then leftward humps (wide before narrow).
    """
    ann = t.ann
    x = o * ann.q
    out: List[Tuple[Tuple, ArcLift]] = []
    for arc_id, arc in t.arcs:
        if isinstance(arc, Bridging):
            if (o - arc.outer) % ann.p == 0:
                k = (o - arc.outer) // ann.p
                top = (arc.inner + k * ann.q) * ann.p
                lift = ArcLift(arc_id, (("outer", x), ("inner", top)))
                out.append(((1, -top, arc_id), lift))
        elif isinstance(arc, Peripheral) and arc.boundary is OUTER:
            w = arc.b - arc.a
            if (o - arc.a) % ann.p == 0:
                lift = ArcLift(arc_id, (("outer", x), ("outer", x + w * ann.q)))
                out.append(((0, w, arc_id), lift))
            if (o - arc.b) % ann.p == 0:
                lift = ArcLift(arc_id, (("outer", x - w * ann.q), ("outer", x)))
                out.append(((2, -w, arc_id), lift))
        elif is_spiral(arc) and arc.boundary is OUTER:
            if (o - arc.point) % ann.p == 0:
                lift = ArcLift(arc_id, (("outer", x), ("meridian", 0)))
                out.append(((1, 0, arc_id), lift))
    out.sort(key=lambda e: e[0])
    return out


def ends_at_inner(t: Triangulation, i: int) -> List[Tuple[Tuple, ArcLift]]:
    """Arc ends at the inner lift i, sorted by angle from the left ray."""
    ann = t.ann
    x = i * ann.p
    out: List[Tuple[Tuple, ArcLift]] = []
    for arc_id, arc in t.arcs:
        if isinstance(arc, Bridging):
            if (i - arc.inner) % ann.q == 0:
                k = (i - arc.inner) // ann.q
                foot = (arc.outer + k * ann.p) * ann.q
                lift = ArcLift(arc_id, (("outer", foot), ("inner", x)))
                out.append(((1, foot, arc_id), lift))
        elif isinstance(arc, Peripheral) and arc.boundary is INNER:
            w = arc.b - arc.a
            if (i - arc.b) % ann.q == 0:
                lift = ArcLift(arc_id, (("inner", x - w * ann.p), ("inner", x)))
                out.append(((0, w, arc_id), lift))
            if (i - arc.a) % ann.q == 0:
                lift = ArcLift(arc_id, (("inner", x), ("inner", x + w * ann.p)))
                out.append(((2, -w, arc_id), lift))
        elif is_spiral(arc) and arc.boundary is INNER:
            if (i - arc.point) % ann.q == 0:
                lift = ArcLift(arc_id, (("inner", x), ("meridian", 0)))
                out.append(((1, 0, arc_id), lift))
    out.sort(key=lambda e: e[0])
    return out


def _far_end(lift: ArcLift, here: LiftEnd) -> LiftEnd:
    a, b = lift.ends
    return b if a == here else a


def _face_vertex(
    t: Triangulation,
    boundary: Boundary,
    index: int,
    me: Tuple[Tuple, ArcLift],
    direction: int,
) -> LiftEnd:
    """Third vertex of the face beside the given arc end.

    The neighbouring end in the angular order supplies it; past either end
    of the order the face is closed off by a boundary segment, whose far
    corner is the adjacent marked lift.
    """
    if boundary is OUTER:
        ends = ends_at_outer(t, index)
        here: LiftEnd = ("outer", index * t.ann.q)
        ray = ("outer", here[1] - t.ann.q if direction > 0 else here[1] + t.ann.q)
    else:
        ends = ends_at_inner(t, index)
        here = ("inner", index * t.ann.p)
        ray = ("inner", here[1] + t.ann.p if direction > 0 else here[1] - t.ann.p)
    j = ends.index(me) + direction
    if 0 <= j < len(ends):
        return _far_end(ends[j][1], here)
    return ray


def _locate_end(
    t: Triangulation, boundary: Boundary, index: int, lift: ArcLift, group: int
) -> Tuple[Tuple, ArcLift]:
    ends = ends_at_outer(t, index) if boundary is OUTER else ends_at_inner(t, index)
    for key, cand in ends:
        if cand == lift and key[0] == group:
            return (key, cand)
    raise IncompatibleInput(f"arc {lift.arc_id!r} has no end at {boundary.value} {index}")


def _arc_between(a: LiftEnd, b: LiftEnd, ann: Annulus) -> Arc:
    if a[0] != b[0]:
        xo = a[1] if a[0] == "outer" else b[1]
        xi = a[1] if a[0] == "inner" else b[1]
        return Bridging(xo // ann.q, xi // ann.p)
    boundary = OUTER if a[0] == "outer" else INNER
    s = ann.spacing(boundary)
    lo, hi = sorted((a[1] // s, b[1] // s))
    return Peripheral(boundary, lo, hi)


def _flip_finite(t: Triangulation, arc_id: str, old: Arc) -> Arc:
    """Other diagonal of the quadrilateral formed by the two faces at the arc."""
    ann = t.ann
    if isinstance(old, Bridging):
        lift = ArcLift(arc_id, (("outer", old.outer * ann.q), ("inner", old.inner * ann.p)))
        spots = [(OUTER, old.outer, 1), (INNER, old.inner, 1)]
    else:
        boundary = old.boundary
        s = ann.spacing(boundary)
        lift = ArcLift(arc_id, ((boundary.value, old.a * s), (boundary.value, old.b * s)))
        spots = [(boundary, old.a, 0), (boundary, old.b, 2)]
        if boundary is INNER:
            spots = [(boundary, old.b, 0), (boundary, old.a, 2)]
    (bd1, i1, g1), (bd2, i2, g2) = spots
    me1 = _locate_end(t, bd1, i1, lift, g1)
    me2 = _locate_end(t, bd2, i2, lift, g2)
    corners: List[LiftEnd] = []
    for s_dir in (1, -1):
        x1 = _face_vertex(t, bd1, i1, me1, s_dir)
        x2 = _face_vertex(t, bd2, i2, me2, -s_dir)
        if x1 != x2:
            raise IncompatibleInput(
                f"faces at {arc_id!r} disagree: {x1} vs {x2}"
            )
        corners.append(x1)
    return _arc_between(corners[0], corners[1], ann)


def _flip_asymptotic(t: Triangulation, arc_id: str, old: Arc) -> Arc:
    rest = [a for i, a in t.arcs if i != arc_id]
    present = set(rest)
    options = [
        cand
        for cand in _peripheral_candidates(t.ann) + _spiral_candidates(t.ann)
        if cand != old and cand not in present
        and all(not crosses(cand, a, t.ann) for a in rest)
    ]
    if len(options) != 1:
        raise IncompatibleInput(
            f"flip of {arc_id!r} found {len(options)} replacements"
        )
    return options[0]


def flip(t: Triangulation, arc_id: str) -> Triangulation:
    """Replace the arc by the unique other arc completing the rest."""
    old = t.arc(arc_id)
    if t.kind == FINITE:
        new = _flip_finite(t, arc_id, old)
    else:
        new = _flip_asymptotic(t, arc_id, old)
    return t.with_arc(arc_id, new)


def bounding_arcs(t: Triangulation) -> Tuple[str, ...]:
    """Finite arcs whose flip changes class (to bridging, or to a spiral)."""
    out = []
    for arc_id, arc in t.arcs:
        if not isinstance(arc, Peripheral):
            continue
        flipped = flip(t, arc_id).arc(arc_id)
        if t.kind == FINITE and isinstance(flipped, Bridging):
            out.append(arc_id)
        elif t.kind == ASYMPTOTIC and is_spiral(flipped):
            out.append(arc_id)
    return tuple(out)


def _compatible_subsets(
    pool: Sequence[Arc], ann: Annulus, size: int
) -> Iterator[Tuple[Arc, ...]]:
    """All pairwise-compatible subsets of the pool of the given size."""
    n = len(pool)
    masks = []
    for i in range(n):
        m = 0
        for j in range(n):
            if i != j and not crosses(pool[i], pool[j], ann):
                m |= 1 << j
        masks.append(m)
    all_mask = (1 << n) - 1

    def rec(start: int, chosen: List[Arc], allowed: int) -> Iterator[Tuple[Arc, ...]]:
        if len(chosen) == size:
            yield tuple(chosen)
            return
        remaining = allowed >> start
        if remaining.bit_count() < size - len(chosen):
            return
        for i in range(start, n):
            if allowed & (1 << i):
                chosen.append(pool[i])
                yield from rec(i + 1, chosen, allowed & masks[i])
                chosen.pop()

    yield from rec(0, [], all_mask)


def enumerate_triangulations(ann: Annulus, kind: str = FINITE) -> List[Triangulation]:
    """Every triangulation of the given kind, once up to arc relabelling.

    Bridging lifts are confined to the window [-(p+q), p+q]; triangulations
    winding further are deck or twist translates of listed ones.  The kind
    "bridging" restricts to triangulations whose arcs all join the two
    boundaries.
    """
    if ann.p + ann.q > 12:
        raise TooLarge(f"enumeration capped at p+q <= 12, got {ann.p + ann.q}")
    n = ann.p + ann.q
    out: List[Triangulation] = []
    if kind in (FINITE, "bridging"):
        band = ann.p + ann.q
        pool: List[Arc] = list(_bridging_candidates(ann, -band, band))
        if kind == FINITE:
            pool += _peripheral_candidates(ann)
        for arcs in _compatible_subsets(pool, ann, n):
            out.append(
                Triangulation(ann, tuple((f"d{k+1}", a) for k, a in enumerate(arcs)))
            )
        return out
    if kind != ASYMPTOTIC:
        raise ValueError(f"unknown kind {kind!r}")
    sides: Dict[Boundary, List[Tuple[Arc, ...]]] = {}
    for boundary in (OUTER, INNER):
        period = ann.period(boundary)
        pool = [
            a for a in _spiral_candidates(ann) + list(_peripheral_candidates(ann))
            if a.boundary is boundary
        ]
        sides[boundary] = list(_compatible_subsets(pool, ann, period))
    for outer_side in sides[OUTER]:
        for inner_side in sides[INNER]:
            arcs = outer_side + inner_side
            out.append(
                Triangulation(ann, tuple((f"d{k+1}", a) for k, a in enumerate(arcs)))
            )
    return out
