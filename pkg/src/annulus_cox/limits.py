"""Boundary quivers of the spiralling limits, by contraction.

A bridging triangulation's quiver is an unoriented cycle once drawn in the
plane.  Contracting its clockwise runs gives the quiver of one spiralling
boundary, its counter-clockwise runs the other; with peripheral arcs the
same contractions run inside the bridging shape, after killing the hanging
cycles attached to each contracted run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Set, Tuple

from .errors import MalformedInput, NotACycleQuiver, NotBridging, ShapeNotSubquiver
from .quiver import Quiver, quiver_of
from .surface import Bridging, Triangulation
from .transforms import Direction, dehn_limit

CW, CCW = "cw", "ccw"


@dataclass(frozen=True)
class CyclicQuiverView:
    """A quiver together with the cyclic order its planar drawing follows."""

    quiver: Quiver
    cyclic_order: Tuple[str, ...]

    def __post_init__(self):
        if sorted(self.cyclic_order) != sorted(self.quiver.vertices):
            raise MalformedInput("cyclic order must list every vertex once")


def _id_key(v: str) -> Tuple[int, str]:
    return (len(v), v)


def _classify_slots(
    q: Quiver, order: Sequence[str]
) -> Tuple[List[str], List[Tuple[str, str]]]:
    """Orientation class and arrow for each gap between cyclic neighbours."""
    n = len(order)
    counts = dict(q.counts())
    if sum(counts.values()) != n:
        raise NotACycleQuiver(f"{sum(counts.values())} arrows on a {n}-cycle")
    classes, arrows = [], []
    for t in range(n):
        a, b = order[t], order[(t + 1) % n]
        if counts.get((a, b)):
            counts[(a, b)] -= 1
            classes.append(CW)
            arrows.append((a, b))
        elif counts.get((b, a)):
            counts[(b, a)] -= 1
            classes.append(CCW)
            arrows.append((b, a))
        else:
            raise NotACycleQuiver(f"no arrow between neighbours {a!r} and {b!r}")
    if CW not in classes or CCW not in classes:
        raise NotACycleQuiver("cycle is uniformly oriented")
    return classes, arrows


def _runs(classes: List[str]) -> Dict[str, List[List[int]]]:
    """Maximal cyclically consecutive blocks of equally oriented slots."""
    n = len(classes)
    starts = [t for t in range(n) if classes[t] != classes[t - 1]]
    out: Dict[str, List[List[int]]] = {CW: [], CCW: []}
    for st in starts:
        block = [st]
        t = (st + 1) % n
        while t not in starts:
            block.append(t)
            t = (t + 1) % n
        out[classes[st]].append(block)
    return out


def _run_path(arrows: List[Tuple[str, str]]) -> List[str]:
    """Vertices of a directed run, listed in arrow direction."""
    if len(arrows) == 1:
        return list(arrows[0])
    nxt = dict(arrows)
    (start,) = {a for a, _ in arrows} - {b for _, b in arrows}
    path = [start]
    while path[-1] in nxt:
        path.append(nxt.pop(path[-1]))
    return path


def _path_vertices(q: Quiver, shape_vs: Set[str], a: str, b: str) -> Set[str]:
    """Non-shape vertices on directed paths b -> ... -> a avoiding the shape."""
    adj: Dict[str, Set[str]] = {}
    for s, d, _ in q.arrows:
        adj.setdefault(s, set()).add(d)
    found: Set[str] = set()

    def walk(v: str, seen: Tuple[str, ...]) -> None:
        for w in sorted(adj.get(v, ())):
            if w == a and seen:
                found.update(seen)
            elif w not in shape_vs and w not in seen:
                walk(w, seen + (w,))

    walk(b, ())
    return found


def _nonshape_components(q: Quiver, shape_vs: Set[str]) -> List[Set[str]]:
    """Connected components of the vertices outside the shape."""
    rest = [v for v in q.vertices if v not in shape_vs]
    both: Dict[str, Set[str]] = {v: set() for v in rest}
    for s, d, _ in q.arrows:
        if s in both and d in both:
            both[s].add(d)
            both[d].add(s)
    comps: List[Set[str]] = []
    left = set(rest)
    while left:
        comp: Set[str] = set()
        frontier = {min(left, key=_id_key)}
        while frontier:
            comp |= frontier
            frontier = {w for v in frontier for w in both[v]} - comp
        comps.append(comp)
        left -= comp
    return sorted(comps, key=lambda c: _id_key(min(c, key=_id_key)))


def _contract_side(
    q: Quiver,
    runs_arrows: List[List[Tuple[str, str]]],
    prefix: str,
    killed: Set[str],
) -> Quiver:
    counts: Dict[Tuple[str, str], int] = {}
    for s, d, m in q.arrows:
        if s not in killed and d not in killed:
            counts[(s, d)] = counts.get((s, d), 0) + m
    rep = {v: v for v in q.vertices if v not in killed}
    for arrows in runs_arrows:
        path = _run_path(arrows)
        name = f"{prefix}_{path[0]}_{path[-1]}"
        for pair in arrows:
            counts[pair] -= 1
            if not counts[pair]:
                del counts[pair]
        for v in path:
            rep[v] = name
    vertices: List[str] = []
    for v in q.vertices:
        if v not in killed and rep[v] not in vertices:
            vertices.append(rep[v])
    arrows_out = tuple((rep[s], rep[d], m) for (s, d), m in counts.items())
    return Quiver(tuple(vertices), arrows_out)


def contract_paths(view: CyclicQuiverView) -> Tuple[Quiver, Quiver]:
    """Contract each orientation's runs; returns the two boundary quivers."""
    q = view.quiver
    classes, arrows = _classify_slots(q, view.cyclic_order)
    runs = _runs(classes)
    w_side = _contract_side(q, [[arrows[t] for t in r] for r in runs[CCW]], "w", set())
    u_side = _contract_side(q, [[arrows[t] for t in r] for r in runs[CW]], "u", set())
    return w_side, u_side


def cyclic_view(t: Triangulation) -> CyclicQuiverView:
    """Planar cycle view of a bridging triangulation's quiver."""
    if not all(isinstance(a, Bridging) for _, a in t.arcs):
        raise NotBridging("cyclic view needs an all-bridging triangulation")
    order = sorted(t.ids, key=lambda i: (t.arc(i).outer, t.arc(i).inner))
    return CyclicQuiverView(quiver_of(t), tuple(order))


def shape_of(t: Triangulation) -> Quiver:
    """Full subquiver on the bridging arcs, the part the contraction walks."""
    q = quiver_of(t)
    keep = {i for i, a in t.arcs if isinstance(a, Bridging)}
    vertices = tuple(v for v in q.vertices if v in keep)
    arrows = tuple((s, d, m) for s, d, m in q.arrows if s in keep and d in keep)
    return Quiver(vertices, arrows)


def _shape_order(shape: Quiver) -> List[str]:
    """Cycle order of the shape: start lowest, walk towards the higher neighbour."""
    edges: Dict[str, List[str]] = {v: [] for v in shape.vertices}
    for s, d, m in shape.arrows:
        for _ in range(m):
            edges[s].append(d)
            edges[d].append(s)
    if any(len(nb) != 2 for nb in edges.values()):
        raise NotACycleQuiver("shape is not a single unoriented cycle")
    start = min(shape.vertices, key=_id_key)
    order = [start]
    prev, cur = None, start
    for _ in range(len(shape.vertices) - 1):
        nbs = list(edges[cur])
        if prev is not None:
            nbs.remove(prev)
        nxt = max(nbs, key=_id_key) if prev is None else nbs[0]
        if nxt in order:
            raise NotACycleQuiver("shape is not a single unoriented cycle")
        order.append(nxt)
        prev, cur = cur, nxt
    if cur not in (e for e in edges[start]):
        raise NotACycleQuiver("shape is not a single unoriented cycle")
    return order


def contract_with_shape(q: Quiver, shape: Quiver) -> Tuple[Quiver, Quiver]:
    """Run the contraction inside the shape, killing cycles hung on each run."""
    shape_vs = set(shape.vertices)
    if not shape_vs <= set(q.vertices):
        raise ShapeNotSubquiver("shape has vertices outside the quiver")
    full = {
        pair: m for pair, m in q.counts().items()
        if pair[0] in shape_vs and pair[1] in shape_vs
    }
    if full != dict(shape.counts()):
        raise ShapeNotSubquiver("shape must be the full subquiver on its vertices")
    order = _shape_order(shape)
    classes, arrows = _classify_slots(shape, order)
    runs = _runs(classes)
    # each hanging component dies on the side whose run consumed its base arrow;
    # with parallel base copies, components are dealt out clockwise-copies first
    killed: Dict[str, Set[str]] = {CW: set(), CCW: set()}
    comps = _nonshape_components(q, shape_vs)
    assigned = [False] * len(comps)
    for pair in sorted(set(arrows)):
        copies = sorted(
            (cls for cls, arr in zip(classes, arrows) if arr == pair),
            key=lambda cls: cls != CW,
        )
        hits = _path_vertices(q, shape_vs, *pair)
        k = 0
        for idx, comp in enumerate(comps):
            if not assigned[idx] and comp & hits:
                killed[copies[k % len(copies)]] |= comp
                assigned[idx] = True
                k += 1
    out = []
    for cls, prefix in ((CCW, "w"), (CW, "u")):
        runs_arrows = [[arrows[t] for t in r] for r in runs[cls]]
        out.append(_contract_side(q, runs_arrows, prefix, killed[cls]))
    return out[0], out[1]


def cox_limit(t: Triangulation) -> Triangulation:
    """Limit of iterating the Coxeter transformation on a bridging triangulation."""
    if not all(isinstance(a, Bridging) for _, a in t.arcs):
        raise NotBridging("cox_limit needs an all-bridging triangulation")
    return dehn_limit(t, Direction.PLUS)
