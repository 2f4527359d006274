"""Reference implementations the test suite checks the engine against.

Everything here is deliberately independent of the package's own logic:
crossings are decided by exact segment arithmetic on universal-cover
lifts, quiver mutation by matrix mutation, isomorphism by brute-force
permutation search.  Slow is fine; these only run on small inputs.
"""

from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from annulus_cox.surface import (
    Annulus,
    Boundary,
    Bridging,
    Peripheral,
    Triangulation,
    complete_to_triangulation,
    flip,
)
from annulus_cox.quiver import Quiver


# ---------------------------------------------------------------------------
# crossing numbers for finite arcs, from scratch


def _bridging_pair_cross(ann: Annulus, x: Bridging, y: Bridging) -> bool:
    """Straight lifts in the strip cross iff their endpoint orders differ.

    Lift of a bridging arc = segment from (outer*q, 0) to (inner*p, 1);
    the deck transformation shifts both coordinates by p*q.  Two arcs
    cross iff some pair of lifts properly intersects, i.e. the bottom
    and top x-orders are strictly opposite.
    """
    m = ann.p * ann.q
    b1, t1 = x.outer * ann.q, x.inner * ann.p
    b2, t2 = y.outer * ann.q, y.inner * ann.p
    span = 2 + (abs(b1 - b2) + abs(t1 - t2)) // m
    for s in range(-span, span + 1):
        d_bottom = b1 - (b2 + s * m)
        d_top = t1 - (t2 + s * m)
        if d_bottom * d_top < 0:
            return True
    return False


def _point_inside_arch(period: int, point: int, a: int, b: int) -> bool:
    """Is some lift of the marked point strictly inside the open span (a, b)?"""
    for k in range(-3, 4):
        if a < point + k * period < b:
            return True
    return False


def _peripheral_pair_cross(period: int, x: Peripheral, y: Peripheral) -> bool:
    """Arches over a line cross iff their feet strictly interleave;
    sweep the deck translates of one arch past the other."""
    for k in range(-4, 5):
        a, b = y.a + k * period, y.b + k * period
        if x.a < a < x.b < b or a < x.a < b < x.b:
            return True
    return False


def finite_arcs_cross(ann: Annulus, x, y) -> bool:
    """Minimal crossing number > 0, for bridging/peripheral arcs only."""
    if isinstance(x, Bridging) and isinstance(y, Bridging):
        return _bridging_pair_cross(ann, x, y)
    if isinstance(x, Peripheral) and isinstance(y, Peripheral):
        if x.boundary != y.boundary:
            return False
        return _peripheral_pair_cross(ann.period(x.boundary), x, y)
    if isinstance(x, Bridging):
        x, y = y, x
    # x peripheral, y bridging: the bridging arc must escape the arch
    period = ann.period(x.boundary)
    end = y.outer if x.boundary == Boundary.OUTER else y.inner
    return _point_inside_arch(period, end, x.a, x.b)


# ---------------------------------------------------------------------------
# matrix mutation


def b_matrix(q: Quiver) -> List[List[int]]:
    idx = {v: i for i, v in enumerate(q.vertices)}
    n = len(q.vertices)
    out = [[0] * n for _ in range(n)]
    for s, d, m in q.arrows:
        out[idx[s]][idx[d]] += m
        out[idx[d]][idx[s]] -= m
    return out


def mutate_b_matrix(mat: Sequence[Sequence[int]], k: int) -> List[List[int]]:
    n = len(mat)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -mat[i][j]
            else:
                out[i][j] = mat[i][j] + (
                    abs(mat[i][k]) * mat[k][j] + mat[i][k] * abs(mat[k][j])
                ) // 2
    return out


# ---------------------------------------------------------------------------
# quiver isomorphism by brute force


def isomorphic_bruteforce(q1: Quiver, q2: Quiver) -> bool:
    if len(q1.vertices) != len(q2.vertices):
        return False
    counts1 = dict(q1.counts())
    counts2 = dict(q2.counts())
    if sorted(counts1.values()) != sorted(counts2.values()):
        return False
    for perm in permutations(q2.vertices):
        to = dict(zip(q1.vertices, perm))
        if all(
            counts2.get((to[s], to[d])) == m for (s, d), m in counts1.items()
        ) and len(counts1) == len(counts2):
            return True
    return False


# ---------------------------------------------------------------------------
# flip graph exploration


def _arc_set(t: Triangulation) -> frozenset:
    """Triangulations are flip-graph nodes as unlabelled arc sets."""
    return frozenset(a for _, a in t.arcs)


def flip_graph(
    triangulations: Sequence[Triangulation],
) -> Dict[int, List[int]]:
    """Adjacency between the given triangulations under single flips.

    Flips landing outside the given node set are ignored; the given set
    is usually a full enumeration inside a winding window, so only
    window-boundary flips fall out.
    """
    nodes = list(triangulations)
    index = {_arc_set(t): i for i, t in enumerate(nodes)}
    adjacency: Dict[int, List[int]] = {i: [] for i in range(len(nodes))}
    for i, t in enumerate(nodes):
        for arc_id, _ in t.arcs:
            j = index.get(_arc_set(flip(t, arc_id)))
            if j is not None and j != i and j not in adjacency[i]:
                adjacency[i].append(j)
    return adjacency


def is_connected(adjacency: Dict[int, List[int]]) -> bool:
    if not adjacency:
        return True
    seen = {0}
    frontier = [0]
    while frontier:
        frontier = [
            j for i in frontier for j in adjacency[i] if j not in seen
        ]
        seen.update(frontier)
    return len(seen) == len(adjacency)


# ---------------------------------------------------------------------------
# seeded random triangulations


def random_triangulation(rng, p: int, q: int, walk: int = 10) -> Triangulation:
    t = complete_to_triangulation(Annulus(p, q))
    for _ in range(rng.randint(0, walk)):
        t = flip(t, rng.choice([arc_id for arc_id, _ in t.arcs]))
    return t
