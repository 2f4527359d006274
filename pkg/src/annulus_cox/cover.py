"""Cluster structure of the degenerate annulus via a double cover.

When all inner marked points collapse, the annulus degenerates to a disc
with a puncture; its arcs carry plain/notched tags.  Exchange relations
are not run downstairs but on a double cover, where the lifted
triangulation is a genuine 2p-gon fan and every arc has two lifts that
are flipped together.  Lambda lengths downstairs are read off the cover
variables, halved at notched arcs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

import sympy as sp

from .errors import (
    ExplorationBudgetExceeded,
    MalformedInput,
    NonCommutingPair,
    UnknownVertex,
)
from .quiver import Quiver, mutate, quiver_from_pairs
from .surface import OUTER, Prufer, Triangulation, is_spiral


class Tag(str, Enum):
    PLAIN = "plain"
    NOTCHED = "notched"
    CHORD = "chord"


_NEXT_TAG = {Tag.PLAIN: Tag.NOTCHED, Tag.NOTCHED: Tag.CHORD, Tag.CHORD: Tag.PLAIN}


@dataclass(frozen=True)
class TaggedDiscTriangulation:
    """Tagged arcs of the punctured disc, indexed 1..p around the rim.

    Radial arcs are plain or notched; a chord records an arc that has been
    flipped off the puncture onto the boundary.
    """

    p: int
    tags: Tuple[Tag, ...]

    def __post_init__(self) -> None:
        if self.p < 1:
            raise MalformedInput("need at least one marked point")
        if len(self.tags) != self.p:
            raise MalformedInput(f"expected {self.p} tags, got {len(self.tags)}")

    @staticmethod
    def plain(p: int) -> "TaggedDiscTriangulation":
        return TaggedDiscTriangulation(p, (Tag.PLAIN,) * p)

    @staticmethod
    def from_limit(t: Triangulation) -> "TaggedDiscTriangulation":
        """Read the outer limit component of an asymptotic triangulation:
        spiralling arcs become radii, tagged plain for one spiral sense
        and notched for the other."""
        spirals = sorted(
            (arc.point, arc)
            for _, arc in t.arcs
            if is_spiral(arc) and arc.boundary is OUTER
        )
        if len(spirals) != t.ann.p:
            raise MalformedInput(
                "outer boundary is not fully spiralling; take a limit first"
            )
        return TaggedDiscTriangulation(
            t.ann.p,
            tuple(
                Tag.PLAIN if isinstance(arc, Prufer) else Tag.NOTCHED
                for _, arc in spirals
            ),
        )

    def mutated(self, i: int) -> "TaggedDiscTriangulation":
        if not 1 <= i <= self.p:
            raise UnknownVertex(f"no arc {i} in a disc with {self.p} points")
        tags = list(self.tags)
        tags[i - 1] = _NEXT_TAG[tags[i - 1]]
        return TaggedDiscTriangulation(self.p, tuple(tags))


def _lift(i: int, copy: int) -> str:
    return f"{i}^{copy}"


def _segment(j: int) -> str:
    return f"s{j}"


def double_cover(disc: TaggedDiscTriangulation) -> Tuple[Quiver, Dict[str, str]]:
    """Quiver of the lifted triangulation together with the deck
    involution on arc vertices.

    The 2p lifted radii form an oriented cycle; each boundary segment
    contributes one frozen vertex, flanking both lifts of every second
    radius.  For p = 1 the two adjacency arrows between the lifts cancel.
    """
    p = disc.p
    ring = [_lift(((k - 1) % p) + 1, 1 if k <= p else 2) for k in range(1, 2 * p + 1)]
    frozen = [_segment(j) for j in range(1, p + 1)]
    pairs: List[Tuple[str, str]] = []
    if p > 1:
        pairs += [(ring[k], ring[(k + 1) % (2 * p)]) for k in range(2 * p)]
    for i in range(2, p + 1, 2):
        for copy in (1, 2):
            pairs.append((_segment(i - 1), _lift(i, copy)))
            pairs.append((_lift(i, copy), _segment(i)))
    quiver = quiver_from_pairs(ring + frozen, pairs, frozen=frozen)
    involution = {}
    for i in range(1, p + 1):
        involution[_lift(i, 1)] = _lift(i, 2)
        involution[_lift(i, 2)] = _lift(i, 1)
    return quiver, involution


@dataclass(frozen=True)
class Seed:
    """Cover quiver plus one cluster variable per vertex (frozen vertices
    hold their coefficient symbol)."""

    quiver: Quiver
    variables: Tuple[Tuple[str, sp.Expr], ...]

    @staticmethod
    def of(quiver: Quiver, variables: Mapping[str, sp.Expr]) -> "Seed":
        if set(variables) != set(quiver.vertices):
            raise MalformedInput("variables must cover the quiver vertices")
        return Seed(
            quiver,
            tuple(sorted((v, sp.cancel(x)) for v, x in variables.items())),
        )

    def as_dict(self) -> Dict[str, sp.Expr]:
        return dict(self.variables)

    def var(self, v: str) -> sp.Expr:
        for name, x in self.variables:
            if name == v:
                return x
        raise UnknownVertex(f"no vertex {v!r}")

    def downstairs(self) -> int:
        return sum(1 for v, _ in self.variables if v.endswith("^1"))


def initial_seed(
    disc: TaggedDiscTriangulation,
    arc_names: Optional[Sequence[str]] = None,
    segment_names: Optional[Sequence[str]] = None,
) -> Seed:
    """Seed on the double cover with one symbol per downstairs arc
    (shared by its two lifts) and one per boundary segment."""
    p = disc.p
    arc_names = list(arc_names or (f"x{i}" for i in range(1, p + 1)))
    segment_names = list(segment_names or (f"a{j}" for j in range(1, p + 1)))
    if len(arc_names) != p or len(segment_names) != p:
        raise MalformedInput("need one arc name and one segment name per point")
    quiver, _ = double_cover(disc)
    variables: Dict[str, sp.Expr] = {}
    for i in range(1, p + 1):
        sym = sp.Symbol(arc_names[i - 1])
        variables[_lift(i, 1)] = sym
        variables[_lift(i, 2)] = sym
    for j in range(1, p + 1):
        variables[_segment(j)] = sp.Symbol(segment_names[j - 1])
    return Seed.of(quiver, variables)


def _strip_frozen_frozen(q: Quiver) -> Quiver:
    frozen = set(q.frozen)
    arrows = tuple(
        (s, d, m) for s, d, m in q.arrows if not (s in frozen and d in frozen)
    )
    return Quiver(q.vertices, arrows, q.framing_pairs, q.frozen)


def _exchange(seed_vars: Dict[str, sp.Expr], q: Quiver, v: str) -> sp.Expr:
    prod_in = sp.Integer(1)
    prod_out = sp.Integer(1)
    for s, d, m in q.arrows:
        if d == v:
            prod_in *= seed_vars[s] ** m
        if s == v:
            prod_out *= seed_vars[d] ** m
    return sp.cancel((prod_in + prod_out) / seed_vars[v])


def composite_mutate(seed: Seed, i: int) -> Seed:
    """Flip both lifts of downstairs arc i: standard exchange at each,
    quiver mutation at each, arrows between frozen vertices discarded.
    The two lifts must not be adjacent, and then the order of the two
    steps does not matter."""
    v1, v2 = _lift(i, 1), _lift(i, 2)
    q = seed.quiver
    if v1 not in q.vertices or v2 not in q.vertices:
        raise UnknownVertex(f"no downstairs arc {i}")
    counts = q.counts()
    if counts.get((v1, v2)) or counts.get((v2, v1)):
        raise NonCommutingPair(
            f"lifts of arc {i} are adjacent; their flips do not commute"
        )
    variables = seed.as_dict()
    for v in (v1, v2):
        variables[v] = _exchange(variables, q, v)
        q = _strip_frozen_frozen(mutate(q, v))
    out = Seed.of(q, variables)
    assert out.var(v1) == out.var(v2), f"deck symmetry broken at arc {i}"
    return out


@dataclass(frozen=True)
class ExchangeGraph:
    """Seeds reachable by composite mutations; ``closed`` reports whether
    the component was exhausted (every edge leads to a known seed)."""

    nodes: Tuple[Seed, ...]
    edges: Tuple[Tuple[int, int, int], ...]
    closed: bool


BUDGET = 10_000


def exchange_graph(seed: Seed, depth: Optional[int] = None) -> ExchangeGraph:
    """Breadth-first exploration by composite mutations, deduplicating
    seeds by exact quiver and variable match."""
    start = Seed.of(seed.quiver, seed.as_dict())
    nodes: List[Seed] = [start]
    index: Dict[Seed, int] = {start: 0}
    edges: Set[Tuple[int, int, int]] = set()
    frontier = [0]
    radius = 0
    closed = True
    while frontier:
        if depth is not None and radius >= depth:
            closed = False
            break
        nxt: List[int] = []
        for a in frontier:
            node = nodes[a]
            for i in range(1, node.downstairs() + 1):
                neighbour = composite_mutate(node, i)
                b = index.get(neighbour)
                if b is None:
                    if len(nodes) >= BUDGET:
                        raise ExplorationBudgetExceeded(
                            f"more than {BUDGET} seeds reachable"
                        )
                    b = len(nodes)
                    nodes.append(neighbour)
                    index[neighbour] = b
                    nxt.append(b)
                edges.add((min(a, b), max(a, b), i))
        frontier = nxt
        radius += 1
    return ExchangeGraph(tuple(nodes), tuple(sorted(edges)), closed)


def lambda_lengths(
    seed: Seed, tagging: TaggedDiscTriangulation
) -> Dict[int, sp.Expr]:
    """Downstairs lambda lengths: the cover variable of either lift,
    halved at notched arcs."""
    out: Dict[int, sp.Expr] = {}
    for i in range(1, tagging.p + 1):
        x = seed.var(_lift(i, 1))
        if tagging.tags[i - 1] is Tag.NOTCHED:
            x = sp.cancel(x / 2)
        out[i] = x
    return out
