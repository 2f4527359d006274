"""Quivers with potentials and their mutation.

A potential is a formal sum of cycles with rational coefficients; cycles
are stored as tuples of *arrow ids* in traversal order, normalized to the
lexicographically least rotation.  Mutation follows the usual two-step
recipe: premutation introduces starred arrows and composites together with
the correction terms, reduction trivializes 2-cycle pairs by substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from .errors import (
    LoopAtVertex,
    MalformedInput,
    NotMutable,
    UnknownArrow,
    UnknownVertex,
)
from .quiver import Quiver, _spiral_adjacency, quiver_from_pairs
from .surface import (
    ASYMPTOTIC,
    ArcLift,
    Triangulation,
    ends_at_inner,
    ends_at_outer,
)

Cycle = Tuple[str, ...]
Path = Tuple[str, ...]

DEFAULT_DEGREE = 12


def canonical_cycle(cycle: Sequence[str]) -> Cycle:
    """Lexicographically least rotation of a cycle of arrow ids."""
    if not cycle:
        raise MalformedInput("empty cycle")
    tup = tuple(cycle)
    return min(tup[i:] + tup[:i] for i in range(len(tup)))


@dataclass(frozen=True)
class LabeledArrow:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Potential:
    """Formal sum of cycles; zero coefficients are dropped on construction."""

    terms: Tuple[Tuple[Cycle, Fraction], ...] = ()

    @staticmethod
    def of(terms: Mapping[Sequence[str], "Fraction | int"]) -> "Potential":
        acc: Dict[Cycle, Fraction] = {}
        for cycle, coeff in terms.items():
            key = canonical_cycle(cycle)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
        return Potential(
            tuple(sorted((c, v) for c, v in acc.items() if v != 0))
        )

    def as_dict(self) -> Dict[Cycle, Fraction]:
        return dict(self.terms)

    def arrows_used(self) -> Set[str]:
        return {a for cycle, _ in self.terms for a in cycle}

    def is_zero(self) -> bool:
        return not self.terms


def cyclic_derivative(w: Potential, arrow: str) -> Dict[Path, Fraction]:
    """Sum over occurrences of ``arrow``, each contributing the rest of
    its cycle read from just past the occurrence."""
    if arrow not in w.arrows_used():
        raise UnknownArrow(f"arrow {arrow!r} does not occur in the potential")
    out: Dict[Path, Fraction] = {}
    for cycle, coeff in w.terms:
        for i, a in enumerate(cycle):
            if a == arrow:
                path = cycle[i + 1 :] + cycle[:i]
                out[path] = out.get(path, Fraction(0)) + coeff
    return {p: c for p, c in out.items() if c != 0}


@dataclass(frozen=True)
class NonTrivializablePair:
    """A 2-cycle left in the quiver with no degree-2 potential term."""

    first: str
    second: str


@dataclass(frozen=True)
class TruncationNote:
    """A substitution produced a cycle longer than the working degree."""

    length: int


@dataclass(frozen=True)
class QP:
    """Quiver with potential over individually named arrows."""

    vertices: Tuple[str, ...]
    arrows: Tuple[LabeledArrow, ...]
    potential: Potential = Potential()
    frozen: Tuple[str, ...] = ()
    degree: int = DEFAULT_DEGREE
    notes: Tuple[object, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if len({a.id for a in self.arrows}) != len(self.arrows):
            raise MalformedInput("duplicate arrow id")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.src not in vs or a.dst not in vs:
                raise MalformedInput(f"arrow {a.id!r} has unknown endpoint")
        by_id = self.arrow_map()
        for cycle, _ in self.potential.terms:
            for here, after in zip(cycle, cycle[1:] + cycle[:1]):
                if here not in by_id or after not in by_id:
                    raise MalformedInput("potential uses an unknown arrow")
                if by_id[here].dst != by_id[after].src:
                    raise MalformedInput(f"cycle {cycle} is not composable")
            if len(cycle) > self.degree:
                raise MalformedInput("potential term exceeds working degree")

    def arrow_map(self) -> Dict[str, LabeledArrow]:
        return {a.id: a for a in self.arrows}

    def quiver(self) -> Quiver:
        return quiver_from_pairs(
            list(self.vertices),
            [(a.src, a.dst) for a in self.arrows],
            frozen=self.frozen,
        )


def _star(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def _composite_name(inc: str, out: str, loop: bool) -> str:
    return "[" + (inc + out if loop else out + inc) + "]"


def _rotate_off(cycle: Cycle, by_id: Dict[str, LabeledArrow], k: str) -> Cycle:
    """Rotation whose first arrow does not start at k (exists when there is
    no loop at k)."""
    for i in range(len(cycle)):
        if by_id[cycle[i]].src != k:
            return cycle[i:] + cycle[:i]
    raise LoopAtVertex(f"cycle {cycle} never leaves vertex {k!r}")


def premutate(qp: QP, k: str) -> QP:
    """Mutation at k without reduction: star the arrows at k, add the
    composites, and append the correction terms."""
    if k not in qp.vertices:
        raise UnknownVertex(f"unknown vertex {k!r}")
    if k in qp.frozen:
        raise NotMutable(f"vertex {k!r} is frozen")
    if any(a.src == k and a.dst == k for a in qp.arrows):
        raise LoopAtVertex(f"loop at vertex {k!r}")
    by_id = qp.arrow_map()
    incoming = [a for a in qp.arrows if a.dst == k]
    outgoing = [a for a in qp.arrows if a.src == k]

    arrows: List[LabeledArrow] = []
    for a in qp.arrows:
        if a.dst == k:
            arrows.append(LabeledArrow(_star(a.id), k, a.src))
        elif a.src == k:
            arrows.append(LabeledArrow(_star(a.id), a.dst, k))
        else:
            arrows.append(a)
    composite: Dict[Tuple[str, str], str] = {}
    for inc in incoming:
        for out in outgoing:
            name = _composite_name(inc.id, out.id, loop=inc.src == out.dst)
            composite[(inc.id, out.id)] = name
            arrows.append(LabeledArrow(name, inc.src, out.dst))

    terms: Dict[Cycle, Fraction] = {}

    def add(cycle: Sequence[str], coeff: Fraction) -> None:
        key = canonical_cycle(cycle)
        value = terms.get(key, Fraction(0)) + coeff
        if value:
            terms[key] = value
        else:
            terms.pop(key, None)

    for cycle, coeff in qp.potential.terms:
        rot = _rotate_off(cycle, by_id, k)
        rewritten: List[str] = []
        i = 0
        while i < len(rot):
            a = by_id[rot[i]]
            if a.dst == k:
                nxt = rot[(i + 1) % len(rot)]
                rewritten.append(composite[(a.id, nxt)])
                i += 2
            else:
                rewritten.append(a.id)
                i += 1
        add(rewritten, coeff)
    for inc in incoming:
        for out in outgoing:
            add(
                (composite[(inc.id, out.id)], _star(out.id), _star(inc.id)),
                Fraction(1),
            )

    return QP(
        vertices=qp.vertices,
        arrows=tuple(arrows),
        potential=Potential(tuple(sorted(terms.items()))),
        frozen=qp.frozen,
        degree=qp.degree,
        notes=qp.notes,
    )


def _substitute(
    terms: Mapping[Cycle, Fraction],
    subs: Mapping[str, Sequence[Tuple[Path, Fraction]]],
    degree: int,
) -> Tuple[Dict[Cycle, Fraction], List[object]]:
    out: Dict[Cycle, Fraction] = {}
    notes: List[object] = []

    def expand(seq: Path, coeff: Fraction) -> None:
        for i, a in enumerate(seq):
            if a in subs:
                for path, c in subs[a]:
                    expand(seq[:i] + tuple(path) + seq[i + 1 :], coeff * c)
                return
        if not seq:
            return
        if len(seq) > degree:
            notes.append(TruncationNote(len(seq)))
            return
        key = canonical_cycle(seq)
        out[key] = out.get(key, Fraction(0)) + coeff

    for cycle, coeff in terms.items():
        expand(cycle, coeff)
    return {c: v for c, v in out.items() if v != 0}, notes


def reduce(qp: QP) -> QP:
    """Trivialize 2-cycle pairs appearing in the potential.

    Repeatedly pick the least degree-2 term, solve the two cyclic
    derivatives for the pair of arrows, substitute, and delete the pair.
    2-cycles in the quiver that never acquire a degree-2 term are reported
    in ``notes`` and left alone.
    """
    arrows = list(qp.arrows)
    terms = qp.potential.as_dict()
    notes: List[object] = list(qp.notes)
    while True:
        pairs = sorted(c for c in terms if len(c) == 2 and c[0] != c[1])
        if not pairs:
            break
        cycle = pairs[0]
        alpha, beta = cycle
        coeff = terms.pop(cycle)
        w = Potential(tuple(sorted(terms.items())))
        rest_b = (
            cyclic_derivative(w, alpha) if alpha in w.arrows_used() else {}
        )
        rest_a = (
            cyclic_derivative(w, beta) if beta in w.arrows_used() else {}
        )
        for rest in (rest_a, rest_b):
            if any(alpha in p or beta in p for p in rest):
                raise MalformedInput(
                    f"pair {cycle} is entangled with the rest of the potential"
                )
        subs = {
            beta: [(p, -c / coeff) for p, c in rest_b.items()],
            alpha: [(p, -c / coeff) for p, c in rest_a.items()],
        }
        terms, extra = _substitute(terms, subs, qp.degree)
        notes.extend(extra)
        arrows = [a for a in arrows if a.id not in (alpha, beta)]

    by_pair: Dict[Tuple[str, str], List[str]] = {}
    for a in arrows:
        by_pair.setdefault((a.src, a.dst), []).append(a.id)
    for (s, d), ids in sorted(by_pair.items()):
        if s < d and (d, s) in by_pair:
            for x, y in zip(sorted(ids), sorted(by_pair[(d, s)])):
                notes.append(NonTrivializablePair(x, y))

    return QP(
        vertices=qp.vertices,
        arrows=tuple(arrows),
        potential=Potential(tuple(sorted(terms.items()))),
        frozen=qp.frozen,
        degree=qp.degree,
        notes=tuple(notes),
    )


def qp_mutate(qp: QP, k: str) -> QP:
    """Premutation followed by reduction."""
    return reduce(premutate(qp, k))


AbsCorner = Tuple[str, int, ArcLift, ArcLift]


def _far(lift: ArcLift, here: Tuple[str, int]) -> Tuple[str, int]:
    e1, e2 = lift.ends
    return e2 if e1 == here else e1


def _shift_end(end: Tuple[str, int], delta: int) -> Tuple[str, int]:
    kind, x = end
    return (kind, x) if kind == "meridian" else (kind, x + delta)


def _shift_lift(lift: ArcLift, delta: int) -> ArcLift:
    return ArcLift(lift.arc_id, tuple(_shift_end(e, delta) for e in lift.ends))


def _ends_at(t: Triangulation, line: str, x: int) -> List[ArcLift]:
    if line == "outer":
        return [lift for _, lift in ends_at_outer(t, x // t.ann.q)]
    return [lift for _, lift in ends_at_inner(t, x // t.ann.p)]


def _next_corner(t: Triangulation, corner: AbsCorner) -> Optional[AbsCorner]:
    """Walk around a face: follow the upper lift of a corner to its far
    end, where the face continues between the arrived lift and its
    successor.  None when the face runs into the boundary or the
    meridian."""
    line, x, _, hi = corner
    far = _far(hi, (line, x))
    if far[0] == "meridian":
        return None
    ends = _ends_at(t, *far)
    i = ends.index(hi)
    if i + 1 >= len(ends):
        return None
    return (far[0], far[1], ends[i], ends[i + 1])


def _rep_delta(t: Triangulation, line: str, x: int) -> int:
    if line == "outer":
        idx = x // t.ann.q
        return ((idx % t.ann.p) - idx) * t.ann.q
    idx = x // t.ann.p
    return ((idx % t.ann.q) - idx) * t.ann.p


def _corner_arrows(t: Triangulation) -> List[Tuple[AbsCorner, str]]:
    """One labeled quiver arrow per representative triangle corner, named
    in a fixed sweep order."""
    out: List[Tuple[AbsCorner, str]] = []
    n = 0
    for o in range(t.ann.p):
        ends = [lift for _, lift in ends_at_outer(t, o)]
        for lo, hi in zip(ends, ends[1:]):
            n += 1
            out.append((("outer", o * t.ann.q, lo, hi), f"a{n}"))
    for i in range(t.ann.q):
        ends = [lift for _, lift in ends_at_inner(t, i)]
        for lo, hi in zip(ends, ends[1:]):
            n += 1
            out.append((("inner", i * t.ann.p, lo, hi), f"a{n}"))
    return out


def potential_of(t: Triangulation) -> QP:
    """Quiver with potential of a triangulation: one labeled arrow per
    corner (plus meridian adjacencies of spiralling arcs) and one term per
    internal triangle, read in traversal order."""
    corners = _corner_arrows(t)
    name_of: Dict[AbsCorner, str] = dict(corners)

    def rep_name(corner: AbsCorner) -> str:
        line, x, lo, hi = corner
        delta = _rep_delta(t, line, x)
        return name_of[(line, x + delta, _shift_lift(lo, delta), _shift_lift(hi, delta))]

    arrows = [
        LabeledArrow(name, hi.arc_id, lo.arc_id)
        for (_, _, lo, hi), name in corners
    ]
    if t.kind == ASYMPTOTIC:
        n = len(arrows)
        for src, dst in _spiral_adjacency(t):
            n += 1
            arrows.append(LabeledArrow(f"a{n}", src, dst))

    terms: Dict[Cycle, Fraction] = {}
    done: Set[str] = set()
    for corner, name in corners:
        if name in done:
            continue
        walk = [corner]
        for _ in range(2):
            nxt = _next_corner(t, walk[-1])
            if nxt is None:
                break
            walk.append(nxt)
        if len(walk) < 3:
            continue
        back = _next_corner(t, walk[-1])
        if back is None:
            continue
        line, x, lo, hi = back
        delta = _rep_delta(t, line, x)
        if (line, x + delta, _shift_lift(lo, delta), _shift_lift(hi, delta)) != walk[0]:
            continue
        ids = [rep_name(c) for c in walk]
        done.update(ids)
        terms[canonical_cycle(ids[::-1])] = Fraction(1)

    return QP(
        vertices=tuple(t.ids),
        arrows=tuple(arrows),
        potential=Potential.of(terms),
    )
