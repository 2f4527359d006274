"""Quivers: extraction from triangulations, mutation against the matrix
oracle, admissible orderings, lattice-level Coxeter data, and frames."""

import pytest
from hypothesis import given, settings, strategies as st

from annulus_cox.errors import (
    NoAdmissibleOrdering,
    NoOtherStrictAsymptoticArc,
    NotMutable,
    NotStrictlyAsymptotic,
    LoopAtVertex,
    UnknownArcId,
    UnknownVertex,
)
from annulus_cox.quiver import (
    Quiver,
    admissible_ordering,
    admissible_orderings,
    components,
    coxeter_quiver,
    coxeter_vector,
    euler_form,
    euler_matrix,
    framed_quiver,
    is_admissible,
    is_isomorphic,
    mutate,
    quiver_from_pairs,
    quiver_of,
    reflection,
    sources,
    switch_frame,
    sym_matrix,
)
from annulus_cox.surface import Annulus, Boundary, Bridging, Prufer, Triangulation

from oracles import b_matrix, isomorphic_bruteforce, mutate_b_matrix


def arrow_set(q):
    return {(s, d) for s, d, _ in q.arrows}


@st.composite
def mutable_quivers(draw):
    """Loop-free, 2-cycle-free quivers: the domain of classical mutation."""
    n = draw(st.integers(2, 5))
    vs = tuple(f"v{i}" for i in range(n))
    arrows = []
    for i in range(n):
        for j in range(i + 1, n):
            m = draw(st.integers(0, 2))
            if m:
                s, d = (vs[i], vs[j]) if draw(st.booleans()) else (vs[j], vs[i])
                arrows.append((s, d, m))
    return Quiver(vs, tuple(arrows))


@st.composite
def small_quivers(draw):
    n = draw(st.integers(1, 4))
    vs = tuple(f"v{i}" for i in range(n))
    arrows = []
    for i in range(n):
        for j in range(n):
            m = draw(st.integers(0, 2))
            if m:
                arrows.append((vs[i], vs[j], m))
    return Quiver(vs, tuple(arrows))


# ---------------------------------------------------------------------------
# construction


def test_parallel_arrows_merge():
    q = Quiver(("a", "b"), (("a", "b", 1), ("a", "b", 2)))
    assert q.arrows == (("a", "b", 3),)
    assert q.mult("a", "b") == 3
    assert q.arrow_pairs() == [("a", "b")] * 3


def test_rejects_unknown_endpoints():
    with pytest.raises(UnknownVertex):
        Quiver(("a",), (("a", "b", 1),))
    with pytest.raises(ValueError):
        Quiver(("a", "a"), ())


def test_adjacency_quiver_of_mixed_triangulation(seed22):
    q = quiver_of(seed22)
    assert q.vertices == ("d1", "d2", "d3", "d4")
    assert arrow_set(q) == {
        ("d1", "d2"),
        ("d2", "d3"),
        ("d3", "d4"),
        ("d4", "d1"),
        ("d4", "d2"),
    }
    assert all(m == 1 for _, _, m in q.arrows)


def test_adjacency_quiver_of_fan(fan33):
    assert arrow_set(quiver_of(fan33)) == {
        ("1", "6"),
        ("2", "1"),
        ("2", "3"),
        ("3", "4"),
        ("4", "5"),
        ("6", "5"),
    }


def test_kronecker_quiver():
    t = Triangulation(Annulus(1, 1), (("a", Bridging(0, 0)), ("b", Bridging(0, 1))))
    q = quiver_of(t)
    assert q.counts() == {("a", "b"): 2}


# ---------------------------------------------------------------------------
# mutation


def test_mutation_golden():
    q = quiver_from_pairs("1234", [("1", "2"), ("3", "2"), ("2", "4"), ("4", "3")])
    assert arrow_set(mutate(q, "3")) == {("1", "2"), ("2", "3"), ("3", "4")}


@given(mutable_quivers(), st.data())
@settings(deadline=None)
def test_mutation_matches_matrix_oracle(q, data):
    k = data.draw(st.sampled_from(q.vertices))
    got = b_matrix(mutate(q, k))
    want = mutate_b_matrix(b_matrix(q), q.vertices.index(k))
    assert got == want


@given(mutable_quivers(), st.data())
@settings(deadline=None)
def test_mutation_is_an_involution(q, data):
    k = data.draw(st.sampled_from(q.vertices))
    assert mutate(mutate(q, k), k).counts() == q.counts()


def test_mutation_refusals():
    with pytest.raises(UnknownVertex):
        mutate(quiver_from_pairs("ab", [("a", "b")]), "c")
    loop = Quiver(("a", "b"), (("a", "a", 1), ("a", "b", 1)))
    with pytest.raises(NotMutable):
        mutate(loop, "a")
    two_cycle = quiver_from_pairs("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(NotMutable):
        mutate(two_cycle, "a")
    frozen = Quiver(("a", "b"), (("a", "b", 1),), frozen=("b",))
    with pytest.raises(NotMutable):
        mutate(frozen, "b")


# ---------------------------------------------------------------------------
# admissible orderings and the Coxeter quiver


def test_sources():
    q = quiver_from_pairs("123", [("1", "2"), ("3", "2")])
    assert sources(q) == ["1", "3"]


def test_admissible_ordering_golden(fan33):
    q = quiver_of(fan33)
    assert is_admissible(q, ["2", "3", "1", "6", "4", "5"])
    assert not is_admissible(q, ["1", "2", "3", "4", "5", "6"])
    assert not is_admissible(q, ["2", "3", "1"])  # not a permutation
    first = admissible_ordering(q)
    assert is_admissible(q, first)


def test_every_enumerated_ordering_is_admissible(fan33):
    q = quiver_of(fan33)
    orders = list(admissible_orderings(q))
    assert len(orders) == 6
    assert all(is_admissible(q, o) for o in orders)


def test_cycle_has_no_admissible_ordering():
    q = quiver_from_pairs("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(NoAdmissibleOrdering):
        admissible_ordering(q)
    assert list(admissible_orderings(q)) == []


def test_coxeter_quiver_is_isomorphic_to_input(fan33, zigzag33):
    for t in (fan33, zigzag33):
        q = quiver_of(t)
        assert is_isomorphic(coxeter_quiver(q), q)


def test_coxeter_quiver_rejects_bad_ordering(fan33):
    q = quiver_of(fan33)
    with pytest.raises(NoAdmissibleOrdering):
        coxeter_quiver(q, ["1", "2", "3", "4", "5", "6"])


# ---------------------------------------------------------------------------
# lattice forms


def test_euler_matrix_kronecker():
    q = Quiver(("1", "2"), (("1", "2", 2),))
    assert euler_matrix(q) == [[1, -2], [0, 1]]
    assert sym_matrix(q) == [[2, -2], [-2, 2]]
    assert euler_form(q, [1, 0], [0, 1]) == -2
    assert euler_form(q, [0, 1], [1, 0]) == 0


@given(small_quivers(), st.data())
@settings(deadline=None)
def test_reflection_involution_preserves_form(q, data):
    loop_free = [v for v in q.vertices if not q.mult(v, v)]
    if not loop_free:
        return
    v = data.draw(st.sampled_from(loop_free))
    x = data.draw(
        st.lists(
            st.integers(-3, 3), min_size=len(q.vertices), max_size=len(q.vertices)
        )
    )
    y = reflection(q, v, x)
    assert reflection(q, v, y) == tuple(x)
    assert euler_form(q, y, y) == euler_form(q, x, x)


def test_reflection_refuses_loops():
    q = Quiver(("a",), (("a", "a", 1),))
    with pytest.raises(LoopAtVertex):
        reflection(q, "a", [1])


def test_coxeter_vector_kronecker_orbit():
    q = Quiver(("1", "2"), (("1", "2", 2),))
    order = ["1", "2"]
    assert coxeter_vector(q, order, [1, 1]) == (1, 1)
    assert coxeter_vector(q, order, [0, 1]) == (2, 3)
    assert coxeter_vector(q, order, [2, 1]) == (0, -1)
    with pytest.raises(UnknownVertex):
        coxeter_vector(q, ["1", "1"], [1, 0])


def test_coxeter_vector_is_ordering_independent(fan33):
    q = quiver_of(fan33)
    orders = list(admissible_orderings(q))
    for x in ([1, 0, 0, 0, 0, 0], [1, 1, 2, 0, 1, 3]):
        vals = {coxeter_vector(q, o, x) for o in orders}
        assert len(vals) == 1
    assert coxeter_vector(q, orders[0], [1] * 6) == (1,) * 6


# ---------------------------------------------------------------------------
# frames


@pytest.fixture
def outer_spirals31():
    """All four arcs spiralling: three into the outer boundary, one inner."""
    return Triangulation(
        Annulus(3, 1),
        (
            ("d1", Prufer(Boundary.OUTER, 0)),
            ("d2", Prufer(Boundary.OUTER, 1)),
            ("d3", Prufer(Boundary.OUTER, 2)),
            ("e1", Prufer(Boundary.INNER, 0)),
        ),
    )


def test_framed_quiver_golden(outer_spirals31):
    q = framed_quiver(outer_spirals31, "d1")
    assert q.vertices == ("d1_left", "d1_right", "d2", "d3")
    assert q.framing_pairs == (("d1_left", "d1_right"),)
    assert arrow_set(q) == {("d1_right", "d3"), ("d2", "d1_left"), ("d3", "d2")}


def test_framed_mutation_sequence(outer_spirals31):
    """Mutating a frame quiver walks a finite orbit: d2, then d3 twice,
    lands back on the first mutation."""
    q = framed_quiver(outer_spirals31, "d1")
    at_d2 = mutate(q, "d2")
    assert arrow_set(at_d2) == {
        ("d1_left", "d2"),
        ("d1_right", "d3"),
        ("d2", "d3"),
        ("d3", "d1_left"),
    }
    at_d3 = mutate(at_d2, "d3")
    assert arrow_set(at_d3) == {
        ("d1_left", "d3"),
        ("d1_right", "d1_left"),
        ("d3", "d1_right"),
        ("d3", "d2"),
    }
    assert mutate(at_d3, "d3").counts() == at_d2.counts()


def test_frame_vertices_are_not_mutable(outer_spirals31):
    q = framed_quiver(outer_spirals31, "d1")
    with pytest.raises(NotMutable):
        mutate(q, "d1_left")
    with pytest.raises(NotMutable):
        mutate(q, "d1_right")


def test_framed_quiver_needs_a_spiral(seed22):
    with pytest.raises(NotStrictlyAsymptotic):
        framed_quiver(seed22, "d1")


def test_switch_frame(outer_spirals31):
    q = framed_quiver(outer_spirals31, "d1")
    assert switch_frame(outer_spirals31, q, "d2").counts() == framed_quiver(
        outer_spirals31, "d2"
    ).counts()
    with pytest.raises(NotStrictlyAsymptotic):
        switch_frame(outer_spirals31, q, "e1")  # spirals on the other side
    with pytest.raises(UnknownArcId):
        switch_frame(outer_spirals31, q, "nope")
    with pytest.raises(NotStrictlyAsymptotic):
        switch_frame(outer_spirals31, quiver_from_pairs("ab", [("a", "b")]), "d2")
    tampered = Quiver(
        q.vertices, q.arrows + (("d2", "d3", 1),), q.framing_pairs, q.frozen
    )
    with pytest.raises(ValueError):
        switch_frame(outer_spirals31, tampered, "d2")


def test_switch_frame_needs_a_second_spiral():
    t = Triangulation(
        Annulus(1, 1),
        (("a", Prufer(Boundary.OUTER, 0)), ("b", Prufer(Boundary.INNER, 0))),
    )
    q = framed_quiver(t, "a")
    with pytest.raises(NoOtherStrictAsymptoticArc):
        switch_frame(t, q, "a")


# ---------------------------------------------------------------------------
# isomorphism and components


@given(small_quivers(), st.data())
@settings(deadline=None)
def test_isomorphism_matches_bruteforce(q, data):
    perm = data.draw(st.permutations(q.vertices))
    rename = dict(zip(q.vertices, perm))
    shuffled = Quiver(
        tuple(perm), tuple((rename[s], rename[d], m) for s, d, m in q.arrows)
    )
    assert is_isomorphic(q, shuffled)
    other = data.draw(small_quivers())
    assert is_isomorphic(q, other) == isomorphic_bruteforce(q, other)


def test_isomorphism_respects_frozen():
    a = Quiver(("x", "y"), (("x", "y", 1),), frozen=("x",))
    b = Quiver(("x", "y"), (("x", "y", 1),), frozen=("y",))
    assert is_isomorphic(a, b)
    assert not is_isomorphic(a, b, respect_frozen=True)


def test_components(seed22):
    q = quiver_of(seed22)
    assert components(q) == [("d1", "d2", "d3", "d4")]
    two = Quiver(("a", "b", "c"), (("a", "b", 1),))
    assert components(two) == [("a", "b"), ("c",)]
