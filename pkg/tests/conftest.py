import pytest

from annulus_cox.surface import Annulus, Boundary, Bridging, Peripheral, Triangulation


@pytest.fixture
def seed22():
    """Four-arc triangulation of C_{2,2}: three bridging arcs and one
    peripheral arc over the outer boundary."""
    return Triangulation(
        Annulus(2, 2),
        (
            ("d1", Bridging(0, 0)),
            ("d2", Bridging(0, 1)),
            ("d3", Peripheral(Boundary.OUTER, 0, 2)),
            ("d4", Bridging(0, -1)),
        ),
    )


@pytest.fixture
def zigzag33():
    """Bridging triangulation of C_{3,3} that alternates between the two
    boundaries; the path-contraction goldens are stated on it."""
    arcs = [
        Bridging(0, 0),
        Bridging(1, 0),
        Bridging(1, 1),
        Bridging(2, 1),
        Bridging(2, 2),
        Bridging(2, 3),
    ]
    return Triangulation(
        Annulus(3, 3), tuple((str(i), a) for i, a in enumerate(arcs, start=1))
    )


@pytest.fixture
def fan33():
    """Bridging triangulation of C_{3,3} fanned out of outer point 1; the
    Coxeter goldens are stated on it."""
    arcs = [
        Bridging(0, 0),
        Bridging(1, 0),
        Bridging(1, 1),
        Bridging(1, 2),
        Bridging(1, 3),
        Bridging(2, 3),
    ]
    return Triangulation(
        Annulus(3, 3), tuple((str(i), a) for i, a in enumerate(arcs, start=1))
    )
