"""Exact combinatorics of annulus triangulations and their quivers.

Arcs on the annulus with marked boundary points, flips, the associated
quivers and their mutations, Coxeter transformations, Dehn twists and
their infinite limits, quivers with potentials, and the lambda-length
cluster structure of the double cover of a once-punctured disc.
"""

from .errors import (
    EngineError,
    IncompatibleInput,
    MalformedArc,
    MalformedInput,
    NotMutable,
    TooLarge,
    UnknownArcId,
    UnknownArrow,
    UnknownVertex,
)
from .surface import (
    ASYMPTOTIC,
    FINITE,
    Adic,
    Annulus,
    Boundary,
    Bridging,
    Peripheral,
    Prufer,
    Triangulation,
    bounding_arcs,
    complete_to_triangulation,
    crosses,
    enumerate_triangulations,
    flip,
)
from .quiver import (
    Quiver,
    admissible_ordering,
    coxeter_quiver,
    coxeter_vector,
    euler_form,
    framed_quiver,
    is_isomorphic,
    mutate,
    quiver_of,
    reflection,
    switch_frame,
)
from .transforms import (
    Direction,
    RelationResult,
    check_commutativity,
    coxeter,
    coxeter_bridging,
    dehn_limit,
    dehn_twist,
    reduce_to_bridging,
    same_triangulation,
)
from .limits import contract_paths, contract_with_shape, cox_limit, cyclic_view, shape_of
from .potentials import QP, Potential, cyclic_derivative, potential_of, qp_mutate
from .cover import (
    Seed,
    TaggedDiscTriangulation,
    composite_mutate,
    double_cover,
    exchange_graph,
    initial_seed,
    lambda_lengths,
)

__version__ = "0.1.0"
