"""Command-line front door.

Every command reads and writes the JSON schemas from :mod:`jsonio`.
Exit codes: 0 success, 1 failed verification, 2 malformed input,
3 an engine contract was violated by the requested operation.
"""

from __future__ import annotations

import functools
import json
import os
import random
import sys
from typing import Optional

import click

from . import jsonio
from .cover import TaggedDiscTriangulation, exchange_graph, initial_seed
from .errors import EngineError, MalformedArc, MalformedInput
from .limits import contract_paths, contract_with_shape, cyclic_view, shape_of
from .potentials import potential_of, qp_mutate
from .quiver import quiver_of
from .surface import (
    Annulus,
    FINITE,
    Triangulation,
    enumerate_triangulations,
    flip,
)
from .transforms import Direction, check_commutativity, coxeter, dehn_limit, dehn_twist

EXIT_VERIFICATION = 1
EXIT_MALFORMED = 2
EXIT_CONTRACT = 3


def _engine_errors(f):
    @functools.wraps(f)
    def wrapped(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (MalformedInput, MalformedArc, json.JSONDecodeError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_MALFORMED)
        except EngineError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_CONTRACT)

    return wrapped


def _read_triangulation(handle) -> Triangulation:
    return jsonio.triangulation_from_json(json.load(handle))


def _emit(doc) -> None:
    click.echo(jsonio.dumps(doc))


def _direction(name: str) -> Direction:
    return Direction.PLUS if name == "plus" else Direction.MINUS


_input_arg = click.argument("infile", type=click.File("r"), default="-")


@click.group()
def main() -> None:
    """Exact combinatorics of annulus triangulations."""


@main.command()
@_input_arg
@_engine_errors
def quiver(infile) -> None:
    """Adjacency quiver of a triangulation."""
    _emit(jsonio.quiver_to_json(quiver_of(_read_triangulation(infile))))


@main.command(name="flip")
@click.argument("arc_id")
@_input_arg
@_engine_errors
def flip_cmd(arc_id: str, infile) -> None:
    """Flip one arc."""
    _emit(jsonio.triangulation_to_json(flip(_read_triangulation(infile), arc_id)))


@main.command()
@click.option("--n", default=1, show_default=True, help="number of applications")
@_input_arg
@_engine_errors
def cox(n: int, infile) -> None:
    """Coxeter transformation, iterated n times."""
    t = _read_triangulation(infile)
    for _ in range(n):
        t = coxeter(t)
    _emit(jsonio.triangulation_to_json(t))


@main.command()
@click.argument("direction", type=click.Choice(["plus", "minus"]))
@click.option("--n", default=1, show_default=True, help="number of twists")
@_input_arg
@_engine_errors
def dehn(direction: str, n: int, infile) -> None:
    """Dehn twist along the core curve."""
    t = dehn_twist(_read_triangulation(infile), _direction(direction), n)
    _emit(jsonio.triangulation_to_json(t))


@main.command()
@click.argument("direction", type=click.Choice(["plus", "minus"]))
@_input_arg
@_engine_errors
def limit(direction: str, infile) -> None:
    """Limit of iterated Dehn twists."""
    t = dehn_limit(_read_triangulation(infile), _direction(direction))
    _emit(jsonio.triangulation_to_json(t))


@main.command()
@click.option(
    "--algorithm",
    type=click.Choice(["1", "2"]),
    default="1",
    show_default=True,
    help="1: contract a cyclically ordered quiver; 2: recover the cyclic "
    "structure from the shape first",
)
@_input_arg
@_engine_errors
def contract(algorithm: str, infile) -> None:
    """Boundary quivers of the twist limit, computed by contraction."""
    t = _read_triangulation(infile)
    if algorithm == "1":
        w, u = contract_paths(cyclic_view(t))
    else:
        w, u = contract_with_shape(quiver_of(t), shape_of(t))
    _emit(
        {
            "boundary": jsonio.quiver_to_json(w),
            "boundary_prime": jsonio.quiver_to_json(u),
        }
    )


@main.command(name="qp-mutate")
@click.argument("vertex")
@_input_arg
@_engine_errors
def qp_mutate_cmd(vertex: str, infile) -> None:
    """Mutate a quiver with potential (input: QP JSON or a triangulation)."""
    doc = json.load(infile)
    if isinstance(doc, dict) and "potential" in doc:
        qp = jsonio.qp_from_json(doc)
    else:
        qp = potential_of(jsonio.triangulation_from_json(doc))
    _emit(jsonio.qp_to_json(qp_mutate(qp, vertex)))


@main.command()
@click.option("--shape", required=True, help="p,q")
@click.option(
    "--relations",
    default="all",
    show_default=True,
    help="comma-separated relation names, or 'all'",
)
@click.option(
    "--budget",
    default=0,
    show_default=True,
    help="cap on enumerated triangulations (0 = no cap)",
)
@click.option("--seed", default=0, show_default=True, help="sampling seed")
@_engine_errors
def verify(shape: str, relations: str, budget: int, seed: int) -> None:
    """Check the mapping-class-group commutativity relations on every
    enumerated finite triangulation of the given shape."""
    try:
        p, q = (int(part) for part in shape.split(","))
    except ValueError:
        raise MalformedInput("--shape expects 'p,q'") from None
    wanted: Optional[set] = None
    if relations != "all":
        wanted = set(relations.split(","))
    instances = enumerate_triangulations(Annulus(p, q), FINITE)
    if budget:
        rng = random.Random(seed)
        if budget < len(instances):
            instances = rng.sample(instances, budget)
    tally: dict = {}
    for t in instances:
        for result in check_commutativity(t):
            if wanted is not None and result.relation not in wanted:
                continue
            entry = tally.setdefault(
                result.relation,
                {"relation": result.relation, "pass": True, "checked": 0, "witness": None},
            )
            entry["checked"] += 1
            if not result.passed and entry["pass"]:
                entry["pass"] = False
                entry["witness"] = result.to_json()["witness"]
    if wanted is not None:
        unknown = wanted - set(tally)
        if unknown:
            raise MalformedInput(f"unknown relation(s): {sorted(unknown)}")
    ok = True
    for name in sorted(tally):
        _emit(tally[name])
        ok = ok and tally[name]["pass"]
    if not ok:
        sys.exit(EXIT_VERIFICATION)


@main.command()
@click.option("--shape", default=2, show_default=True, help="marked points p")
@click.option("--depth", default=None, type=int, help="search radius (default: exhaust)")
@_engine_errors
def exchange(shape: int, depth: Optional[int]) -> None:
    """Exchange graph of the degenerate annulus, explored on the cover."""
    graph = exchange_graph(initial_seed(TaggedDiscTriangulation.plain(shape)), depth)
    _emit(
        {
            "nodes": [jsonio.seed_to_json(node) for node in graph.nodes],
            "edges": [list(edge) for edge in graph.edges],
            "closed": graph.closed,
        }
    )


@main.command()
@click.option("--port", default=None, type=int, help="override ANNULUS_COX_PORT")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port: Optional[int], host: str) -> None:
    """Serve the engine over HTTP for the explorer."""
    import uvicorn

    from .service import app

    if port is None:
        port = int(os.environ.get("ANNULUS_COX_PORT", "8787"))
    uvicorn.run(app, host=host, port=port)



if __name__ == "__main__":
    main()
