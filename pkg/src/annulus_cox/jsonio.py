"""Strict JSON (de)serialization for the engine's value types.

Parsers reject unknown fields and wrong types with MalformedInput so that
callers can map them onto a clean exit code or HTTP 400; dumpers are the
inverse up to key order, which is fixed for byte-stable output.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Tuple

import sympy as sp

from .cover import Seed
from .errors import MalformedInput, UnknownVertex
from .potentials import QP, LabeledArrow, Potential
from .quiver import Quiver
from .surface import (
    Adic,
    Annulus,
    Arc,
    Boundary,
    Bridging,
    Peripheral,
    Prufer,
    Triangulation,
)

_ARC_FIELDS = {
    "bridging": {"id", "kind", "outer", "inner"},
    "peripheral": {"id", "kind", "boundary", "a", "b"},
    "prufer": {"id", "kind", "boundary", "point"},
    "adic": {"id", "kind", "boundary", "point"},
}


def _need(obj: Mapping[str, Any], field: str, kind: type) -> Any:
    if field not in obj:
        raise MalformedInput(f"missing field {field!r}")
    value = obj[field]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise MalformedInput(f"field {field!r} must be {kind.__name__}")
    return value


def _check_keys(obj: Mapping[str, Any], allowed: set, what: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise MalformedInput(f"unknown {what} field(s): {sorted(extra)}")


def _boundary(name: Any) -> Boundary:
    if name == "outer":
        return Boundary.OUTER
    if name == "inner":
        return Boundary.INNER
    raise MalformedInput(f"boundary must be 'outer' or 'inner', got {name!r}")


def arc_to_json(arc_id: str, arc: Arc) -> Dict[str, Any]:
    if isinstance(arc, Bridging):
        return {"id": arc_id, "kind": "bridging", "outer": arc.outer, "inner": arc.inner}
    if isinstance(arc, Peripheral):
        return {
            "id": arc_id,
            "kind": "peripheral",
            "boundary": arc.boundary.value,
            "a": arc.a,
            "b": arc.b,
        }
    kind = "prufer" if isinstance(arc, Prufer) else "adic"
    return {"id": arc_id, "kind": kind, "boundary": arc.boundary.value, "point": arc.point}


def arc_from_json(obj: Any) -> Tuple[str, Arc]:
    if not isinstance(obj, dict):
        raise MalformedInput("arc must be an object")
    kind = _need(obj, "kind", str)
    if kind not in _ARC_FIELDS:
        raise MalformedInput(f"unknown arc kind {kind!r}")
    _check_keys(obj, _ARC_FIELDS[kind], "arc")
    arc_id = _need(obj, "id", str)
    if kind == "bridging":
        return arc_id, Bridging(_need(obj, "outer", int), _need(obj, "inner", int))
    if kind == "peripheral":
        return arc_id, Peripheral(
            _boundary(_need(obj, "boundary", str)),
            _need(obj, "a", int),
            _need(obj, "b", int),
        )
    cls = Prufer if kind == "prufer" else Adic
    return arc_id, cls(_boundary(_need(obj, "boundary", str)), _need(obj, "point", int))


def triangulation_to_json(t: Triangulation) -> Dict[str, Any]:
    return {
        "p": t.ann.p,
        "q": t.ann.q,
        "arcs": [arc_to_json(arc_id, arc) for arc_id, arc in t.arcs],
    }


def triangulation_from_json(obj: Any) -> Triangulation:
    if not isinstance(obj, dict):
        raise MalformedInput("triangulation must be an object")
    _check_keys(obj, {"p", "q", "arcs"}, "triangulation")
    p = _need(obj, "p", int)
    q = _need(obj, "q", int)
    arcs = _need(obj, "arcs", list)
    try:
        ann = Annulus(p, q)
    except ValueError as e:
        raise MalformedInput(str(e)) from None
    return Triangulation(ann, tuple(arc_from_json(a) for a in arcs))


def quiver_to_json(q: Quiver) -> Dict[str, Any]:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"from": s, "to": d, "mult": m} for s, d, m in q.arrows],
        "framing_pairs": [list(pair) for pair in q.framing_pairs],
        "frozen": list(q.frozen),
    }


def quiver_from_json(obj: Any) -> Quiver:
    if not isinstance(obj, dict):
        raise MalformedInput("quiver must be an object")
    _check_keys(obj, {"vertices", "arrows", "framing_pairs", "frozen"}, "quiver")
    vertices = _need(obj, "vertices", list)
    if not all(isinstance(v, str) for v in vertices):
        raise MalformedInput("vertices must be strings")
    arrows: List[Tuple[str, str, int]] = []
    for entry in _need(obj, "arrows", list):
        if not isinstance(entry, dict):
            raise MalformedInput("arrow must be an object")
        _check_keys(entry, {"from", "to", "mult"}, "arrow")
        arrows.append(
            (_need(entry, "from", str), _need(entry, "to", str), _need(entry, "mult", int))
        )
    framing = []
    for pair in obj.get("framing_pairs", []):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise MalformedInput("framing pair must be a 2-element list")
        framing.append((pair[0], pair[1]))
    frozen = obj.get("frozen", [])
    if not all(isinstance(v, str) for v in frozen):
        raise MalformedInput("frozen vertices must be strings")
    try:
        return Quiver(tuple(vertices), tuple(arrows), tuple(framing), tuple(frozen))
    except (TypeError, ValueError, UnknownVertex) as e:
        raise MalformedInput(str(e)) from None


def qp_to_json(qp: QP) -> Dict[str, Any]:
    return {
        "vertices": list(qp.vertices),
        "arrows": [{"id": a.id, "from": a.src, "to": a.dst} for a in qp.arrows],
        "frozen": list(qp.frozen),
        "potential": [
            {"cycle": list(cycle), "coeff": str(coeff)}
            for cycle, coeff in qp.potential.terms
        ],
    }


def qp_from_json(obj: Any) -> QP:
    if not isinstance(obj, dict):
        raise MalformedInput("quiver with potential must be an object")
    _check_keys(obj, {"vertices", "arrows", "frozen", "potential"}, "qp")
    vertices = tuple(_need(obj, "vertices", list))
    arrows = []
    for entry in _need(obj, "arrows", list):
        if not isinstance(entry, dict):
            raise MalformedInput("arrow must be an object")
        _check_keys(entry, {"id", "from", "to"}, "arrow")
        arrows.append(
            LabeledArrow(
                _need(entry, "id", str), _need(entry, "from", str), _need(entry, "to", str)
            )
        )
    terms: Dict[Tuple[str, ...], Fraction] = {}
    for entry in _need(obj, "potential", list):
        if not isinstance(entry, dict):
            raise MalformedInput("potential term must be an object")
        _check_keys(entry, {"cycle", "coeff"}, "potential term")
        cycle = tuple(_need(entry, "cycle", list))
        try:
            coeff = Fraction(_need(entry, "coeff", str))
        except ValueError:
            raise MalformedInput("coefficient must be a rational string") from None
        terms[cycle] = terms.get(cycle, Fraction(0)) + coeff
    frozen = tuple(obj.get("frozen", []))
    return QP(
        vertices=vertices,
        arrows=tuple(arrows),
        potential=Potential.of(terms),
        frozen=frozen,
    )


_EXPR_TOKEN = re.compile(r"[0-9]+|[A-Za-z_][A-Za-z_0-9]*|[+*/()]|\s+")


def expr_to_json(expr: sp.Expr) -> str:
    """Write a subtraction-free Laurent expression as numerator/denominator
    using only integers, names, `+ * / ( )`."""
    num, den = sp.fraction(sp.cancel(expr))

    def monomial(e: sp.Expr) -> str:
        coeff, parts = sp.Integer(1), []
        for factor in sp.Mul.make_args(e):
            if factor.is_Integer:
                coeff *= factor
            elif factor.is_Symbol:
                parts.append(str(factor))
            elif factor.is_Pow and factor.base.is_Symbol and factor.exp.is_Integer:
                parts.extend([str(factor.base)] * int(factor.exp))
            else:
                raise MalformedInput(f"not a monomial: {e}")
        if coeff < 0:
            raise MalformedInput(f"negative coefficient in {e}")
        if coeff != 1 or not parts:
            parts.insert(0, str(coeff))
        return "*".join(parts)

    terms = sorted(monomial(term) for term in sp.Add.make_args(sp.expand(num)))
    top = "+".join(terms)
    if den == 1:
        return top
    if len(terms) > 1:
        top = f"({top})"
    return f"{top}/{monomial(den)}"


def expr_from_json(text: str) -> sp.Expr:
    if not isinstance(text, str) or not text or "**" in text:
        raise MalformedInput("expression must use only integers, names, + * / ( )")
    pos = 0
    names = []
    for match in _EXPR_TOKEN.finditer(text):
        if match.start() != pos:
            break
        if match.group()[0].isalpha() or match.group()[0] == "_":
            names.append(match.group())
        pos = match.end()
    if pos != len(text):
        raise MalformedInput(f"bad expression syntax: {text!r}")
    try:
        expr = sp.parse_expr(text, local_dict={n: sp.Symbol(n) for n in names})
    except Exception:
        raise MalformedInput(f"bad expression syntax: {text!r}") from None
    return sp.cancel(expr)


def seed_to_json(seed: Seed) -> Dict[str, Any]:
    out = quiver_to_json(seed.quiver)
    out["variables"] = {v: expr_to_json(x) for v, x in seed.variables}
    return out


def seed_from_json(obj: Any) -> Seed:
    if not isinstance(obj, dict):
        raise MalformedInput("seed must be an object")
    _check_keys(
        obj, {"vertices", "arrows", "framing_pairs", "frozen", "variables"}, "seed"
    )
    quiver = quiver_from_json({k: v for k, v in obj.items() if k != "variables"})
    raw = _need(obj, "variables", dict)
    variables = {v: expr_from_json(x) for v, x in raw.items()}
    return Seed.of(quiver, variables)


def dumps(obj: Mapping[str, Any]) -> str:
    """Stable single-line rendering used by the CLI and the service."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
