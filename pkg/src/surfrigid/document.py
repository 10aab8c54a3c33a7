"""JSON framework documents.

A document looks like::

    {"surface": {"kind": "cylinder", "radii": "induced"},
     "vertices": [[0, 1, 0], [1, 1, 1], ...],
     "edges": [[0, 1], [0, 2], ...],
     "stress": {"omega": [...], "lambda": [...]}}

Exact numbers are JSON integers or strings ``"p/q"``; JSON floats switch
the document to floating point.  ``alpha``/``beta`` apply to ellipsoids.
"""
from __future__ import annotations

import enum
import json
from fractions import Fraction

import numpy as np

from .errors import ParameterError
from .graph import Graph
from .rigidity import Framework, Stress
from .surface import DEFAULT_ALPHA, DEFAULT_BETA, Kind, SurfaceFamily, induced_family

SCHEMA_VERSION = "1"


def _has_float(obj) -> bool:
    if isinstance(obj, float):
        return True
    if isinstance(obj, dict):
        return any(_has_float(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return any(_has_float(v) for v in obj)
    return False


def parse_number(x, exact: bool):
    if isinstance(x, bool):
        raise ParameterError(f"expected a number, got {x!r}")
    try:
        if isinstance(x, str):
            value = Fraction(x.strip())
        elif isinstance(x, (int, float)):
            value = Fraction(repr(x)) if isinstance(x, float) else Fraction(x)
        else:
            raise ParameterError(f"expected a number, got {x!r}")
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"cannot parse number {x!r}") from exc
    return value if exact else float(value)


def format_number(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (np.integer, int)):
        return int(x)
    return float(x)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return format_number(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (tuple, np.ndarray)):
        return list(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default)


def _resolve_mode(doc, mode):
    if mode not in ("auto", "exact", "float"):
        raise ParameterError(f"unknown number mode {mode!r}")
    if mode == "auto":
        return not _has_float(doc)
    return mode == "exact"


def load_graph(doc: dict) -> Graph:
    """Graph from either a framework document or ``{"n": ..., "edges": [...]}``."""
    if not isinstance(doc, dict):
        raise ParameterError("document must be a JSON object")
    if "n" in doc:
        n = doc["n"]
    elif "vertices" in doc:
        n = len(doc["vertices"])
    else:
        raise ParameterError("graph document needs 'n' or 'vertices'")
    try:
        return Graph(int(n), tuple(tuple(int(v) for v in e) for e in doc.get("edges", [])))
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"malformed edge list: {exc}") from exc


def load_framework(doc: dict, mode: str = "auto") -> tuple[Framework, Stress | None]:
    if not isinstance(doc, dict):
        raise ParameterError("document must be a JSON object")
    exact = _resolve_mode(doc, mode)
    for key in ("surface", "vertices", "edges"):
        if key not in doc:
            raise ParameterError(f"framework document is missing {key!r}")
    surface = doc["surface"]
    if not isinstance(surface, dict) or "kind" not in surface:
        raise ParameterError("'surface' must be an object with a 'kind'")
    kind = Kind.parse(surface["kind"])
    alpha = parse_number(surface["alpha"], exact) if "alpha" in surface else (
        DEFAULT_ALPHA if exact else float(DEFAULT_ALPHA))
    beta = parse_number(surface["beta"], exact) if "beta" in surface else (
        DEFAULT_BETA if exact else float(DEFAULT_BETA))
    try:
        points = [tuple(parse_number(c, exact) for c in p) for p in doc["vertices"]]
    except TypeError as exc:
        raise ParameterError("'vertices' must be a list of [x, y, z] triples") from exc
    if any(len(p) != 3 for p in points):
        raise ParameterError("every vertex needs exactly three coordinates")
    graph = load_graph({"n": len(points), "edges": doc["edges"]})
    radii = surface.get("radii", "induced")
    if radii == "induced":
        family = induced_family(kind, points, alpha, beta)
    else:
        family = SurfaceFamily(kind, tuple(parse_number(r, exact) for r in radii), alpha, beta)
    fw = Framework(graph, tuple(points), family)
    stress = None
    if "stress" in doc:
        sd = doc["stress"]
        try:
            stress = Stress(tuple(parse_number(w, exact) for w in sd["omega"]),
                            tuple(parse_number(x, exact) for x in sd["lambda"]))
        except (KeyError, TypeError) as exc:
            raise ParameterError("'stress' needs 'omega' and 'lambda' lists") from exc
    return fw, stress


def framework_document(fw: Framework, stress: Stress | None = None, induced: bool = False) -> dict:
    surface = {"kind": fw.kind.value}
    if fw.kind is Kind.ELLIPSOID:
        surface["alpha"] = format_number(fw.family.alpha)
        surface["beta"] = format_number(fw.family.beta)
    surface["radii"] = "induced" if induced else [format_number(r) for r in fw.family.radii]
    doc = {
        "surface": surface,
        "vertices": [[format_number(c) for c in p] for p in fw.points],
        "edges": [list(e) for e in fw.graph.edges],
    }
    if stress is not None:
        doc["stress"] = {"omega": [format_number(w) for w in stress.omega],
                         "lambda": [format_number(x) for x in stress.lam]}
    return doc
