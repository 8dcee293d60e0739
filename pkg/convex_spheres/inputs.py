"""Geometry documents in JSON.

Four shapes are accepted, each with an optional "name":

    {"n": 3, "kind": "points1d", "points": ["0", "1/2", "1"]}
    {"n": 4, "kind": "points2d", "points": [["0", "0"], ["1", "0"], ...]}
    {"n": 4, "kind": "poset", "relations": [[1, 2], ...], "direction": "lower"}
    {"n": 3, "kind": "family", "sets": [[], [1], [1, 2], ...]}

Unknown keys are rejected. Bare graded posets (elements plus cover pairs)
have their own document, read by `parse_poset`.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from .errors import ParseError, PosetError
from .geometry import ConvexGeometry, Points1D, Points2D, ExplicitFamily, PosetIdeal
from .lattice import GradedPoset
from . import subsets

KEYS = {
    "points1d": {"points"},
    "points2d": {"points"},
    "poset": {"relations", "direction"},
    "family": {"sets"},
}
OPTIONAL = {"name", "direction"}


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: {value!r} is not a rational \"p/q\"")
    raise ParseError(f"{where}: expected an integer or a \"p/q\" string, got {value!r}")


def _element(value: Any, n: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an element of [{n}], got {value!r}")
    if not 1 <= value <= n:
        raise ParseError(f"{where}: {value} is outside [{n}]")
    return value


def _list(value: Any, where: str) -> List[Any]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list")
    return value


def _representation(kind: str, n: int, doc: Dict[str, Any]):
    if kind == "points1d":
        points = _list(doc["points"], "points")
        return Points1D(tuple(_rational(p, f"points[{i}]") for i, p in enumerate(points)))
    if kind == "points2d":
        coords: List[Tuple[Fraction, Fraction]] = []
        for i, p in enumerate(_list(doc["points"], "points")):
            pair = _list(p, f"points[{i}]")
            if len(pair) != 2:
                raise ParseError(f"points[{i}]: expected [x, y]")
            coords.append((_rational(pair[0], f"points[{i}][0]"), _rational(pair[1], f"points[{i}][1]")))
        return Points2D(tuple(coords))
    if kind == "poset":
        relations = []
        for i, r in enumerate(_list(doc["relations"], "relations")):
            pair = _list(r, f"relations[{i}]")
            if len(pair) != 2:
                raise ParseError(f"relations[{i}]: expected [a, b] meaning a < b")
            relations.append((_element(pair[0], n, f"relations[{i}][0]"),
                              _element(pair[1], n, f"relations[{i}][1]")))
        direction = doc.get("direction", "lower")
        if direction not in ("lower", "upper"):
            raise ParseError(f"direction must be \"lower\" or \"upper\", got {direction!r}")
        return PosetIdeal(tuple(sorted(relations)), direction)
    sets = []
    for i, s in enumerate(_list(doc["sets"], "sets")):
        members = _list(s, f"sets[{i}]")
        sets.append(subsets.from_elements(_element(x, n, f"sets[{i}]") for x in members))
    return ExplicitFamily(frozenset(sets))


def parse_document(doc: Any) -> ConvexGeometry:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    kind = doc.get("kind")
    if kind not in KEYS:
        raise ParseError(f"kind must be one of {sorted(KEYS)}, got {kind!r}")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError(f"n must be an integer, got {n!r}")
    allowed = {"n", "kind", "name"} | KEYS[kind]
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ParseError(f"unknown keys for {kind}: {', '.join(unknown)}")
    missing = sorted(KEYS[kind] - OPTIONAL - set(doc))
    if missing:
        raise ParseError(f"missing keys for {kind}: {', '.join(missing)}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name must be a string")
    return ConvexGeometry(n, _representation(kind, n, doc), name)


def parse_geometry(text: str) -> ConvexGeometry:
    """Geometry from a JSON string; syntax errors carry their line and column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno)
    return parse_document(doc)


def _read(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}")
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} is not UTF-8: byte {e.start} is invalid")


def load_geometry(path: Union[str, Path]) -> ConvexGeometry:
    return parse_geometry(_read(path))


def geometry_document(geometry: ConvexGeometry) -> Dict[str, Any]:
    """The JSON document `parse_document` reads back into `geometry`."""
    rep = geometry.representation
    doc: Dict[str, Any] = {"n": geometry.n, "kind": rep.kind, "name": geometry.name}
    if isinstance(rep, Points1D):
        doc["points"] = [str(p) for p in rep.points]
    elif isinstance(rep, Points2D):
        doc["points"] = [[str(x), str(y)] for x, y in rep.points]
    elif isinstance(rep, PosetIdeal):
        doc["relations"] = [list(r) for r in rep.relations]
        doc["direction"] = rep.direction
    else:
        doc["sets"] = [list(subsets.elements(s)) for s in subsets.canonical(rep.sets)]
    return doc


# Bare posets: {"elements": ["a", "b", ...], "covers": [["a", "b"], ...]}

def _label(value: Any, where: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: expected a string or an integer, got {value!r}")
    return value


def parse_poset_document(doc: Any) -> GradedPoset:
    """A graded poset from its elements and cover pairs; elements are strings or integers."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    unknown = sorted(set(doc) - {"elements", "covers", "name"})
    if unknown:
        raise ParseError(f"unknown keys for a poset: {', '.join(unknown)}")
    elements = [_label(e, f"elements[{i}]") for i, e in enumerate(_list(doc.get("elements"), "elements"))]
    covers = []
    for i, c in enumerate(_list(doc.get("covers", []), "covers")):
        pair = _list(c, f"covers[{i}]")
        if len(pair) != 2:
            raise ParseError(f"covers[{i}]: expected [a, b] meaning a ⋖ b")
        covers.append((_label(pair[0], f"covers[{i}][0]"), _label(pair[1], f"covers[{i}][1]")))
    try:
        return GradedPoset(elements, covers)
    except PosetError as e:
        raise ParseError(f"not a graded poset: {e}")


def parse_poset(text: str) -> GradedPoset:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno)
    return parse_poset_document(doc)


def load_poset(path: Union[str, Path]) -> GradedPoset:
    return parse_poset(_read(path))
