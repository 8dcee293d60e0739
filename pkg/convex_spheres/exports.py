"""Text exports: DOT Hasse diagrams, OFF surfaces and JSON documents."""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Tuple

from . import subsets
from .complex import SimplicialComplex
from .errors import ComplexError
from .lattice import GradedPoset
from .sphere import QPoset, SignedElement

OFF_MAX_N = 3


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(poset: GradedPoset, title: str = "poset") -> str:
    """Hasse diagram with one row per rank, bottom row first."""
    ids = {e: f"v{i}" for i, e in enumerate(poset.elements)}
    dot = f"digraph {_quote(title)} {{\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n"
    by_rank: Dict[int, List] = {}
    for e in poset.elements:
        by_rank.setdefault(poset.rank[e], []).append(e)
    for r in sorted(by_rank):
        dot += "  { rank=same;"
        for e in by_rank[r]:
            dot += f" {ids[e]} [label={_quote(poset.label(e))}];"
        dot += " }\n"
    for a, b in poset.covers:
        dot += f"  {ids[a]} -> {ids[b]} [arrowhead=none];\n"
    dot += "}\n"
    return dot


def crosspolytope_point(q: SignedElement, n: int) -> Tuple[Fraction, ...]:
    """Barycenter of the face {ε(a)·e_a : a ∈ ext(A)} of the crosspolytope."""
    coords = [Fraction(0)] * n
    for a, s in q.signs:
        coords[a - 1] = Fraction(s, len(q.signs))
    return tuple(coords)


def pm_delta_off(complex_: SimplicialComplex, n: int) -> str:
    """±Δ placed on the boundary of the n-crosspolytope (n <= 3)."""
    if n > OFF_MAX_N:
        raise ComplexError(f"OFF export needs n <= {OFF_MAX_N}, got {n}")
    vertices = complex_.vertices
    index = {v: i for i, v in enumerate(vertices)}
    facets = complex_.sorted_facets()
    off = f"OFF\n{len(vertices)} {len(facets)} 0\n"
    for v in vertices:
        point = list(crosspolytope_point(v, n)) + [Fraction(0)] * (3 - n)
        off += " ".join(f"{float(x):.6f}" for x in point) + "\n"
    for f in facets:
        off += f"{len(f)} " + " ".join(str(index[v]) for v in f) + "\n"
    return off


def poset_dict(poset: GradedPoset) -> Dict[str, Any]:
    """Elements and covers by label, the document `inputs.parse_poset` reads."""
    return {
        "elements": [poset.label(e) for e in poset.elements],
        "covers": [[poset.label(a), poset.label(b)] for a, b in poset.covers],
    }


def signed_element_dict(q) -> Dict[str, Any]:
    if not isinstance(q, SignedElement):
        return {"label": q.label, "formal": True}
    return {
        "label": q.label,
        "closed": list(subsets.elements(q.closed)),
        "signs": {str(a): s for a, s in q.signs},
    }


def q_poset_dict(q_poset: QPoset) -> Dict[str, Any]:
    poset = q_poset.poset
    return {
        "orientation": q_poset.orientation,
        "rank": poset.height,
        "elements": [dict(signed_element_dict(e), rank=poset.rank[e]) for e in poset.elements],
        "covers": [[a.label, b.label] for a, b in poset.covers],
    }


def to_json(document: Any) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_text(directory: Path, name: str, text: str) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / name
    with open(path, "w") as f:
        f.write(text)
    return path
