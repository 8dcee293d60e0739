"""Simplicial complexes stored as facet lists.

Faces are implicit (every subset of a facet). Vertices are any hashable
labels; a sort key supplied at construction fixes the order used in listings
and exports.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from logzero import logger
from sympy import Poly

from . import polynomials, subsets
from .errors import FaceNotInComplex, ResourceLimit, VertexCollision
from .lattice import GradedPoset, reverse_linear_extension

MAX_FACETS = 1_000_000

Vertex = Hashable
Face = FrozenSet[Vertex]


def _identity(v):
    return v


class SimplicialComplex:
    def __init__(self, facets: Iterable[Iterable[Vertex]], key: Optional[Callable] = None,
                 names: Optional[Dict[Vertex, str]] = None, max_facets: int = MAX_FACETS):
        raw = {frozenset(f) for f in facets}
        if len(raw) > max_facets:
            raise ResourceLimit(f"complex would have {len(raw)} facets (cap {max_facets})")
        top = max((len(f) for f in raw), default=0)
        larger = [f for f in raw if len(f) == top]
        # drop anything contained in a larger facet
        kept = set(larger)
        for f in sorted((f for f in raw if len(f) < top), key=len, reverse=True):
            if not any(f < g for g in kept):
                kept.add(f)
        self.facets: FrozenSet[Face] = frozenset(kept)
        self.key = key or _identity
        self.names: Dict[Vertex, str] = dict(names) if names else {}

    def __len__(self) -> int:
        return len(self.facets)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def name(self, v: Vertex) -> str:
        return self.names.get(v, str(v))

    @property
    def vertices(self) -> List[Vertex]:
        found = set()
        for f in self.facets:
            found |= f
        return sorted(found, key=self.key)

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def sorted_facet(self, f: Iterable[Vertex]) -> Tuple[Vertex, ...]:
        return tuple(sorted(f, key=self.key))

    def sorted_facets(self) -> List[Tuple[Vertex, ...]]:
        listed = [self.sorted_facet(f) for f in self.facets]
        return sorted(listed, key=lambda f: (len(f), [self.key(v) for v in f]))

    def contains_face(self, face: Iterable[Vertex]) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def faces(self, size: int) -> FrozenSet[Face]:
        """All faces with `size` vertices (dimension size - 1)."""
        found = set()
        for f in self.facets:
            if len(f) >= size:
                found.update(frozenset(c) for c in combinations(f, size))
        return frozenset(found)

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "vertices": [self.name(v) for v in self.vertices],
            "facets": [[self.name(v) for v in f] for f in self.sorted_facets()],
        }


def simplex(vertices: Iterable[Vertex], key: Optional[Callable] = None,
            names: Optional[Dict[Vertex, str]] = None) -> SimplicialComplex:
    return SimplicialComplex([vertices], key, names)


def order_complex(poset: GradedPoset, max_facets: int = MAX_FACETS) -> SimplicialComplex:
    """Chains of `poset` as faces; facets are the maximal chains."""
    position = {e: i for i, e in enumerate(poset.elements)}
    chains = poset.maximal_chains(limit=max_facets)
    names = {e: poset.label(e) for e in poset.elements}
    return SimplicialComplex(chains, position.__getitem__, names, max_facets)


def stellar_subdivision(complex_: SimplicialComplex, face: Iterable[Vertex], new_vertex: Vertex,
                        name: Optional[str] = None, max_facets: int = MAX_FACETS) -> SimplicialComplex:
    """sd_σ(Δ): faces τ ∪ {v} with τ not containing σ and τ ∪ σ a face, plus every face not containing σ.

    On facets this replaces each F ⊇ σ by the |σ| facets (F minus s) ∪ {v}.
    """
    sigma = frozenset(face)
    if not sigma or not complex_.contains_face(sigma):
        raise FaceNotInComplex(f"{sorted(map(complex_.name, sigma))} is not a face")
    if any(new_vertex in f for f in complex_.facets):
        raise VertexCollision(f"{complex_.name(new_vertex)} is already a vertex")
    result: List[Face] = []
    for f in complex_.facets:
        if sigma <= f:
            result.extend((f - {s}) | {new_vertex} for s in sigma)
        else:
            result.append(f)
    names = dict(complex_.names)
    if name is not None:
        names[new_vertex] = name
    return SimplicialComplex(result, complex_.key, names, max_facets)


@dataclass(frozen=True)
class SubdivisionStep:
    """One step A_i of the iterated construction."""
    closed: int
    face: Tuple[int, ...]
    principal: bool
    complex: SimplicialComplex


def build_by_subdivision(lattice, max_facets: int = MAX_FACETS) -> Tuple[List[SubdivisionStep], SimplicialComplex]:
    """Δ(L minus 0̂) from the simplex on the principal closed sets.

    Closed sets are taken largest first; a non-principal A is inserted by
    subdividing the face {⟨a⟩ : a ∈ ext(A)}. Principal sets are already
    vertices, so their steps leave the complex unchanged.
    """
    geometry = lattice.geometry
    principal = {geometry.principal(i) for i in range(1, geometry.n + 1)}
    names = {a: lattice.label(a) for a in lattice.elements}
    current = simplex(principal, subsets.canonical_key, names)
    steps = [SubdivisionStep(0, (), False, current)]
    for a in reverse_linear_extension(lattice):
        face = tuple(subsets.canonical(geometry.principal(x) for x in subsets.elements(geometry.extreme_points(a))))
        if a in principal:
            steps.append(SubdivisionStep(a, face, True, current))
            continue
        current = stellar_subdivision(current, face, a, names[a], max_facets)
        logger.debug("subdivided %s: %d facets", names[a], len(current))
        steps.append(SubdivisionStep(a, face, False, current))
    return steps, current


# Counting

def f_vector(complex_: SimplicialComplex) -> List[int]:
    """(f_0, ..., f_{d-1})."""
    return [len(complex_.faces(k)) for k in range(1, complex_.dimension + 2)]


def h_polynomial(complex_: SimplicialComplex) -> Poly:
    """h(t) = Σ_{i=0}^{d} f_{i-1} t^i (1-t)^{d-i}, with f_{-1} = 1."""
    f = [1] + f_vector(complex_)
    d = len(f) - 1
    t = polynomials.T
    expr = sum(f[i] * t**i * (1 - t) ** (d - i) for i in range(d + 1))
    return Poly(expr, t, domain="QQ")


def h_vector(complex_: SimplicialComplex) -> List[int]:
    d = complex_.dimension + 1
    coeffs = [int(c) for c in polynomials.coefficients(h_polynomial(complex_))]
    return coeffs + [0] * (d + 1 - len(coeffs))


def euler_characteristic(complex_: SimplicialComplex) -> int:
    return sum((-1) ** i * fi for i, fi in enumerate(f_vector(complex_)))


# Local structure

def star(complex_: SimplicialComplex, face: Iterable[Vertex]) -> SimplicialComplex:
    sigma = frozenset(face)
    if not complex_.contains_face(sigma):
        raise FaceNotInComplex("face not in complex")
    return SimplicialComplex((f for f in complex_.facets if sigma <= f), complex_.key, complex_.names)


def link(complex_: SimplicialComplex, face: Iterable[Vertex]) -> SimplicialComplex:
    sigma = frozenset(face)
    if not complex_.contains_face(sigma):
        raise FaceNotInComplex("face not in complex")
    return SimplicialComplex((f - sigma for f in complex_.facets if sigma <= f),
                             complex_.key, complex_.names)


def cone_points(complex_: SimplicialComplex) -> List[Vertex]:
    """Vertices lying in every facet."""
    common = None
    for f in complex_.facets:
        common = set(f) if common is None else common & f
    return sorted(common or (), key=complex_.key)


def ridge_counts(complex_: SimplicialComplex) -> Dict[Face, int]:
    counts: Dict[Face, int] = {}
    for f in complex_.facets:
        for v in f:
            r = f - {v}
            counts[r] = counts.get(r, 0) + 1
    return counts


def boundary(complex_: SimplicialComplex) -> SimplicialComplex:
    """Ridges lying in exactly one facet."""
    return SimplicialComplex((r for r, c in ridge_counts(complex_).items() if c == 1),
                             complex_.key, complex_.names)


def is_strongly_connected(complex_: SimplicialComplex) -> bool:
    """Facets connected through shared ridges."""
    graph = nx.Graph()
    graph.add_nodes_from(complex_.facets)
    holders: Dict[Face, List[Face]] = {}
    for f in complex_.facets:
        for v in f:
            holders.setdefault(f - {v}, []).append(f)
    for group in holders.values():
        for a, b in zip(group, group[1:]):
            graph.add_edge(a, b)
    return graph.number_of_nodes() > 0 and nx.is_connected(graph)


def is_pseudomanifold(complex_: SimplicialComplex, with_boundary: bool = False) -> bool:
    """Pure, strongly connected, every ridge in exactly two facets (one or two with boundary)."""
    if not complex_.facets or not complex_.is_pure():
        return False
    if complex_.dimension == 0:
        return with_boundary or len(complex_) == 2
    allowed = (1, 2) if with_boundary else (2,)
    if any(c not in allowed for c in ridge_counts(complex_).values()):
        return False
    return is_strongly_connected(complex_)


def is_sphere_like(complex_: SimplicialComplex) -> bool:
    """Closed pseudomanifold with the Euler characteristic of a (d-1)-sphere."""
    d = complex_.dimension + 1
    return is_pseudomanifold(complex_) and euler_characteristic(complex_) == 1 + (-1) ** (d - 1)


def is_ball_like(complex_: SimplicialComplex) -> bool:
    """Pseudomanifold with nonempty boundary and Euler characteristic 1."""
    if not is_pseudomanifold(complex_, with_boundary=True):
        return False
    if complex_.dimension == 0:
        return len(complex_) == 1
    has_boundary = any(c == 1 for c in ridge_counts(complex_).values())
    return has_boundary and euler_characteristic(complex_) == 1


def check_subdivision_bookkeeping(before: SimplicialComplex, after: SimplicialComplex,
                                  face: Sequence[Vertex]) -> bool:
    """χ unchanged and facet count grown by (facets through σ)·(|σ| - 1)."""
    sigma = frozenset(face)
    through = sum(1 for f in before.facets if sigma <= f)
    if len(after) != len(before) + through * (len(sigma) - 1):
        return False
    return euler_characteristic(before) == euler_characteristic(after)

