"""Graded posets and lattices.

Posets keep only their cover relation (a networkx DiGraph); order queries go
through up-set and down-set bitmasks over a fixed linear extension, built
once on first use.
"""

from functools import cached_property
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
from sympy import Poly

from . import polynomials, subsets
from .errors import (NotALattice, NotComparable, NotGraded, No0Hat, No1Hat,
                     PosetError, ResourceLimit)

Element = Hashable


class GradedPoset:
    """Finite graded poset given by its covers.

    `elements` fixes the canonical order used for every listing. Ranks are
    inferred from the minimal elements when not supplied, and every cover
    must raise the rank by exactly one.
    """

    def __init__(self, elements: Iterable[Element], covers: Iterable[Tuple[Element, Element]],
                 rank: Optional[Mapping[Element, int]] = None,
                 labels: Optional[Mapping[Element, str]] = None):
        self.elements: Tuple[Element, ...] = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise PosetError("duplicate elements")
        known = set(self.elements)
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self.elements)
        for a, b in covers:
            if a not in known or b not in known:
                raise PosetError(f"cover ({a!r}, {b!r}) uses an unknown element")
            self.graph.add_edge(a, b)
        if not nx.is_directed_acyclic_graph(self.graph):
            raise PosetError("cover relation has a cycle")
        self.rank: Dict[Element, int] = dict(rank) if rank is not None else self._infer_rank()
        for a, b in self.graph.edges:
            if self.rank[b] != self.rank[a] + 1:
                raise NotGraded(f"cover {a!r} < {b!r} jumps from rank {self.rank[a]} to {self.rank[b]}")
        self.labels: Dict[Element, str] = dict(labels) if labels else {}
        minimal = [e for e in self.elements if self.graph.in_degree(e) == 0]
        maximal = [e for e in self.elements if self.graph.out_degree(e) == 0]
        self.bottom: Optional[Element] = minimal[0] if len(minimal) == 1 else None
        self.top: Optional[Element] = maximal[0] if len(maximal) == 1 else None
        order = {e: i for i, e in enumerate(self.elements)}
        self._linear: Tuple[Element, ...] = tuple(sorted(self.elements, key=lambda e: (self.rank[e], order[e])))
        self._pos: Dict[Element, int] = {e: i for i, e in enumerate(self._linear)}
        self._mobius: Dict[Element, Dict[Element, int]] = {}

    def _infer_rank(self) -> Dict[Element, int]:
        rank: Dict[Element, int] = {}
        for e in nx.topological_sort(self.graph):
            below = list(self.graph.predecessors(e))
            if not below:
                rank[e] = 0
                continue
            values = {rank[b] + 1 for b in below}
            if len(values) != 1:
                raise NotGraded(f"element {e!r} has covers at different ranks")
            rank[e] = values.pop()
        return rank

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e) -> bool:
        return e in self._pos

    def label(self, e: Element) -> str:
        return self.labels.get(e, str(e))

    @property
    def covers(self) -> List[Tuple[Element, Element]]:
        return sorted(self.graph.edges, key=lambda ab: (self._pos[ab[0]], self._pos[ab[1]]))

    def upper_covers(self, e: Element) -> List[Element]:
        return sorted(self.graph.successors(e), key=self._pos.__getitem__)

    def lower_covers(self, e: Element) -> List[Element]:
        return sorted(self.graph.predecessors(e), key=self._pos.__getitem__)

    @property
    def height(self) -> int:
        return max(self.rank.values(), default=0)

    # Reachability

    @cached_property
    def _up(self) -> Dict[Element, int]:
        up: Dict[Element, int] = {}
        for e in reversed(self._linear):
            mask = 1 << self._pos[e]
            for s in self.graph.successors(e):
                mask |= up[s]
            up[e] = mask
        return up

    @cached_property
    def _down(self) -> Dict[Element, int]:
        down: Dict[Element, int] = {}
        for e in self._linear:
            mask = 1 << self._pos[e]
            for p in self.graph.predecessors(e):
                mask |= down[p]
            down[e] = mask
        return down

    def _members(self, mask: int) -> Iterator[Element]:
        while mask:
            low = mask & -mask
            yield self._linear[low.bit_length() - 1]
            mask ^= low

    def leq(self, s: Element, t: Element) -> bool:
        return bool(self._up[s] >> self._pos[t] & 1)

    def lt(self, s: Element, t: Element) -> bool:
        return s != t and self.leq(s, t)

    def upset(self, e: Element) -> List[Element]:
        return list(self._members(self._up[e]))

    def downset(self, e: Element) -> List[Element]:
        return list(self._members(self._down[e]))

    def interval(self, s: Element, t: Element) -> List[Element]:
        """[s, t] in linear-extension order."""
        return list(self._members(self._up[s] & self._down[t]))

    # Derived posets

    def subposet(self, keep: Iterable[Element], rank_shift: int = 0) -> "GradedPoset":
        """Restriction to a convex subset (an interval, or the poset minus 0̂/1̂)."""
        kept = set(keep)
        elements = [e for e in self.elements if e in kept]
        covers = [(a, b) for a, b in self.graph.edges if a in kept and b in kept]
        rank = {e: self.rank[e] + rank_shift for e in elements}
        return GradedPoset(elements, covers, rank, self.labels)

    def proper_part(self) -> "GradedPoset":
        """The poset with 0̂ and 1̂ removed, atoms at rank 0."""
        if self.bottom is None:
            raise No0Hat("poset has no minimum")
        if self.top is None:
            raise No1Hat("poset has no maximum")
        return self.subposet([e for e in self.elements if e not in (self.bottom, self.top)], -1)

    def dual(self) -> "GradedPoset":
        h = self.height
        return GradedPoset(self.elements, [(b, a) for a, b in self.graph.edges],
                           {e: h - r for e, r in self.rank.items()}, self.labels)

    def with_bottom(self, new: Element, label: str = "0̂") -> "GradedPoset":
        """Adjoin a new minimum below every minimal element."""
        if new in self:
            raise PosetError(f"{new!r} is already an element")
        minimal = [e for e in self.elements if self.graph.in_degree(e) == 0]
        rank = {e: r + 1 for e, r in self.rank.items()}
        rank[new] = 0
        labels = dict(self.labels)
        labels[new] = label
        return GradedPoset((new,) + self.elements,
                           [(new, m) for m in minimal] + list(self.graph.edges), rank, labels)

    def same_order(self, other: "GradedPoset") -> bool:
        """Equal element sets, covers and ranks."""
        return (set(self.elements) == set(other.elements)
                and set(self.graph.edges) == set(other.graph.edges)
                and self.rank == other.rank)

    # Möbius function and ν

    def mobius_row(self, s: Element) -> Dict[Element, int]:
        """μ(s, u) for every u >= s, by μ(s,s) = 1 and μ(s,u) = -Σ_{s<=v<u} μ(s,v)."""
        row = self._mobius.get(s)
        if row is None:
            row = {}
            up = self._up[s]
            for u in self._members(up):
                if u == s:
                    row[u] = 1
                else:
                    strictly_below = up & self._down[u] & ~(1 << self._pos[u])
                    row[u] = -sum(row[v] for v in self._members(strictly_below))
            self._mobius[s] = row
        return row

    def mobius(self, s: Element, t: Element) -> int:
        if not self.leq(s, t):
            raise NotComparable(f"{self.label(s)} is not below {self.label(t)}")
        return self.mobius_row(s)[t]

    def nu(self, s: Element, t: Optional[Element] = None) -> int:
        """Σ (-1)^rk(s,u) μ(s,u) over u in [s, t] (over all u >= s when t is None)."""
        row = self.mobius_row(s)
        if t is None:
            members = row.keys()
        else:
            if not self.leq(s, t):
                raise NotComparable(f"{self.label(s)} is not below {self.label(t)}")
            members = self.interval(s, t)
        base = self.rank[s]
        return sum((-1) ** (self.rank[u] - base) * row[u] for u in members)

    # Lattice operations

    def _extremum(self, mask: int, above: Dict[Element, int]) -> Optional[Element]:
        found = [m for m in self._members(mask) if above[m] & mask == 1 << self._pos[m]]
        return found[0] if len(found) == 1 else None

    def meet(self, a: Element, b: Element) -> Element:
        m = self._extremum(self._down[a] & self._down[b], self._up)
        if m is None:
            raise NotALattice(f"{self.label(a)} and {self.label(b)} have no meet")
        return m

    def join(self, a: Element, b: Element) -> Element:
        j = self._extremum(self._up[a] & self._up[b], self._down)
        if j is None:
            raise NotALattice(f"{self.label(a)} and {self.label(b)} have no join")
        return j

    def is_lattice(self) -> bool:
        if self.bottom is None or self.top is None:
            return False
        try:
            for i, a in enumerate(self.elements):
                for b in self.elements[i + 1:]:
                    self.meet(a, b)
                    self.join(a, b)
        except NotALattice:
            return False
        return True

    def is_boolean(self, s: Element, t: Element) -> bool:
        """Whether [s, t] is isomorphic to a Boolean lattice."""
        if not self.leq(s, t):
            return False
        members = self.interval(s, t)
        atoms = [u for u in self.upper_covers(s) if self.leq(u, t)]
        k = len(atoms)
        if len(members) != 1 << k or self.rank[t] - self.rank[s] != k:
            return False
        code = {u: subsets.from_elements(i for i, a in enumerate(atoms, 1) if self.leq(a, u))
                for u in members}
        if len(set(code.values())) != len(members):
            return False
        return all(self.leq(u, v) == subsets.is_subset(code[u], code[v])
                   for u in members for v in members)

    # Chains

    def maximal_chains(self, limit: Optional[int] = None) -> List[Tuple[Element, ...]]:
        """Saturated chains from a minimal to a maximal element."""
        chains: List[Tuple[Element, ...]] = []
        minimal = [e for e in self._linear if self.graph.in_degree(e) == 0]
        stack = [(m,) for m in reversed(minimal)]
        while stack:
            chain = stack.pop()
            above = self.upper_covers(chain[-1])
            if not above:
                chains.append(chain)
                if limit is not None and len(chains) > limit:
                    raise ResourceLimit(f"more than {limit} maximal chains")
                continue
            for nxt in reversed(above):
                stack.append(chain + (nxt,))
        return chains

    def chain_counts(self, s: Element, t: Element) -> List[int]:
        """c[j] = number of chains s = x_0 < x_1 < ... < x_j = t."""
        if not self.leq(s, t):
            raise NotComparable(f"{self.label(s)} is not below {self.label(t)}")
        ending: Dict[Element, Dict[int, int]] = {}
        up = self._up[s]
        for u in self.interval(s, t):
            if u == s:
                ending[u] = {0: 1}
                continue
            acc: Dict[int, int] = {}
            for v in self._members(up & self._down[u] & ~(1 << self._pos[u])):
                for j, c in ending[v].items():
                    acc[j + 1] = acc.get(j + 1, 0) + c
            ending[u] = acc
        counts = ending[t]
        return [counts.get(j, 0) for j in range(max(counts) + 1)]


class ClosedSetLattice(GradedPoset):
    """Closed sets of a geometry ordered by inclusion; rank is cardinality."""

    def __init__(self, geometry, closed: Sequence[int], covers: Iterable[Tuple[int, int]]):
        super().__init__(closed, covers, {a: subsets.size(a) for a in closed},
                         {a: subsets.format_subset(a) for a in closed})
        self.geometry = geometry

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return self.geometry.closure(a | b)

    def is_lattice(self) -> bool:
        return True


# Module-level operations

def mobius(poset: GradedPoset, s: Element, t: Element) -> int:
    return poset.mobius(s, t)


def nu(poset: GradedPoset) -> int:
    """ν(P) = Σ_t (-1)^rk(t) μ(0̂, t)."""
    if poset.bottom is None:
        raise No0Hat("ν needs a minimum element")
    return poset.nu(poset.bottom)


def nu_boolean_count(poset: GradedPoset, s: Element, t: Element) -> int:
    """Number of u in [s, t] with [s, u] Boolean; equals ν([s, t]) on join-distributive lattices."""
    return sum(1 for u in poset.interval(s, t) if poset.is_boolean(s, u))


def _require_lattice(lattice: GradedPoset) -> None:
    if not lattice.is_lattice():
        raise NotALattice("poset is not a lattice")


def is_meet_distributive(lattice: GradedPoset) -> bool:
    """For every y, [meet of the elements y covers, y] is Boolean."""
    _require_lattice(lattice)
    for y in lattice.elements:
        below = lattice.lower_covers(y)
        if not below:
            continue
        x = below[0]
        for other in below[1:]:
            x = lattice.meet(x, other)
        if not lattice.is_boolean(x, y):
            return False
    return True


def is_join_distributive(lattice: GradedPoset) -> bool:
    _require_lattice(lattice)
    return is_meet_distributive(lattice.dual())


def is_semimodular(lattice: GradedPoset) -> bool:
    """Upper semimodularity: if a and b cover a∧b then a∨b covers a and b."""
    _require_lattice(lattice)
    for m in lattice.elements:
        above = lattice.upper_covers(m)
        for i, a in enumerate(above):
            for b in above[i + 1:]:
                j = lattice.join(a, b)
                if lattice.rank[j] != lattice.rank[a] + 1:
                    return False
    return True


def join_irreducibles(lattice: GradedPoset) -> List[Element]:
    """Elements covering exactly one element, in canonical order."""
    return [e for e in lattice.elements if len(lattice.lower_covers(e)) == 1]


def reverse_linear_extension(lattice: GradedPoset) -> List[Element]:
    """Elements of L minus 0̂, never listing A before a superset of A.

    Ties between equal ranks follow the canonical element order.
    """
    order = {e: i for i, e in enumerate(lattice.elements)}
    rest = [e for e in lattice.elements if e != lattice.bottom]
    return sorted(rest, key=lambda e: (-lattice.rank[e], order[e]))


def _bounds(poset: GradedPoset) -> Tuple[Element, Element]:
    if poset.bottom is None:
        raise No0Hat("zeta polynomial needs a minimum element")
    if poset.top is None:
        raise No1Hat("zeta polynomial needs a maximum element")
    return poset.bottom, poset.top


def zeta_polynomial(poset: GradedPoset) -> Poly:
    """Z(Q, t) = Σ_j c_j C(t, j), c_j counting strict chains 0̂ = s_0 < ... < s_j = 1̂."""
    bottom, top = _bounds(poset)
    return polynomials.from_chain_counts(poset.chain_counts(bottom, top))


def zbar_polynomial(poset: GradedPoset) -> Poly:
    """Σ over maximal q in Q minus 1̂ of Z([0̂, q], t)."""
    bottom, top = _bounds(poset)
    total = polynomials.from_chain_counts([])
    for q in poset.lower_covers(top):
        total += polynomials.from_chain_counts(poset.chain_counts(bottom, q))
    return total


def multichain_count(poset: GradedPoset, m: int, start: Optional[Element] = None,
                     end: Optional[Element] = None) -> int:
    """Number of multichains start = q_0 <= q_1 <= ... <= q_m = end, counted directly."""
    start = poset.bottom if start is None else start
    end = poset.top if end is None else end
    if start is None or end is None:
        raise PosetError("multichain count needs both endpoints")
    if m == 0:
        return int(start == end)
    members = poset.interval(start, end)
    ways = {u: int(u == start) for u in members}
    for _ in range(m):
        ways = {u: sum(ways[v] for v in members if poset.leq(v, u)) for u in members}
    return ways[end]


def is_eulerian(poset: GradedPoset) -> bool:
    """μ(s, t) = (-1)^rk(s,t) on every interval."""
    for s in poset.elements:
        base = poset.rank[s]
        for u, value in poset.mobius_row(s).items():
            if value != (-1) ** (poset.rank[u] - base):
                return False
    return True
