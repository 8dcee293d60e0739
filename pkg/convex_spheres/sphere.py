"""The reflected complex ±Δ, the poset Q_L of signed closed sets, and its cells.

Everything is built in the meet orientation: closed sets by inclusion, rank
|A|. The join orientation (L* and Q_{L*}) is obtained by dualizing, see
`join_orientation`.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from logzero import logger

from . import subsets
from .complex import MAX_FACETS, SimplicialComplex, link, star
from .errors import (ChainMustEndAtTop, ChainNotInL, NotProperElement, ResourceLimit,
                     SphereError)
from .geometry import ConvexGeometry, closed_sets
from .lattice import ClosedSetLattice, GradedPoset
from . import lattice as lattice_ops

MAX_SPHERE_N = 8

Signs = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class SignedElement:
    """Class of (A, ε), with ε kept only on ext(A)."""
    closed: int
    signs: Signs = ()

    @property
    def sort_key(self) -> tuple:
        return (subsets.size(self.closed), self.closed, tuple(-s for _, s in self.signs))

    def sign(self, a: int) -> Optional[int]:
        for e, s in self.signs:
            if e == a:
                return s
        return None

    @property
    def label(self) -> str:
        if not self.closed:
            return "∅"
        marks = "".join(("+" if s > 0 else "-") + str(e) for e, s in self.signs)
        return f"{subsets.format_subset(self.closed)}{marks}"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class FormalTop:
    """The element adjoined above every ([n], ε)."""
    rank: int

    @property
    def sort_key(self) -> tuple:
        return (self.rank, -1, ())

    @property
    def label(self) -> str:
        return "1̂"

    def __str__(self) -> str:
        return self.label


QElement = Union[SignedElement, FormalTop]


def signed(geometry: ConvexGeometry, closed: int,
           epsilon: Union[Mapping[int, int], Sequence[int], None] = None) -> SignedElement:
    """Canonical representative of (A, ε).

    `epsilon` is a map from elements to ±1 or a full sign vector indexed from 1;
    only its values on ext(A) are kept.
    """
    if not geometry.is_closed(closed):
        raise ChainNotInL(f"{subsets.format_subset(closed)} is not closed")
    ext = subsets.elements(geometry.extreme_points(closed))
    if epsilon is None:
        epsilon = {}
    if not isinstance(epsilon, Mapping):
        epsilon = {i: s for i, s in enumerate(epsilon, 1)}
    signs = []
    for a in ext:
        s = epsilon.get(a, 1)
        if s not in (1, -1):
            raise SphereError(f"sign of {a} must be +1 or -1, got {s}")
        signs.append((a, s))
    return SignedElement(closed, tuple(signs))


def _sign_patterns(ext: Tuple[int, ...]) -> List[Signs]:
    return [tuple(zip(ext, combo)) for combo in product((1, -1), repeat=len(ext))]


def agree(p: SignedElement, q: SignedElement) -> bool:
    """Signs agree on ext(A) ∩ ext(B)."""
    theirs = dict(q.signs)
    return all(theirs.get(e, s) == s for e, s in p.signs)


def precedes(p: SignedElement, q: SignedElement) -> bool:
    """(A, ε) <= (B, δ) iff A ⊆ B and ε, δ agree on ext(A) ∩ ext(B)."""
    return subsets.is_subset(p.closed, q.closed) and agree(p, q)


def zero_map(q: SignedElement) -> int:
    return q.closed


@dataclass
class QPoset:
    """Q_L in the meet orientation, or Q_{L*} when `orientation` is "join"."""
    geometry: ConvexGeometry
    lattice: ClosedSetLattice
    poset: GradedPoset
    orientation: str = "meet"

    @property
    def n(self) -> int:
        return self.geometry.n

    @property
    def zero(self) -> QElement:
        return self.poset.bottom

    @property
    def one(self) -> QElement:
        return self.poset.top

    def proper(self) -> List[SignedElement]:
        return [e for e in self.poset.elements if e not in (self.zero, self.one)]

    def signed_elements(self) -> List[SignedElement]:
        return [e for e in self.poset.elements if isinstance(e, SignedElement)]

    def over(self, closed: int) -> List[SignedElement]:
        """The fiber z⁻¹(A)."""
        return [e for e in self.signed_elements() if e.closed == closed]

    def coatoms(self) -> List[QElement]:
        return self.poset.lower_covers(self.one)


def _check_size(geometry: ConvexGeometry) -> None:
    if geometry.n > MAX_SPHERE_N:
        raise ResourceLimit(f"sphere constructions need n <= {MAX_SPHERE_N}, got {geometry.n}")


def _q_elements(geometry: ConvexGeometry, lattice: ClosedSetLattice) -> Dict[int, List[SignedElement]]:
    fibers: Dict[int, List[SignedElement]] = {}
    for a in lattice.elements:
        ext = subsets.elements(geometry.extreme_points(a))
        fibers[a] = [SignedElement(a, signs) for signs in _sign_patterns(ext)]
    return fibers


def build_q_poset(geometry: ConvexGeometry, lattice: Optional[ClosedSetLattice] = None,
                  orientation: str = "meet") -> QPoset:
    """Q_L with the class of (∅, ∅) as 0̂ and a formal 1̂ of rank n + 1.

    Covers come from covers A ⋖ B of L whose signs agree. With
    orientation "join" the same elements are ranked from the other end:
    the formal element is 0̂, (∅, ∅) is 1̂ and (A, ε) has rank n + 1 - |A|.
    """
    if orientation not in ("meet", "join"):
        raise SphereError(f"unknown orientation {orientation!r}")
    _check_size(geometry)
    lattice = lattice or closed_sets(geometry)
    n = geometry.n
    top = FormalTop(n + 1)
    fibers = _q_elements(geometry, lattice)
    covers = []
    for a, b in lattice.covers:
        for p in fibers[a]:
            for q in fibers[b]:
                if agree(p, q):
                    covers.append((p, q))
    covers.extend((q, top) for q in fibers[geometry.ground])
    elements: List[QElement] = [q for a in lattice.elements for q in fibers[a]] + [top]
    if orientation == "meet":
        rank = {q: subsets.size(q.closed) for q in elements if isinstance(q, SignedElement)}
        rank[top] = n + 1
        poset = GradedPoset(elements, covers, rank, {q: q.label for q in elements})
    else:
        rank = {q: n + 1 - subsets.size(q.closed) for q in elements if isinstance(q, SignedElement)}
        rank[top] = 0
        elements = [top] + elements[:-1][::-1]
        poset = GradedPoset(elements, [(b, a) for a, b in covers], rank, {q: q.label for q in elements})
    logger.debug("%s: Q (%s) has %d elements", geometry.name, orientation, len(poset))
    return QPoset(geometry, lattice, poset, orientation)


def join_orientation(geometry: ConvexGeometry) -> Tuple[GradedPoset, QPoset]:
    """(L*, Q_{L*}) for the join-distributive dual of the closed-set lattice."""
    q = build_q_poset(geometry, orientation="join")
    return q.lattice.dual(), q


# ±Δ

def chains_to(lattice: ClosedSetLattice, closed: int) -> List[Tuple[int, ...]]:
    """Maximal chains of (0̂, A] listed from the atom up to A."""
    out: List[Tuple[int, ...]] = []
    stack = [(closed,)]
    while stack:
        chain = stack.pop()
        below = [b for b in lattice.lower_covers(chain[0]) if b != lattice.bottom]
        if not below:
            out.append(chain)
            continue
        for b in reversed(below):
            stack.append((b,) + chain)
    return out


def _signed_chain(geometry: ConvexGeometry, chain: Sequence[int],
                  epsilon: Mapping[int, int]) -> frozenset:
    return frozenset(signed(geometry, a, epsilon) for a in chain)


def _sign_key(v) -> tuple:
    return v.sort_key


def reflect(geometry: ConvexGeometry, lattice: Optional[ClosedSetLattice] = None,
            max_facets: int = MAX_FACETS) -> SimplicialComplex:
    """±Δ: every maximal chain σ of L minus 0̂ with every sign vector, named σ^ε."""
    _check_size(geometry)
    lattice = lattice or closed_sets(geometry)
    n = geometry.n
    chains = chains_to(lattice, geometry.ground)
    total = len(chains) << n
    if total > max_facets:
        raise ResourceLimit(f"±Δ would have {total} facets (cap {max_facets})")
    facets = set()
    for combo in product((1, -1), repeat=n):
        epsilon = dict(enumerate(combo, 1))
        for chain in chains:
            facets.add(_signed_chain(geometry, chain, epsilon))
    names = {v: v.label for f in facets for v in f}
    logger.debug("%s: ±Δ has %d facets", geometry.name, len(facets))
    return SimplicialComplex(facets, _sign_key, names, max_facets)


def face_name_multiplicity(geometry: ConvexGeometry, chain: Sequence[int]) -> Dict[frozenset, int]:
    """How many of the 2^n sign vectors produce each name σ^ε of the chain σ."""
    for a in chain:
        if not a or not geometry.is_closed(a):
            raise ChainNotInL(f"{subsets.format_subset(a)} is not a nonempty closed set")
    counts: Dict[frozenset, int] = {}
    for combo in product((1, -1), repeat=geometry.n):
        name = _signed_chain(geometry, chain, dict(enumerate(combo, 1)))
        counts[name] = counts.get(name, 0) + 1
    return counts


def chain_extremes(geometry: ConvexGeometry, chain: Iterable[int]) -> int:
    """ext(σ): union of ext(A) over the chain."""
    mask = 0
    for a in chain:
        mask |= geometry.extreme_points(a)
    return mask


def flip_signs(complex_: SimplicialComplex, i: int) -> SimplicialComplex:
    """Negate the sign of element i in every vertex name that carries it."""
    def flipped(v: SignedElement) -> SignedElement:
        return SignedElement(v.closed, tuple((e, -s if e == i else s) for e, s in v.signs))

    return SimplicialComplex(({flipped(v) for v in f} for f in complex_.facets),
                             complex_.key, {flipped(v): flipped(v).label for v in complex_.vertices})


def verify_pm_delta(q_poset: QPoset, pm_delta: Optional[SimplicialComplex] = None) -> bool:
    """Δ(Q_L minus 0̂ and 1̂) and ±Δ have literally the same facets."""
    pm_delta = pm_delta or reflect(q_poset.geometry, q_poset.lattice)
    chains = q_poset.poset.proper_part().maximal_chains(limit=MAX_FACETS)
    return {frozenset(c) for c in chains} == set(pm_delta.facets)


def is_eulerian(q_poset: QPoset) -> bool:
    return lattice_ops.is_eulerian(q_poset.poset)


# Fibers of the zero map

def _check_chain(geometry: ConvexGeometry, chain: Sequence[int]) -> None:
    if not chain:
        raise ChainNotInL("empty chain")
    for a in chain:
        if not subsets.within(a, geometry.n) or not geometry.is_closed(a):
            raise ChainNotInL(f"{a:#b} is not a closed set")
    for a, b in zip(chain, chain[1:]):
        if a == b or not subsets.is_subset(b, a):
            raise ChainNotInL(f"{subsets.format_subset(b)} is not strictly below "
                              f"{subsets.format_subset(a)} in L*")
    if chain[-1] != 0:
        raise ChainMustEndAtTop("chains in L* must end at its top element ∅")


def fiber_count(q_poset: QPoset, chain: Sequence[int]) -> int:
    """Chains q_1 < ... < q_k of Q_{L*} with z(q_i) = A_i, counted directly.

    `chain` lists closed sets A_1 ⊋ A_2 ⊋ ... ⊋ A_k = ∅, the increasing
    chain A_1 < ... < A_k = 1̂ of L*.
    """
    geometry = q_poset.geometry
    _check_chain(geometry, chain)
    ways = {q: 1 for q in q_poset.over(chain[0])}
    for a in chain[1:]:
        ways = {p: sum(w for q, w in ways.items() if precedes(p, q)) for p in q_poset.over(a)}
    return sum(ways.values())


def fiber_product(q_poset: QPoset, chain: Sequence[int]) -> int:
    """∏ ν([A_i, A_{i+1}]) with intervals taken in L*."""
    _check_chain(q_poset.geometry, chain)
    dual = q_poset.lattice.dual()
    total = 1
    for a, b in zip(chain, chain[1:]):
        total *= dual.nu(a, b)
    return total


def fiber_boolean_product(q_poset: QPoset, chain: Sequence[int]) -> int:
    """∏ 2^|ext(A_i) minus ext(A_{i+1})|."""
    geometry = q_poset.geometry
    _check_chain(geometry, chain)
    total = 1
    for a, b in zip(chain, chain[1:]):
        total <<= subsets.size(geometry.extreme_points(a) & ~geometry.extreme_points(b))
    return total


def all_chains_to_top(lattice: ClosedSetLattice) -> List[Tuple[int, ...]]:
    """Every chain of L* ending at ∅, as decreasing tuples of closed sets."""
    out = []
    stack = [(0,)]
    while stack:
        chain = stack.pop()
        out.append(tuple(reversed(chain)))
        for b in lattice.elements:
            if b != chain[-1] and subsets.is_subset(chain[-1], b):
                stack.append(chain + (b,))
    return sorted(out, key=lambda c: (len(c), [subsets.canonical_key(a) for a in c]))


# Cells

@dataclass(frozen=True)
class Cell:
    owner: SignedElement
    facets: frozenset

    @property
    def size(self) -> int:
        return len(self.facets)


def _require_proper(q_poset: QPoset, q) -> SignedElement:
    if q_poset.orientation != "meet":
        raise SphereError("cells are read off Q_L in the meet orientation")
    if not isinstance(q, SignedElement) or q not in q_poset.poset or not q.closed:
        raise NotProperElement(f"{q} is not a proper element of Q")
    return q


def cell(q_poset: QPoset, q: SignedElement) -> Cell:
    """Star of (A, ε) in ±Δ_A: chains of (0̂, A] signed by every ρ on A extending ε."""
    q = _require_proper(q_poset, q)
    geometry = q_poset.geometry
    chains = chains_to(q_poset.lattice, q.closed)
    free = [a for a in subsets.elements(q.closed) if q.sign(a) is None]
    facets = set()
    for combo in product((1, -1), repeat=len(free)):
        rho = dict(q.signs)
        rho.update(zip(free, combo))
        for chain in chains:
            facets.add(_signed_chain(geometry, chain, rho))
    return Cell(q, frozenset(facets))


def expected_cell_size(q_poset: QPoset, q: SignedElement) -> int:
    """2^{|A| - |ext(A)|} times the number of maximal chains of (0̂, A]."""
    q = _require_proper(q_poset, q)
    free = subsets.size(q.closed) - len(q.signs)
    return len(chains_to(q_poset.lattice, q.closed)) << free


def boundary_cells(q_poset: QPoset, q: SignedElement) -> List[SignedElement]:
    """Proper elements strictly below q: B ⊊ A with agreeing signs."""
    q = _require_proper(q_poset, q)
    return [p for p in q_poset.poset.downset(q)
            if p != q and isinstance(p, SignedElement) and p.closed]


def verify_boundary(q_poset: QPoset, q: SignedElement) -> bool:
    """The cells of the boundary elements cover exactly the link of q in ±Δ_A."""
    owned = cell(q_poset, q)
    around = SimplicialComplex(owned.facets, _sign_key)
    target = {f for f in link(around, {q}).facets if f}
    pieces = set()
    for p in boundary_cells(q_poset, q):
        pieces |= cell(q_poset, p).facets
    covered = set(SimplicialComplex(pieces, _sign_key).facets) if pieces else set()
    return covered == target


def cell_as_star(q_poset: QPoset, q: SignedElement, pm_delta: SimplicialComplex) -> bool:
    """For A = [n] the cell is the star of q in ±Δ itself."""
    owned = cell(q_poset, q)
    return set(star(pm_delta, {q}).facets) == set(owned.facets)


def assembly_order(q_poset: QPoset) -> List[SignedElement]:
    """Proper elements by rank, so that every cell follows its boundary cells."""
    position = {e: i for i, e in enumerate(q_poset.poset.elements)}
    return sorted(q_poset.proper(), key=lambda e: (q_poset.poset.rank[e], position[e]))
