"""Convex closures on [n] and their closed sets.

A geometry is a ground-set size plus one of four closure representations:
points on a line, points in the plane (both with exact rational coordinates),
lower/upper ideals of a poset, or an explicit intersection-closed family.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from logzero import logger

from . import subsets
from .errors import GeometryError, GroundSetTooLarge
from .lattice import ClosedSetLattice, join_irreducibles

EXHAUSTIVE_LIMIT = 12

Point2 = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Points1D:
    """Distinct rationals on a line; ⟨A⟩ is every point between min A and max A."""
    points: Tuple[Fraction, ...]

    kind = "points1d"

    def check(self, n: int) -> None:
        if len(self.points) != n:
            raise GeometryError(f"expected {n} points, got {len(self.points)}")
        if len(set(self.points)) != n:
            raise GeometryError("points must be distinct")

    def make_closure(self, n: int) -> Callable[[int], int]:
        values = self.points

        def closure(mask: int) -> int:
            if not mask:
                return 0
            chosen = [values[i - 1] for i in subsets.elements(mask)]
            lo, hi = min(chosen), max(chosen)
            return subsets.from_elements(
                i for i in range(1, n + 1) if lo <= values[i - 1] <= hi
            )

        return closure


def _cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points: List[Point2]) -> List[Point2]:
    """Counter-clockwise hull corners; collinear boundary points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: List[Point2] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _in_hull(hull: List[Point2], p: Point2) -> bool:
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        a, b = hull
        return (_cross(a, b, p) == 0
                and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))
    k = len(hull)
    return all(_cross(hull[i], hull[(i + 1) % k], p) >= 0 for i in range(k))


@dataclass(frozen=True)
class Points2D:
    """Distinct rational points in the plane; ⟨A⟩ is the points inside conv(A)."""
    points: Tuple[Point2, ...]

    kind = "points2d"

    def check(self, n: int) -> None:
        if len(self.points) != n:
            raise GeometryError(f"expected {n} points, got {len(self.points)}")
        if len(set(self.points)) != n:
            raise GeometryError("points must be distinct")

    def make_closure(self, n: int) -> Callable[[int], int]:
        points = self.points

        def closure(mask: int) -> int:
            if not mask:
                return 0
            hull = _hull([points[i - 1] for i in subsets.elements(mask)])
            return subsets.from_elements(
                i for i in range(1, n + 1) if _in_hull(hull, points[i - 1])
            )

        return closure


@dataclass(frozen=True)
class PosetIdeal:
    """Ideal closure of a poset on [n] given by pairs (a, b) meaning a < b."""
    relations: Tuple[Tuple[int, int], ...]
    direction: str = "lower"

    kind = "poset"

    def graph(self, n: int) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(1, n + 1))
        g.add_edges_from(self.relations)
        return g

    def check(self, n: int) -> None:
        if self.direction not in ("lower", "upper"):
            raise GeometryError(f"direction must be 'lower' or 'upper', not {self.direction!r}")
        for a, b in self.relations:
            if not (1 <= a <= n and 1 <= b <= n) or a == b:
                raise GeometryError(f"bad relation {a} < {b} on [{n}]")
        if not nx.is_directed_acyclic_graph(self.graph(n)):
            raise GeometryError("poset relations contain a cycle")

    def make_closure(self, n: int) -> Callable[[int], int]:
        g = self.graph(n)
        reach = nx.ancestors if self.direction == "lower" else nx.descendants
        generated = {i: subsets.from_elements(reach(g, i) | {i}) for i in range(1, n + 1)}

        def closure(mask: int) -> int:
            out = 0
            for i in subsets.elements(mask):
                out |= generated[i]
            return out

        return closure


@dataclass(frozen=True)
class ExplicitFamily:
    """The closed sets listed outright; ⟨A⟩ is the intersection of those containing A."""
    sets: FrozenSet[int]

    kind = "family"

    def check(self, n: int) -> None:
        for s in self.sets:
            if not subsets.within(s, n):
                raise GeometryError(f"set {subsets.format_subset(s)} is not inside [{n}]")
        if 0 not in self.sets:
            raise GeometryError("family must contain the empty set")
        if subsets.full(n) not in self.sets:
            raise GeometryError(f"family must contain [{n}]")

    def make_closure(self, n: int) -> Callable[[int], int]:
        members = subsets.canonical(self.sets)
        top = subsets.full(n)

        def closure(mask: int) -> int:
            out = top
            for s in members:
                if mask & ~s == 0:
                    out &= s
            return out

        return closure


class ConvexGeometry:
    """A closure operator on [n]; values are memoized, the object is otherwise immutable."""

    def __init__(self, n: int, representation, name: Optional[str] = None):
        if n < 1:
            raise GeometryError("ground set must be nonempty")
        if n > subsets.MAX_GROUND_SET:
            raise GroundSetTooLarge(f"n = {n} exceeds the cap of {subsets.MAX_GROUND_SET}")
        representation.check(n)
        self.n = n
        self.representation = representation
        self.name = name or f"{representation.kind}-{n}"
        self._closure = representation.make_closure(n)
        self._closures: Dict[int, int] = {}
        self._extremes: Dict[int, int] = {}
        if self.closure(0) != 0:
            raise GeometryError("the closure of the empty set must be empty")

    @property
    def kind(self) -> str:
        return self.representation.kind

    @property
    def ground(self) -> int:
        return subsets.full(self.n)

    def closure(self, mask: int) -> int:
        if not subsets.within(mask, self.n):
            raise GeometryError(f"{mask:#b} is not a subset of [{self.n}]")
        cached = self._closures.get(mask)
        if cached is None:
            cached = self._closure(mask)
            self._closures[mask] = cached
        return cached

    def is_closed(self, mask: int) -> bool:
        return self.closure(mask) == mask

    def principal(self, i: int) -> int:
        """⟨i⟩"""
        return self.closure(subsets.bit(i))

    def extreme_points(self, mask: int) -> int:
        """ext(⟨A⟩) = {a ∈ ⟨A⟩ : a ∉ ⟨⟨A⟩ minus a⟩}."""
        closed = self.closure(mask)
        cached = self._extremes.get(closed)
        if cached is None:
            cached = 0
            for a in subsets.elements(closed):
                if not self.closure(closed & ~subsets.bit(a)) & subsets.bit(a):
                    cached |= subsets.bit(a)
            self._extremes[closed] = cached
        return cached

    def __repr__(self) -> str:
        return f"ConvexGeometry(n={self.n}, kind={self.kind!r}, name={self.name!r})"


# Constructors for the common shapes

def collinear(n: int, name: Optional[str] = None) -> ConvexGeometry:
    """n points at 1, 2, ..., n on a line."""
    return ConvexGeometry(n, Points1D(tuple(Fraction(i) for i in range(1, n + 1))),
                          name or f"collinear-{n}")


def boolean(n: int, name: Optional[str] = None) -> ConvexGeometry:
    """Every subset closed (lattice B_n)."""
    return ConvexGeometry(n, PosetIdeal((), "lower"), name or f"boolean-{n}")


def poset_ideals(n: int, relations, direction: str = "lower",
                 name: Optional[str] = None) -> ConvexGeometry:
    rel = tuple(sorted((int(a), int(b)) for a, b in relations))
    return ConvexGeometry(n, PosetIdeal(rel, direction), name)


def family(n: int, sets, name: Optional[str] = None) -> ConvexGeometry:
    return ConvexGeometry(n, ExplicitFamily(frozenset(subsets.from_elements(s) for s in sets)), name)


def points2d(coords, name: Optional[str] = None) -> ConvexGeometry:
    pts = tuple((Fraction(x), Fraction(y)) for x, y in coords)
    return ConvexGeometry(len(pts), Points2D(pts), name)


# Operations on whole geometries

def closed_sets(geometry: ConvexGeometry) -> ClosedSetLattice:
    """Every closed set, ordered by inclusion.

    Closed sets are reached from ∅ by repeatedly closing A ∪ {x}; the upper
    covers of A are the inclusion-minimal sets among those closures.
    """
    if geometry.n > subsets.MAX_GROUND_SET:
        raise GroundSetTooLarge(f"n = {geometry.n} exceeds the cap of {subsets.MAX_GROUND_SET}")
    n = geometry.n
    seen = {0}
    frontier = [0]
    covers = []
    while frontier:
        a = frontier.pop()
        grown = set()
        for x in range(1, n + 1):
            if not a & subsets.bit(x):
                grown.add(geometry.closure(a | subsets.bit(x)))
        for b in grown:
            if not any(c != b and subsets.is_subset(c, b) for c in grown):
                covers.append((a, b))
            if b not in seen:
                seen.add(b)
                frontier.append(b)
    logger.debug("%s: %d closed sets, %d covers", geometry.name, len(seen), len(covers))
    return ClosedSetLattice(geometry, subsets.canonical(seen), covers)


@dataclass(frozen=True)
class Violation:
    """One failed axiom with its witness."""
    axiom: str
    subset: int
    x: Optional[int] = None
    y: Optional[int] = None
    other: Optional[int] = None

    def describe(self) -> str:
        a = subsets.format_subset(self.subset)
        if self.axiom == "anti-exchange":
            return f"anti-exchange fails at A={a}, x={self.x}, y={self.y}"
        if self.axiom == "monotone":
            return f"monotonicity fails at A={a} extended by {self.x}"
        if self.axiom == "intersection":
            return f"{a} ∩ {subsets.format_subset(self.other)} is not in the family"
        return f"{self.axiom} fails at A={a}"


@dataclass
class ValidationReport:
    n: int
    exhaustive: bool
    accessible: bool = True
    violations: List[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "exhaustive": self.exhaustive,
            "accessible": self.accessible,
            "valid": self.valid,
            "violations": [v.describe() for v in self.violations],
        }


def _check_intersections(geometry: ConvexGeometry, report: ValidationReport) -> None:
    members = subsets.canonical(geometry.representation.sets)
    present = set(members)
    for i, s in enumerate(members):
        for t in members[i + 1:]:
            if s & t not in present:
                report.violations.append(Violation("intersection", s, other=t))


def _check_accessible(geometry: ConvexGeometry, closed: List[int]) -> bool:
    present = set(closed)
    top = geometry.ground
    for a in closed:
        if a == top:
            continue
        if not any(a | subsets.bit(x) in present
                   for x in range(1, geometry.n + 1) if not a & subsets.bit(x)):
            return False
    return True


def _reachable_closed(geometry: ConvexGeometry) -> List[int]:
    seen = {0}
    frontier = [0]
    while frontier:
        a = frontier.pop()
        for x in range(1, geometry.n + 1):
            b = geometry.closure(a | subsets.bit(x))
            if b not in seen:
                seen.add(b)
                frontier.append(b)
    return subsets.canonical(seen)


def validate(geometry: ConvexGeometry, exhaustive: Optional[bool] = None) -> ValidationReport:
    """Check the four closure axioms, reporting every violation with a witness.

    Exhaustive mode walks all 2^n subsets (n <= 12). Otherwise anti-exchange
    is checked on closed sets only, which suffices once the closure is a
    closure operator.
    """
    n = geometry.n
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_LIMIT
    if exhaustive and n > EXHAUSTIVE_LIMIT:
        raise GroundSetTooLarge(f"exhaustive validation needs n <= {EXHAUSTIVE_LIMIT}, got {n}")
    report = ValidationReport(n=n, exhaustive=exhaustive)
    if isinstance(geometry.representation, ExplicitFamily):
        _check_intersections(geometry, report)

    closed = _reachable_closed(geometry)
    report.accessible = _check_accessible(geometry, closed)

    if exhaustive:
        table = [geometry.closure(a) for a in subsets.all_subsets(n)]
        candidates = range(1 << n)
    else:
        table = None
        candidates = closed

    def close(mask: int) -> int:
        return table[mask] if table is not None else geometry.closure(mask)

    for a in candidates:
        c = close(a)
        if exhaustive:
            if a & ~c:
                report.violations.append(Violation("extensive", a))
            if close(c) != c:
                report.violations.append(Violation("idempotent", a))
            for x in range(1, n + 1):
                if not a & subsets.bit(x) and c & ~close(a | subsets.bit(x)):
                    report.violations.append(Violation("monotone", a, x=x))
        outside = [x for x in range(1, n + 1) if not c & subsets.bit(x)]
        for i, x in enumerate(outside):
            with_x = close(a | subsets.bit(x))
            for y in outside[i + 1:]:
                with_y = close(a | subsets.bit(y))
                if with_y & subsets.bit(x) and with_x & subsets.bit(y):
                    report.violations.append(Violation("anti-exchange", a, x=x, y=y))
    logger.debug("%s: validation found %d violations", geometry.name, len(report.violations))
    return report


def one_point_extension(geometry: ConvexGeometry) -> ConvexGeometry:
    """Add point n+1 with ⟨n+1⟩ = [n+1]; the closed sets are those of G plus [n+1]."""
    n = geometry.n + 1
    if n > subsets.MAX_GROUND_SET:
        raise GroundSetTooLarge(f"extension would have n = {n}")
    sets = frozenset(closed_sets(geometry).elements) | {subsets.full(n)}
    return ConvexGeometry(n, ExplicitFamily(sets), f"{geometry.name}+point")


def from_lattice(lattice) -> ConvexGeometry:
    """Rebuild the convex closure of a meet-distributive lattice.

    The ground set enumerates the join-irreducibles j_1, ..., j_k and every
    lattice element x becomes the closed set {i : j_i <= x}.
    """
    irreducibles = join_irreducibles(lattice)
    k = len(irreducibles)
    sets = frozenset(
        subsets.from_elements(i for i, j in enumerate(irreducibles, 1) if lattice.leq(j, x))
        for x in lattice.elements
    )
    return ConvexGeometry(k, ExplicitFamily(sets), "from-lattice")
