"""Enriched extremal functions and the zeta-polynomial identities they count.

Values are nonzero integers ordered by ≺: -1 ≺ 1 ≺ -2 ≺ 2 ≺ ⋯, realized by
`precedes_key`.
"""

from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from logzero import logger
from sympy import Poly

from . import lattice as lattice_ops
from . import polynomials, subsets
from .complex import SimplicialComplex, h_polynomial, h_vector, order_complex
from .errors import EnrichedError, NotAMultichain, NotExtremal, ResourceLimit
from .geometry import ConvexGeometry, closed_sets, one_point_extension, poset_ideals
from .sphere import QPoset, SignedElement, build_q_poset, precedes, reflect

MAX_FUNCTIONS = 100_000_000


def precedes_key(value: int) -> int:
    """Sort key for ≺: -k ↦ 2k - 1, k ↦ 2k."""
    if value == 0:
        raise EnrichedError("enriched functions take nonzero values")
    return 2 * abs(value) - (1 if value < 0 else 0)


@dataclass(frozen=True)
class SignedFunction:
    """f: [n] → ±[m]; values[i - 1] is f(i)."""
    values: Tuple[int, ...]
    bound: int

    def __post_init__(self):
        for v in self.values:
            if v == 0 or abs(v) > self.bound:
                raise EnrichedError(f"value {v} outside ±[{self.bound}]")

    def __call__(self, a: int) -> int:
        return self.values[a - 1]

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def of(cls, values: Sequence[int], bound: Optional[int] = None) -> "SignedFunction":
        values = tuple(int(v) for v in values)
        return cls(values, bound if bound is not None else max((abs(v) for v in values), default=1))


@dataclass(frozen=True)
class ExtremalCheck:
    passed: bool
    condition: Optional[int] = None
    subset: Optional[int] = None
    element: Optional[int] = None

    def describe(self) -> str:
        if self.passed:
            return "enriched extremal"
        where = subsets.format_subset(self.subset)
        if self.condition == 1:
            return f"minimum over {where} is not attained at an extreme point"
        return f"{self.element} is not extreme in {where}"

    def __bool__(self) -> bool:
        return self.passed


class _ExtremalTester:
    """Closed sets and extreme points of one geometry, precomputed for repeated checks."""

    def __init__(self, geometry: ConvexGeometry, closed: Optional[Iterable[int]] = None):
        self.geometry = geometry
        closed = closed if closed is not None else closed_sets(geometry).elements
        self.sets = [(a, subsets.elements(a), subsets.elements(geometry.extreme_points(a)))
                     for a in closed if a]

    def check(self, values: Sequence[int]) -> ExtremalCheck:
        keys = [precedes_key(v) for v in values]
        for mask, members, ext in self.sets:
            lowest = min(keys[a - 1] for a in members)
            if not any(keys[a - 1] == lowest for a in ext):
                return ExtremalCheck(False, 1, mask)
        for a, v in enumerate(values, 1):
            if v > 0:
                continue
            level = keys[a - 1]
            upper = subsets.from_elements(b for b, k in enumerate(keys, 1) if k >= level)
            if not self.geometry.extreme_points(upper) & subsets.bit(a):
                return ExtremalCheck(False, 2, upper, a)
        return ExtremalCheck(True)


def is_enriched_extremal(geometry: ConvexGeometry, f) -> ExtremalCheck:
    """Both defining conditions, with the first violation found.

    1. every nonempty closed A attains min_≺ f|A at a point of ext(A);
    2. every a with f(a) < 0 is extreme in {b : f(b) ⪰ f(a)}.
    """
    values = f.values if isinstance(f, SignedFunction) else tuple(f)
    if len(values) != geometry.n:
        raise EnrichedError(f"expected {geometry.n} values, got {len(values)}")
    return _ExtremalTester(geometry).check(values)


def upper_level_sets_closed(geometry: ConvexGeometry, f) -> bool:
    """{a : f(a) ⪰ b} is closed for every value b."""
    values = f.values if isinstance(f, SignedFunction) else tuple(f)
    keys = [precedes_key(v) for v in values]
    for level in set(keys):
        mask = subsets.from_elements(a for a, k in enumerate(keys, 1) if k >= level)
        if not geometry.is_closed(mask):
            return False
    return True


def _guard(n: int, m: int, limit: int) -> None:
    if m < 1:
        raise EnrichedError("m must be positive")
    if (2 * m) ** n > limit:
        raise ResourceLimit(f"(2m)^n = {(2 * m) ** n} exceeds {limit}")


def _value_range(m: int) -> List[int]:
    return [v for k in range(1, m + 1) for v in (-k, k)]


def enumerate_enriched(geometry: ConvexGeometry, m: int, collect: bool = False,
                       max_functions: int = MAX_FUNCTIONS) -> Tuple[int, List[SignedFunction]]:
    """Count (and optionally list) enriched extremal f: [n] → ±[m]."""
    _guard(geometry.n, m, max_functions)
    tester = _ExtremalTester(geometry)
    found: List[SignedFunction] = []
    count = 0
    for values in product(_value_range(m), repeat=geometry.n):
        if tester.check(values):
            count += 1
            if collect:
                found.append(SignedFunction(values, m))
    logger.debug("%s: %d enriched extremal functions at m = %d", geometry.name, count, m)
    return count, found


# The bijection with multichains of Q_L

def multichain_to_function(q_poset: QPoset, chain: Sequence[SignedElement]) -> SignedFunction:
    """([n], ε_0) ≥ (A_1, ε_1) ≥ ... ≥ (A_m, ε_m) = (∅, ∅) to f.

    For a ∈ A_{i-1} minus A_i, f(a) = -i when a ∈ ext(A_{i-1}) and
    ε_{i-1}(a) = -1, otherwise f(a) = i.
    """
    geometry = q_poset.geometry
    m = len(chain) - 1
    if m < 1:
        raise NotAMultichain("a multichain needs at least two elements")
    for q in chain:
        if not isinstance(q, SignedElement) or q not in q_poset.poset:
            raise NotAMultichain(f"{q} is not an element of Q minus 1̂")
    if chain[0].closed != geometry.ground:
        raise NotAMultichain("multichains start at an element over [n]")
    if chain[-1].closed != 0:
        raise NotAMultichain("multichains end at (∅, ∅)")
    for upper, lower in zip(chain, chain[1:]):
        if not precedes(lower, upper):
            raise NotAMultichain(f"{lower} is not below {upper}")
    values = [0] * geometry.n
    for i in range(1, m + 1):
        above, below = chain[i - 1], chain[i]
        for a in subsets.elements(above.closed & ~below.closed):
            values[a - 1] = -i if above.sign(a) == -1 else i
    return SignedFunction(tuple(values), m)


def function_to_multichain(geometry: ConvexGeometry, f: SignedFunction) -> List[SignedElement]:
    """Inverse of `multichain_to_function`.

    A_i = {a : f(a) ⪰ -(i + 1)}, that is |f(a)| > i, for 0 <= i <= m, with
    ε_i the signs of f on ext(A_i). A_m = ∅ always.
    """
    check = is_enriched_extremal(geometry, f)
    if not check:
        raise NotExtremal(check.describe())
    chain = []
    for i in range(f.bound + 1):
        a_i = subsets.from_elements(a for a in range(1, geometry.n + 1) if abs(f(a)) > i)
        if not geometry.is_closed(a_i):
            raise NotExtremal(f"{subsets.format_subset(a_i)} is not closed")
        ext = subsets.elements(geometry.extreme_points(a_i))
        chain.append(SignedElement(a_i, tuple((a, 1 if f(a) > 0 else -1) for a in ext)))
    return chain


def multichains_to_coatoms(q_poset: QPoset, m: int) -> List[List[SignedElement]]:
    """Every multichain q_0 ≥ q_1 ≥ ... ≥ q_m = 0̂ with q_0 over [n]."""
    poset = q_poset.poset
    zero = q_poset.zero
    out = []
    stack = [[q] for q in reversed(q_poset.over(q_poset.geometry.ground))]
    while stack:
        chain = stack.pop()
        if len(chain) == m + 1:
            if chain[-1] == zero:
                out.append(chain)
            continue
        for p in reversed(poset.downset(chain[-1])):
            stack.append(chain + [p])
    return out


# Identities

@dataclass
class EnrichedRow:
    m: int
    zbar: int
    enriched: int
    zeta: Optional[int] = None
    extension: Optional[int] = None
    extension_zbar: Optional[int] = None

    @property
    def match(self) -> bool:
        ok = self.zbar == self.enriched
        if self.extension is not None:
            ok = ok and 2 * self.zeta == self.extension
        if self.extension_zbar is not None:
            ok = ok and 2 * self.zeta == self.extension_zbar
        return ok

    def to_dict(self) -> dict:
        out = {"m": self.m, "zbar": self.zbar, "enriched": self.enriched, "match": self.match}
        if self.zeta is not None:
            out["zeta"] = self.zeta
        if self.extension is not None:
            out["extension_enriched"] = self.extension
        if self.extension_zbar is not None:
            out["extension_zbar"] = self.extension_zbar
        return out


@dataclass
class EnrichedReport:
    rows: List[EnrichedRow] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.match for r in self.rows)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "rows": [r.to_dict() for r in self.rows],
                "skipped": list(self.skipped)}


def verify_prop_enriched(geometry: ConvexGeometry, m_max: int, q_poset: Optional[QPoset] = None,
                         with_extension: bool = True,
                         max_functions: int = MAX_FUNCTIONS) -> EnrichedReport:
    """Z̄(Q_L, m) against enriched extremal counts, and 2 Z(Q_L, m) against the one-point extension.

    On the extension L' both Z̄(Q_{L'}, m) and its enriched count are compared
    with 2 Z(Q_L, m).
    """
    q_poset = q_poset or build_q_poset(geometry)
    zeta = lattice_ops.zeta_polynomial(q_poset.poset)
    zbar = lattice_ops.zbar_polynomial(q_poset.poset)
    report = EnrichedReport()
    extension = extension_zbar = None
    if with_extension:
        try:
            extension = one_point_extension(geometry)
            extension_zbar = lattice_ops.zbar_polynomial(build_q_poset(extension).poset)
        except ResourceLimit as e:
            report.skipped.append(f"extension: {e}")
    for m in range(1, m_max + 1):
        if (2 * m) ** geometry.n > max_functions:
            report.skipped.append(f"m = {m}: (2m)^n above {max_functions}")
            break
        count, _ = enumerate_enriched(geometry, m, max_functions=max_functions)
        row = EnrichedRow(m, int(polynomials.evaluate(zbar, m)), count,
                          zeta=int(polynomials.evaluate(zeta, m)))
        if extension_zbar is not None:
            row.extension_zbar = int(polynomials.evaluate(extension_zbar, m))
        if extension is not None:
            if (2 * m) ** extension.n > max_functions:
                report.skipped.append(f"m = {m}: extension above {max_functions}")
            else:
                row.extension, _ = enumerate_enriched(extension, m, max_functions=max_functions)
        report.rows.append(row)
    return report


@dataclass
class HIdentityReport:
    passed: bool
    numerator: List[str]
    t_times_h: List[str]
    series: List[int]
    zeta_values: List[int]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "numerator": self.numerator, "t_times_h": self.t_times_h,
                "series": self.series, "zeta_values": self.zeta_values}


def zeta_numerator(q_poset: QPoset) -> Poly:
    """N(t) with Σ_m Z(Q, m) t^m = N(t) / (1 - t)^{r + 1}, r the rank of Q."""
    poset = q_poset.poset
    counts = poset.chain_counts(poset.bottom, poset.top)
    r = poset.rank[poset.top] - poset.rank[poset.bottom]
    t = polynomials.T
    expr = sum(c * t**j * (1 - t) ** (r - j) for j, c in enumerate(counts))
    return Poly(expr, t, domain="QQ")


def _series(numerator: Sequence[int], power: int, terms: int) -> List[int]:
    """First `terms` coefficients of numerator / (1 - t)^power."""
    return [sum(c * comb(m - i + power - 1, power - 1) for i, c in enumerate(numerator) if i <= m)
            for m in range(terms)]


def verify_h_identity(q_poset: QPoset, pm_delta: Optional[SimplicialComplex] = None) -> HIdentityReport:
    """Σ_m Z(Q_L, m) t^m = t·h(t) / (1 - t)^{n+2}, h the h-polynomial of ±Δ.

    Checked symbolically on the numerator and by comparing the first n + 3
    series coefficients against Z(Q_L, m).
    """
    n = q_poset.n
    pm_delta = pm_delta or reflect(q_poset.geometry, q_poset.lattice)
    t_h = h_polynomial(pm_delta) * Poly(polynomials.T, polynomials.T, domain="QQ")
    numerator = zeta_numerator(q_poset)
    zeta = lattice_ops.zeta_polynomial(q_poset.poset)
    terms = n + 3
    series = _series([int(c) for c in polynomials.coefficients(t_h)], n + 2, terms)
    values = [int(polynomials.evaluate(zeta, m)) for m in range(terms)]
    passed = numerator == t_h and series == values
    return HIdentityReport(passed, polynomials.serialize(numerator), polynomials.serialize(t_h),
                           series, values)


@dataclass
class ReciprocityReport:
    zeta: bool
    zbar: bool

    @property
    def passed(self) -> bool:
        return self.zeta and self.zbar

    def to_dict(self) -> dict:
        return {"passed": self.passed, "zeta": self.zeta, "zbar": self.zbar}


def check_reciprocity(q_poset: QPoset) -> ReciprocityReport:
    """Z(Q_L, -t) = (-1)^{n+1} Z(Q_L, t) and Z̄(Q_L, -t) = (-1)^n Z̄(Q_L, t)."""
    n = q_poset.n
    zeta = lattice_ops.zeta_polynomial(q_poset.poset)
    zbar = lattice_ops.zbar_polynomial(q_poset.poset)
    return ReciprocityReport(
        polynomials.negate_variable(zeta) == zeta * (-1) ** (n + 1),
        polynomials.negate_variable(zbar) == zbar * (-1) ** n,
    )


# Enriched P-partitions

def _order_pairs(graph: nx.DiGraph) -> List[Tuple[int, int]]:
    closure = nx.transitive_closure_dag(graph)
    return sorted(closure.edges)


def poset_graph(n: int, relations: Iterable[Tuple[int, int]]) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, n + 1))
    graph.add_edges_from((int(a), int(b)) for a, b in relations)
    if not nx.is_directed_acyclic_graph(graph):
        raise EnrichedError("relations contain a cycle")
    return graph


def with_minimum(graph: nx.DiGraph) -> nx.DiGraph:
    """P_0: P with a new element n + 1 below everything."""
    extended = graph.copy()
    new = graph.number_of_nodes() + 1
    extended.add_node(new)
    extended.add_edges_from((new, v) for v in graph.nodes)
    return extended


def is_enriched_p_partition(graph: nx.DiGraph, f) -> bool:
    """a <_P b implies f(a) ⪯ f(b), with equality only at positive values."""
    values = f.values if isinstance(f, SignedFunction) else tuple(f)
    for a, b in _order_pairs(graph):
        fa, fb = values[a - 1], values[b - 1]
        if precedes_key(fa) > precedes_key(fb):
            return False
        if fa == fb and fa < 0:
            return False
    return True


def count_enriched_p_partitions(graph: nx.DiGraph, m: int, max_functions: int = MAX_FUNCTIONS) -> int:
    n = graph.number_of_nodes()
    _guard(n, m, max_functions)
    pairs = _order_pairs(graph)
    count = 0
    for values in product(_value_range(m), repeat=n):
        keys = [precedes_key(v) for v in values]
        if all(keys[a - 1] < keys[b - 1] or (keys[a - 1] == keys[b - 1] and values[a - 1] > 0)
               for a, b in pairs):
            count += 1
    return count


@dataclass
class GalReport:
    h_vector: List[int]
    symmetric: bool
    real_rooted: bool

    def to_dict(self) -> dict:
        return {"h_vector": self.h_vector, "symmetric": self.symmetric,
                "real_rooted": self.real_rooted}


def gal_check(n: int, relations: Iterable[Tuple[int, int]]) -> GalReport:
    """Poset → upper-ideal geometry → Q_L → h of Δ(Q_L minus 0̂, 1̂) → exact real-rootedness."""
    geometry = poset_ideals(n, relations, "upper")
    q_poset = build_q_poset(geometry)
    sphere = order_complex(q_poset.poset.proper_part())
    h = h_vector(sphere)
    return GalReport(h, h == h[::-1], polynomials.is_real_rooted(h_polynomial(sphere)))
