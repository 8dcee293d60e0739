"""Flag quasisymmetric functions as monomial coefficient tables, and the ϑ map on posets."""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, Hashable, List, Optional, Tuple

from logzero import logger

from .errors import No0Hat, No1Hat
from .geometry import ConvexGeometry
from .lattice import GradedPoset
from .sphere import build_q_poset

Composition = Tuple[int, ...]

NEW_BOTTOM = -1


def compositions(degree: int) -> List[Composition]:
    """Every composition of `degree`, in lexicographic order."""
    if degree == 0:
        return [()]
    out = []
    for k in range(degree):
        for cuts in combinations(range(1, degree), k):
            bounds = (0,) + cuts + (degree,)
            out.append(tuple(b - a for a, b in zip(bounds, bounds[1:])))
    return sorted(out)


def composition_key(alpha: Composition) -> str:
    return ".".join(str(a) for a in alpha)


@dataclass
class FlagQSym:
    degree: int
    coefficients: Dict[Composition, int] = field(default_factory=dict)

    def __getitem__(self, alpha: Composition) -> int:
        return self.coefficients.get(tuple(alpha), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FlagQSym):
            return NotImplemented
        return self.degree == other.degree and self.support() == other.support()

    def support(self) -> Dict[Composition, int]:
        return {a: c for a, c in self.coefficients.items() if c}

    def scaled(self, factor: int) -> "FlagQSym":
        return FlagQSym(self.degree, {a: factor * c for a, c in self.coefficients.items()})

    def to_dict(self) -> Dict[str, int]:
        return {composition_key(a): c for a, c in sorted(self.support().items())}


def _chain_table(poset: GradedPoset, weight: Callable[[Hashable, Hashable], int]) -> FlagQSym:
    if poset.bottom is None:
        raise No0Hat("flag enumeration needs a minimum element")
    if poset.top is None:
        raise No1Hat("flag enumeration needs a maximum element")
    bottom, top = poset.bottom, poset.top
    members = poset.interval(bottom, top)
    table: Dict[Hashable, Dict[Composition, int]] = {bottom: {(): 1}}
    for u in members[1:]:
        acc: Dict[Composition, int] = {}
        for s in members:
            if s == u or not poset.lt(s, u) or s not in table:
                continue
            w = weight(s, u)
            if not w:
                continue
            jump = poset.rank[u] - poset.rank[s]
            for alpha, c in table[s].items():
                key = alpha + (jump,)
                acc[key] = acc.get(key, 0) + c * w
        table[u] = acc
    degree = poset.rank[top] - poset.rank[bottom]
    return FlagQSym(degree, {a: c for a, c in table[top].items() if c})


def flag_f(poset: GradedPoset) -> FlagQSym:
    """Coefficient of α counts chains 0̂ = t_0 < ... < t_k = 1̂ with rank jumps α."""
    return _chain_table(poset, lambda s, t: 1)


def theta_of_poset(poset: GradedPoset) -> FlagQSym:
    """Chains weighted by ν([t_0, t_1]) ⋯ ν([t_{k-1}, t_k])."""
    return _chain_table(poset, poset.nu)


@dataclass
class MainTheoremReport:
    passed: bool
    doubled_flag: FlagQSym
    theta: FlagQSym
    mismatches: List[Tuple[Composition, int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "two_flag_q": self.doubled_flag.to_dict(),
            "theta_flag_l": self.theta.to_dict(),
            "mismatches": [
                {"composition": composition_key(a), "two_flag_q": left, "theta": right}
                for a, left, right in self.mismatches
            ],
        }


def verify_main_theorem(geometry: ConvexGeometry, q_join=None) -> MainTheoremReport:
    """2 F_{Q_L} against ϑ(F_{L ∪ 0̂}) for L the join-distributive dual of the closed sets."""
    q_join = q_join or build_q_poset(geometry, orientation="join")
    dual = q_join.lattice.dual()
    extended = dual.with_bottom(NEW_BOTTOM)
    left = flag_f(q_join.poset).scaled(2)
    right = theta_of_poset(extended)
    mismatches = []
    for alpha in compositions(geometry.n + 1):
        if left[alpha] != right[alpha]:
            mismatches.append((alpha, left[alpha], right[alpha]))
    for alpha in set(left.support()) | set(right.support()):
        if sum(alpha) != geometry.n + 1:
            mismatches.append((alpha, left[alpha], right[alpha]))
    if mismatches:
        logger.warning("%s: %d compositions disagree", geometry.name, len(mismatches))
    return MainTheoremReport(not mismatches, left, right, sorted(mismatches))


def refines(finer: Composition, coarser: Composition) -> bool:
    """Whether `finer` is obtained from `coarser` by splitting parts."""
    if sum(finer) != sum(coarser):
        return False
    partial, cuts = 0, set()
    for part in finer[:-1]:
        partial += part
        cuts.add(partial)
    partial = 0
    for part in coarser[:-1]:
        partial += part
        if partial not in cuts:
            return False
    return True


def top_coefficient(table: FlagQSym) -> Optional[int]:
    """Coefficient of the all-ones composition."""
    return table[(1,) * table.degree] if table.degree else None
