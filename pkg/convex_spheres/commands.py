"""Subcommand pipelines: build, check, and report on one geometry."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional

from logzero import logger

from . import complex as cx
from . import enriched, exports, polynomials, qsym, sphere, subsets
from . import lattice as lattice_ops
from .config import RunConfig
from .errors import InvalidGeometry
from .geometry import ConvexGeometry, closed_sets, validate
from .inputs import geometry_document, load_geometry

FIBER_CHECK_MAX_N = 6
DOT_MAX_ELEMENTS = 400


@dataclass
class Check:
    name: str
    passed: bool
    detail: Any = None

    def to_dict(self) -> Dict[str, Any]:
        out = {"name": self.name, "passed": self.passed}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class CommandResult:
    """Report plus any export files, keyed by file name."""
    command: str
    report: Dict[str, Any]
    checks: List[Check] = field(default_factory=list)
    files: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def document(self) -> Dict[str, Any]:
        doc = dict(self.report)
        doc["command"] = self.command
        doc["checks"] = [c.to_dict() for c in self.checks]
        doc["passed"] = self.passed
        return doc


class Workbench:
    """Lazily built structures for one validated geometry."""

    def __init__(self, geometry: ConvexGeometry, config: RunConfig):
        self.geometry = geometry
        self.config = config
        self.validation = validate(geometry)
        if not self.validation.valid:
            raise InvalidGeometry(self.validation)

    @classmethod
    def from_config(cls, config: RunConfig) -> "Workbench":
        return cls(load_geometry(config.input), config)

    @cached_property
    def lattice(self):
        return closed_sets(self.geometry)

    @cached_property
    def dual(self):
        return self.lattice.dual()

    @cached_property
    def q_poset(self) -> sphere.QPoset:
        return sphere.build_q_poset(self.geometry, self.lattice)

    @cached_property
    def q_join(self) -> sphere.QPoset:
        return sphere.build_q_poset(self.geometry, self.lattice, orientation="join")

    @cached_property
    def pm_delta(self) -> cx.SimplicialComplex:
        return sphere.reflect(self.geometry, self.lattice, self.config.max_facets)

    @cached_property
    def subdivision(self):
        return cx.build_by_subdivision(self.lattice, self.config.max_facets)

    @cached_property
    def main_theorem(self) -> qsym.MainTheoremReport:
        return qsym.verify_main_theorem(self.geometry, self.q_join)

    @cached_property
    def order_complex(self) -> cx.SimplicialComplex:
        without_bottom = self.lattice.subposet([a for a in self.lattice.elements if a])
        return cx.order_complex(without_bottom, self.config.max_facets)

    def header(self) -> Dict[str, Any]:
        return {
            "geometry": geometry_document(self.geometry),
            "validation": self.validation.to_dict(),
        }

    def emits(self, fmt: str) -> bool:
        return fmt in self.config.emit


def _run(check: Callable[[], Check], checks: List[Check]) -> None:
    result = check()
    logger.debug("%s: %s", result.name, "ok" if result.passed else "FAILED")
    checks.append(result)


# lattice

def lattice_section(bench: Workbench) -> Dict[str, Any]:
    lat = bench.lattice
    geometry = bench.geometry
    return {
        "closed_sets": [list(subsets.elements(a)) for a in lat.elements],
        "closed_set_count": len(lat),
        "covers": [[list(subsets.elements(a)), list(subsets.elements(b))] for a, b in lat.covers],
        "meet_distributive": lattice_ops.is_meet_distributive(lat),
        "join_distributive": lattice_ops.is_join_distributive(lat),
        "dual_semimodular": lattice_ops.is_semimodular(bench.dual),
        "join_irreducibles": [list(subsets.elements(a)) for a in lattice_ops.join_irreducibles(lat)],
        "extreme_points": list(subsets.elements(geometry.extreme_points(geometry.ground))),
        "nu": lattice_ops.nu(lat),
    }


def lattice_checks(bench: Workbench) -> List[Check]:
    lat = bench.lattice
    geometry = bench.geometry
    principal = subsets.canonical({geometry.principal(i) for i in range(1, geometry.n + 1)})
    checks: List[Check] = []
    _run(lambda: Check("meet_distributive", lattice_ops.is_meet_distributive(lat)), checks)
    _run(lambda: Check("join_irreducibles_principal",
                       lattice_ops.join_irreducibles(lat) == principal), checks)
    _run(lambda: Check("nu_boolean_shortcut",
                       bench.dual.nu(geometry.ground, 0)
                       == lattice_ops.nu_boolean_count(bench.dual, geometry.ground, 0)), checks)
    _run(lambda: Check("dual_semimodular", lattice_ops.is_semimodular(bench.dual)), checks)
    return checks


def cmd_lattice(config: RunConfig, bench: Optional[Workbench] = None) -> CommandResult:
    bench = bench or Workbench.from_config(config)
    report = bench.header()
    report["lattice"] = lattice_section(bench)
    result = CommandResult("lattice", report, lattice_checks(bench))
    if bench.emits("json"):
        result.files["closed_sets.json"] = exports.to_json(exports.poset_dict(bench.lattice))
    if bench.emits("dot"):
        result.files["lattice.dot"] = exports.hasse_dot(bench.lattice, bench.geometry.name)
    return result


# complex

def complex_section(bench: Workbench) -> Dict[str, Any]:
    steps, final = bench.subdivision
    lat = bench.lattice
    return {
        "steps": [
            {
                "closed": list(subsets.elements(s.closed)),
                "face": [lat.label(v) for v in s.face],
                "principal": s.principal,
                "facets": len(s.complex),
            }
            for s in steps
        ],
        "facets": len(final),
        "f_vector": cx.f_vector(final),
        "h_vector": cx.h_vector(final),
        "euler_characteristic": cx.euler_characteristic(final),
        "matches_order_complex": final == bench.order_complex,
    }


def complex_checks(bench: Workbench) -> List[Check]:
    lat = bench.lattice
    geometry = bench.geometry
    checks: List[Check] = []
    steps, final = bench.subdivision
    _run(lambda: Check("subdivision_matches_order_complex", final == bench.order_complex), checks)
    bookkeeping = all(
        cx.check_subdivision_bookkeeping(before.complex, after.complex, after.face)
        for before, after in zip(steps, steps[1:]) if not after.principal
    )
    _run(lambda: Check("subdivision_bookkeeping", bookkeeping), checks)
    _run(lambda: Check("cone_point", cx.cone_points(bench.order_complex) == [geometry.ground]), checks)
    interior = [a for a in lat.elements if a not in (lat.bottom, lat.top)]
    if len(interior) != (1 << geometry.n) - 2:
        proper = cx.order_complex(lat.subposet(interior), bench.config.max_facets)
        _run(lambda: Check("proper_part_ball", cx.is_ball_like(proper),
                           {"euler_characteristic": cx.euler_characteristic(proper)}), checks)
    return checks


def cmd_complex(config: RunConfig, bench: Optional[Workbench] = None) -> CommandResult:
    bench = bench or Workbench.from_config(config)
    report = bench.header()
    report["complex"] = complex_section(bench)
    result = CommandResult("complex", report, complex_checks(bench))
    if bench.emits("json"):
        result.files["order_complex.json"] = exports.to_json(bench.order_complex.to_dict())
    return result


# sphere

def sphere_section(bench: Workbench) -> Dict[str, Any]:
    pm = bench.pm_delta
    q = bench.q_poset
    return {
        "pm_delta": {
            "vertices": len(pm.vertices),
            "facets": len(pm),
            "f_vector": cx.f_vector(pm),
            "h_vector": cx.h_vector(pm),
            "euler_characteristic": cx.euler_characteristic(pm),
        },
        "q_poset": {
            "elements": len(q.poset),
            "proper_elements": len(q.proper()),
            "coatoms": len(q.coatoms()),
            "rank": q.poset.height,
        },
    }


def _fiber_check(bench: Workbench) -> Check:
    q = bench.q_poset
    bad = []
    chains = sphere.all_chains_to_top(bench.lattice)
    for chain in chains:
        direct = sphere.fiber_count(q, chain)
        if direct != sphere.fiber_product(q, chain) or direct != sphere.fiber_boolean_product(q, chain):
            bad.append([bench.lattice.label(a) for a in chain])
    return Check("fiber_counts", not bad, {"chains": len(chains), "failures": bad})


def _cell_check(bench: Workbench) -> Check:
    q = bench.q_poset
    cells = []
    bad = []
    for p in q.proper():
        size = sphere.cell(q, p).size
        boundary = sphere.boundary_cells(q, p)
        cells.append({"cell": p.label, "rank": q.poset.rank[p], "size": size, "boundary": len(boundary)})
        if size != sphere.expected_cell_size(q, p) or not sphere.verify_boundary(q, p):
            bad.append(p.label)
    return Check("cell_boundaries", not bad, {"cells": cells, "failures": bad})


def _assembly_check(bench: Workbench) -> Check:
    q = bench.q_poset
    seen = set()
    for p in sphere.assembly_order(q):
        if any(b not in seen for b in sphere.boundary_cells(q, p)):
            return Check("assembly_order", False, {"cell": p.label})
        seen.add(p)
    return Check("assembly_order", True)


def sphere_checks(bench: Workbench) -> List[Check]:
    geometry = bench.geometry
    pm = bench.pm_delta
    q = bench.q_poset
    checks: List[Check] = []
    _run(lambda: Check("order_complex_equals_pm_delta", sphere.verify_pm_delta(q, pm)), checks)
    _run(lambda: Check("eulerian", sphere.is_eulerian(q)), checks)
    _run(lambda: Check("pm_delta_sphere", cx.is_sphere_like(pm)), checks)
    h = cx.h_vector(pm)
    _run(lambda: Check("h_vector_symmetric", h == h[::-1], h), checks)
    flips = all(sphere.flip_signs(pm, i) == pm for i in range(1, geometry.n + 1))
    _run(lambda: Check("sign_flip_symmetry", flips), checks)
    ext = subsets.size(geometry.extreme_points(geometry.ground))
    _run(lambda: Check("coatom_count", len(q.coatoms()) == 1 << ext), checks)
    _run(lambda: Check("join_orientation_is_dual", bench.q_join.poset.same_order(q.poset.dual())), checks)
    _run(lambda: _cell_check(bench), checks)
    _run(lambda: _assembly_check(bench), checks)
    if geometry.n <= FIBER_CHECK_MAX_N:
        _run(lambda: _fiber_check(bench), checks)
    return checks


def cmd_sphere(config: RunConfig, bench: Optional[Workbench] = None) -> CommandResult:
    bench = bench or Workbench.from_config(config)
    report = bench.header()
    report["sphere"] = sphere_section(bench)
    result = CommandResult("sphere", report, sphere_checks(bench))
    if bench.emits("json"):
        result.files["q_poset.json"] = exports.to_json(exports.q_poset_dict(bench.q_poset))
        result.files["pm_delta.json"] = exports.to_json(bench.pm_delta.to_dict())
    if bench.emits("dot") and len(bench.q_poset.poset) <= DOT_MAX_ELEMENTS:
        result.files["q_poset.dot"] = exports.hasse_dot(bench.q_poset.poset, f"Q {bench.geometry.name}")
    if bench.emits("off") and bench.geometry.n <= exports.OFF_MAX_N:
        result.files["pm_delta.off"] = exports.pm_delta_off(bench.pm_delta, bench.geometry.n)
    return result


# qsym

def qsym_checks(bench: Workbench) -> List[Check]:
    theorem = bench.main_theorem
    flag = qsym.flag_f(bench.q_join.poset)
    chains = len(bench.q_join.poset.maximal_chains(limit=bench.config.max_facets))
    checks: List[Check] = []
    mismatches = [[qsym.composition_key(a), left, right] for a, left, right in theorem.mismatches]
    _run(lambda: Check("main_theorem", theorem.passed, mismatches or None), checks)
    _run(lambda: Check("top_flag_counts_maximal_chains", qsym.top_coefficient(flag) == chains), checks)
    return checks


def cmd_qsym(config: RunConfig, bench: Optional[Workbench] = None) -> CommandResult:
    bench = bench or Workbench.from_config(config)
    report = bench.header()
    report["qsym"] = bench.main_theorem.to_dict()
    return CommandResult("qsym", report, qsym_checks(bench))


# enriched

def enriched_section(bench: Workbench) -> Dict[str, Any]:
    q = bench.q_poset
    zeta = lattice_ops.zeta_polynomial(q.poset)
    zbar = lattice_ops.zbar_polynomial(q.poset)
    h = cx.h_polynomial(bench.pm_delta)
    return {
        "zeta": polynomials.serialize(zeta),
        "zbar": polynomials.serialize(zbar),
        "h_polynomial": polynomials.serialize(h),
        "h_real_rooted": polynomials.is_real_rooted(h),
    }


def enriched_checks(bench: Workbench) -> List[Check]:
    q = bench.q_poset
    config = bench.config
    prop = enriched.verify_prop_enriched(bench.geometry, config.m_max, q,
                                         max_functions=config.max_functions)
    identity = enriched.verify_h_identity(q, bench.pm_delta)
    reciprocity = enriched.check_reciprocity(q)
    checks: List[Check] = []
    _run(lambda: Check("enriched_counts", prop.passed, prop.to_dict()), checks)
    _run(lambda: Check("h_generating_function", identity.passed, identity.to_dict()), checks)
    _run(lambda: Check("zeta_reciprocity", reciprocity.passed, reciprocity.to_dict()), checks)
    return checks


def cmd_enriched(config: RunConfig, bench: Optional[Workbench] = None) -> CommandResult:
    bench = bench or Workbench.from_config(config)
    report = bench.header()
    report["enriched"] = enriched_section(bench)
    return CommandResult("enriched", report, enriched_checks(bench))


# verify

def cmd_verify(config: RunConfig, bench: Optional[Workbench] = None) -> CommandResult:
    """Every identity check, in a fixed order."""
    bench = bench or Workbench.from_config(config)
    logger.info("verifying %s (n = %d)", bench.geometry.name, bench.geometry.n)
    report = bench.header()
    report["lattice"] = lattice_section(bench)
    report["complex"] = complex_section(bench)
    report["sphere"] = sphere_section(bench)
    report["qsym"] = bench.main_theorem.to_dict()
    report["enriched"] = enriched_section(bench)
    checks = (lattice_checks(bench) + complex_checks(bench) + sphere_checks(bench)
              + qsym_checks(bench) + enriched_checks(bench))
    result = CommandResult("verify", report, checks)
    logger.info("%s: %d/%d checks passed", bench.geometry.name,
                sum(c.passed for c in checks), len(checks))
    return result


COMMAND_TABLE = {
    "lattice": cmd_lattice,
    "complex": cmd_complex,
    "sphere": cmd_sphere,
    "qsym": cmd_qsym,
    "enriched": cmd_enriched,
    "verify": cmd_verify,
}
