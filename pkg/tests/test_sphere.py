import pytest

from convex_spheres import complex as cx
from convex_spheres import sphere
from convex_spheres import lattice as lat
from convex_spheres.errors import ChainMustEndAtTop, ChainNotInL, NotProperElement, ResourceLimit
from convex_spheres.geometry import boolean, closed_sets
from convex_spheres.sphere import SignedElement, build_q_poset, reflect, signed

ABC = 0b111


def test_signed_elements_keep_signs_on_extreme_points(three_collinear):
    q = signed(three_collinear, ABC, [1, -1, -1])
    assert q.signs == ((1, 1), (3, -1))
    assert q == signed(three_collinear, ABC, {1: 1, 2: 1, 3: -1})
    assert q.label == "{1,2,3}+1-3"
    with pytest.raises(ChainNotInL):
        signed(three_collinear, 0b101)
    assert sphere.zero_map(q) == ABC


def test_reflect_small_cases(single_point, b2):
    s0 = reflect(single_point)
    assert len(s0.vertices) == 2 and len(s0) == 2
    assert s0.dimension == 0
    octagon = reflect(b2)
    assert len(octagon.vertices) == 8 and len(octagon) == 8
    assert cx.is_pseudomanifold(octagon)


def test_reflect_three_collinear(three_collinear):
    pm = reflect(three_collinear)
    assert cx.f_vector(pm) == [18, 48, 32]
    for i in range(1, 4):
        assert sphere.flip_signs(pm, i) == pm


def test_reflect_size_cap():
    with pytest.raises(ResourceLimit):
        reflect(boolean(9))
    with pytest.raises(ResourceLimit):
        reflect(boolean(3), max_facets=10)


def test_q_poset_three_collinear(three_collinear):
    q = build_q_poset(three_collinear)
    assert len(q.proper()) == 18
    assert len(q.poset) == 20
    assert len(q.coatoms()) == 4
    assert q.poset.rank[q.one] == 4
    assert len(q.poset.proper_part().maximal_chains()) == 32


def test_q_poset_single_point_is_a_diamond(single_point):
    q = build_q_poset(single_point)
    assert len(q.poset) == 4
    assert len(q.poset.covers) == 4
    assert sphere.is_eulerian(q)


def test_q_order_matches_the_sign_rule(small_geometry):
    q = build_q_poset(small_geometry)
    elements = q.signed_elements()
    for a in elements:
        for b in elements:
            assert q.poset.leq(a, b) == sphere.precedes(a, b)


def test_order_complex_of_q_is_pm_delta(corpus_geometry):
    q = build_q_poset(corpus_geometry)
    assert sphere.verify_pm_delta(q)


def test_q_is_eulerian(corpus_geometry):
    q = build_q_poset(corpus_geometry)
    assert q.poset.rank[q.one] == corpus_geometry.n + 1
    assert sphere.is_eulerian(q)


def test_pm_delta_is_a_symmetric_sphere(corpus_geometry):
    pm = reflect(corpus_geometry)
    assert cx.is_sphere_like(pm)
    h = cx.h_vector(pm)
    assert h == h[::-1]
    for i in range(1, corpus_geometry.n + 1):
        assert sphere.flip_signs(pm, i) == pm


def test_coatom_count(corpus_geometry):
    q = build_q_poset(corpus_geometry)
    ext = corpus_geometry.extreme_points(corpus_geometry.ground)
    assert len(q.coatoms()) == 2 ** bin(ext).count("1")


def test_face_name_multiplicity(three_collinear):
    counts = sphere.face_name_multiplicity(three_collinear, [ABC])
    assert len(counts) == 4
    assert set(counts.values()) == {2}
    full_chain = [0b001, 0b011, ABC]
    counts = sphere.face_name_multiplicity(three_collinear, full_chain)
    assert set(counts.values()) == {1}


def test_face_name_multiplicity_formula(small_geometry):
    lattice = closed_sets(small_geometry)
    for chain in sphere.chains_to(lattice, small_geometry.ground)[:3]:
        for k in range(1, len(chain) + 1):
            part = chain[-k:]
            ext = bin(sphere.chain_extremes(small_geometry, part)).count("1")
            counts = sphere.face_name_multiplicity(small_geometry, part)
            assert set(counts.values()) == {2 ** (small_geometry.n - ext)}


def test_fiber_examples(three_collinear):
    q = build_q_poset(three_collinear)
    assert sphere.fiber_count(q, [0]) == 1
    assert sphere.fiber_product(q, [0]) == 1
    assert sphere.fiber_count(q, [0b001, 0]) == 2
    assert sphere.fiber_product(q, [0b001, 0]) == 2
    assert sphere.fiber_count(q, [ABC, 0b011, 0b010, 0]) == sphere.fiber_product(q, [ABC, 0b011, 0b010, 0])


def test_fiber_chain_errors(three_collinear):
    q = build_q_poset(three_collinear)
    with pytest.raises(ChainMustEndAtTop):
        sphere.fiber_count(q, [ABC, 0b011])
    with pytest.raises(ChainNotInL):
        sphere.fiber_count(q, [0b101, 0])
    with pytest.raises(ChainNotInL):
        sphere.fiber_count(q, [0b011, ABC, 0])


def test_fibers_are_products_of_nu(corpus_geometry):
    if corpus_geometry.n > 5:
        pytest.skip("fiber enumeration is checked up to n = 5")
    q = build_q_poset(corpus_geometry)
    for chain in sphere.all_chains_to_top(q.lattice):
        direct = sphere.fiber_count(q, chain)
        assert direct == sphere.fiber_product(q, chain)
        assert direct == sphere.fiber_boolean_product(q, chain)


def test_nu_of_boolean_intervals():
    for k in range(1, 6):
        dual = closed_sets(boolean(k)).dual()
        assert dual.nu((1 << k) - 1, 0) == 2 ** k


def test_cells(single_point, three_collinear):
    q1 = build_q_poset(single_point)
    plus = SignedElement(1, ((1, 1),))
    assert sphere.cell(q1, plus).facets == frozenset({frozenset({plus})})
    assert sphere.boundary_cells(q1, plus) == []
    assert sphere.verify_boundary(q1, plus)

    q3 = build_q_poset(three_collinear)
    top = signed(three_collinear, ABC, [1, 1, -1])
    owned = sphere.cell(q3, top)
    assert owned.size == 8
    assert owned.size == sphere.expected_cell_size(q3, top)
    assert sphere.cell_as_star(q3, top, reflect(three_collinear))
    with pytest.raises(NotProperElement):
        sphere.cell(q3, q3.zero)


def test_cell_boundaries(small_geometry):
    q = build_q_poset(small_geometry)
    for p in q.proper():
        assert sphere.cell(q, p).size == sphere.expected_cell_size(q, p)
        assert sphere.verify_boundary(q, p)
        below = sphere.boundary_cells(q, p)
        assert set(below) == {r for r in q.proper() if r != p and sphere.precedes(r, p)}


def test_assembly_order(small_geometry):
    q = build_q_poset(small_geometry)
    seen = set()
    for p in sphere.assembly_order(q):
        assert all(b in seen for b in sphere.boundary_cells(q, p))
        seen.add(p)
    assert len(seen) == len(q.proper())


def test_join_orientation_is_the_dual(small_geometry):
    dual_lattice, q_join = sphere.join_orientation(small_geometry)
    q = build_q_poset(small_geometry)
    assert q_join.poset.same_order(q.poset.dual())
    assert lat.is_join_distributive(dual_lattice)
    assert sphere.is_eulerian(q_join)
