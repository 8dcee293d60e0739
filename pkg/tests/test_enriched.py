from itertools import product

import pytest

from convex_spheres import enriched, polynomials
from convex_spheres import lattice as lat
from convex_spheres.enriched import SignedFunction, enumerate_enriched, is_enriched_extremal
from convex_spheres.errors import EnrichedError, NotAMultichain, NotExtremal, ResourceLimit
from convex_spheres.geometry import boolean, poset_ideals
from convex_spheres.sphere import build_q_poset, signed

ABC = 0b111
CORPUS_MAX_FUNCTIONS = 10 ** 6


def test_precedes_key_orders_values():
    ordered = [-1, 1, -2, 2, -3, 3]
    assert sorted(reversed(ordered), key=enriched.precedes_key) == ordered
    with pytest.raises(EnrichedError):
        enriched.precedes_key(0)


def test_signed_function_validates():
    f = SignedFunction.of([-1, 2, 1])
    assert f.bound == 2 and f(2) == 2
    with pytest.raises(EnrichedError):
        SignedFunction((1, 0), 1)
    with pytest.raises(EnrichedError):
        SignedFunction((3,), 2)


def test_extremal_examples(three_collinear):
    assert is_enriched_extremal(three_collinear, (-1, 1, -1))
    check = is_enriched_extremal(three_collinear, (1, -1, 1))
    assert not check
    assert check.condition == 1
    assert check.subset == ABC
    assert "extreme point" in check.describe()


def test_second_condition_reports_the_element(three_collinear):
    check = is_enriched_extremal(three_collinear, (1, -1, -1))
    assert not check
    assert (check.condition, check.element) == (2, 2)


def test_enriched_set_at_m_one(three_collinear):
    count, found = enumerate_enriched(three_collinear, 1, collect=True)
    assert count == 4
    assert {f.values for f in found} == {(1, 1, 1), (-1, 1, 1), (1, 1, -1), (-1, 1, -1)}


def test_single_point_counts(single_point):
    q = build_q_poset(single_point)
    zbar = lat.zbar_polynomial(q.poset)
    for m in range(1, 6):
        count, _ = enumerate_enriched(single_point, m)
        assert count == 2 * m
        assert polynomials.evaluate(zbar, m) == count


def test_zbar_at_two(three_collinear):
    q = build_q_poset(three_collinear)
    count, _ = enumerate_enriched(three_collinear, 2)
    assert count == polynomials.evaluate(lat.zbar_polynomial(q.poset), 2)


def test_forward_map_example(three_collinear):
    q = build_q_poset(three_collinear)
    chain = [signed(three_collinear, ABC, [1, 1, 1]), q.zero]
    assert enriched.multichain_to_function(q, chain).values == (1, 1, 1)
    chain = [signed(three_collinear, ABC, [-1, 1, 1]), signed(three_collinear, 0b011, [-1, 1, 1]), q.zero]
    assert enriched.multichain_to_function(q, chain).values == (-2, 2, 1)


def test_bijection_round_trips(small_geometry):
    q = build_q_poset(small_geometry)
    for m in range(1, 4):
        _, found = enumerate_enriched(small_geometry, m, collect=True)
        for f in found:
            chain = enriched.function_to_multichain(small_geometry, f)
            assert len(chain) == m + 1
            assert enriched.multichain_to_function(q, chain) == f


def test_multichains_cover_the_enriched_set(small_geometry):
    q = build_q_poset(small_geometry)
    for m in (1, 2):
        images = {enriched.multichain_to_function(q, c).values
                  for c in enriched.multichains_to_coatoms(q, m)}
        _, found = enumerate_enriched(small_geometry, m, collect=True)
        assert images == {f.values for f in found}


def test_level_sets_of_extremal_functions_are_closed(small_geometry):
    _, found = enumerate_enriched(small_geometry, 2, collect=True)
    for f in found:
        assert enriched.upper_level_sets_closed(small_geometry, f)


def test_upper_ideals_match_enriched_p_partitions(small_geometry):
    representation = small_geometry.representation
    if small_geometry.kind != "poset" or representation.direction != "upper":
        pytest.skip("only upper-ideal geometries")
    graph = enriched.poset_graph(small_geometry.n, representation.relations)
    for values in product([-2, -1, 1, 2], repeat=small_geometry.n):
        assert bool(is_enriched_extremal(small_geometry, values)) == enriched.is_enriched_p_partition(graph, values)


def test_doubled_zeta_counts_partitions_with_a_minimum():
    # a two-element chain 1 < 2 with its upper-ideal geometry
    graph = enriched.poset_graph(2, [(1, 2)])
    extended = enriched.with_minimum(graph)
    assert sorted(extended.successors(3)) == [1, 2]
    geometry = poset_ideals(2, [(1, 2)], "upper")
    zeta = lat.zeta_polynomial(build_q_poset(geometry).poset)
    for m in range(1, 4):
        assert 2 * polynomials.evaluate(zeta, m) == enriched.count_enriched_p_partitions(extended, m)


def test_verify_prop_enriched(three_collinear):
    report = enriched.verify_prop_enriched(three_collinear, 3)
    assert report.passed, report.to_dict()
    assert [row.m for row in report.rows] == [1, 2, 3]
    assert report.rows[0].enriched == 4
    assert report.rows[0].extension_zbar == report.rows[0].extension == 2 * report.rows[0].zeta
    assert report.skipped == []


def test_verify_prop_enriched_skips_large_rows():
    report = enriched.verify_prop_enriched(boolean(3), 3, max_functions=100)
    assert [row.m for row in report.rows] == [1, 2]
    assert report.skipped


def test_h_identity(three_collinear, single_point):
    report = enriched.verify_h_identity(build_q_poset(three_collinear))
    assert report.passed
    assert report.numerator == ["0", "1", "15", "15", "1"]
    point = enriched.verify_h_identity(build_q_poset(single_point))
    assert point.passed
    assert point.zeta_values == [m * m for m in range(4)]


def test_h_identity_on_the_corpus(corpus_geometry):
    assert enriched.verify_h_identity(build_q_poset(corpus_geometry)).passed


def test_reciprocity(corpus_geometry):
    assert enriched.check_reciprocity(build_q_poset(corpus_geometry)).passed


def test_gal_check():
    report = enriched.gal_check(2, [(1, 2)])
    assert report.h_vector == [1, 2, 1]
    assert report.symmetric and report.real_rooted
    antichain = enriched.gal_check(3, [])
    assert antichain.symmetric and antichain.real_rooted


def test_errors(three_collinear):
    q = build_q_poset(three_collinear)
    with pytest.raises(NotExtremal):
        enriched.function_to_multichain(three_collinear, SignedFunction.of([1, -1, 1]))
    with pytest.raises(NotAMultichain):
        enriched.multichain_to_function(q, [q.zero])
    with pytest.raises(NotAMultichain):
        enriched.multichain_to_function(q, [signed(three_collinear, 0b011), q.zero])
    with pytest.raises(NotAMultichain):
        enriched.multichain_to_function(q, [q.zero, signed(three_collinear, ABC), q.zero])
    with pytest.raises(ResourceLimit):
        enumerate_enriched(boolean(10), 2, max_functions=1000)
    with pytest.raises(EnrichedError):
        enumerate_enriched(three_collinear, 0)


def test_enriched_counts_and_extension_on_the_corpus(corpus_geometry):
    report = enriched.verify_prop_enriched(corpus_geometry, 3, max_functions=CORPUS_MAX_FUNCTIONS)
    assert report.passed, report.to_dict()
    assert report.rows
    for row in report.rows:
        assert row.extension_zbar == 2 * row.zeta
        if (2 * row.m) ** (corpus_geometry.n + 1) <= CORPUS_MAX_FUNCTIONS:
            assert row.extension == 2 * row.zeta
