import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrkit import (Arrangement, apply_linear_map, boolean, build_lattice, charpoly, criteria_report,
                    find_nice_partition, free_probe, is_modular, is_supersolvable, weyl_arrangement)
from arrkit import exact
from arrkit.arrangement import restrict
from arrkit.criteria import CHECKS, chain_partition, is_nice_partition
from arrkit.lattice import CharPoly, SizeBoundExceeded, flat_of
from arrkit.roots import RootSystem, ideal_arrangement, ideal_from_generators

from conftest import random_arrangement, triangle_restriction


def modular_by_sums(a, lat, x):
    """X is modular iff X + Y is again a flat for every flat Y."""
    for y in lat.flats:
        s = exact.sum_space(x.subspace, y.subspace)
        forms = [h.normal for h in a if _contains(s, h)]
        if exact.Subspace.kernel(forms, a.ambient_dim) != s:
            return False
    return True


def _contains(s, h):
    return all(exact.dot(h.normal, v) == 0 for v in s.basis)


def nice_by_brute_force(a, lat):
    """All assignments of hyperplanes to rank-many labelled blocks."""
    r = lat.rank
    normals = a.normals
    for labels in product(range(r), repeat=len(a)):
        blocks = [[i for i in range(len(a)) if labels[i] == k] for k in range(r)]
        if any(not b for b in blocks):
            continue
        if not all(exact.rank([normals[i] for i in choice]) == len(choice)
                   for k in range(1, r + 1) for sub in combinations(blocks, k) for choice in product(*sub)):
            continue
        if all(any(sum(1 for i in b if f.mask >> i & 1) == 1 for b in blocks)
               for f in lat.flats if f.rank >= 2):
            return blocks
    return None


def d4_ideal(*gens):
    rs = RootSystem("D", 4)
    return ideal_arrangement(rs, ideal_from_generators(rs, list(gens)))


def test_every_flat_of_a_rank_2_arrangement_is_modular():
    a = Arrangement.from_normals([(1, 0), (0, 1), (1, 1), (1, -1)])
    lat = build_lattice(a)
    assert all(is_modular(lat, x) for x in lat.flats)


def test_modular_examples_braid():
    a = weyl_arrangement("A", 3)
    lat = build_lattice(a)
    # the triple point x1=x2=x3 is modular, the pair x1=x2, x3=x4 is not
    triple = flat_of(a, [a.index((1, -1, 0, 0)), a.index((0, 1, -1, 0))])
    pair = flat_of(a, [a.index((1, -1, 0, 0)), a.index((0, 0, 1, -1))])
    assert is_modular(lat, lat.by_mask(triple.mask))
    assert not is_modular(lat, lat.by_mask(pair.mask))


def test_triangle_restriction_has_no_modular_line(tri):
    lat = build_lattice(tri)
    assert not any(is_modular(lat, x) for x in lat.stratum(2))


@pytest.mark.parametrize("a,expected", [
    (boolean(3), True), (weyl_arrangement("A", 3), True), (weyl_arrangement("B", 3), True),
    (weyl_arrangement("D", 4), False), (triangle_restriction(), False),
    (Arrangement.from_normals([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]), False),
])
def test_supersolvable_examples(a, expected):
    lat = build_lattice(a)
    chain = is_supersolvable(lat)
    assert (chain is not None) == expected
    if chain:
        assert [f.rank for f in chain.flats] == list(range(lat.rank + 1))
        assert all(is_modular(lat, lat.by_mask(f.mask)) for f in chain.flats)


def test_free_probe_examples():
    assert free_probe(CharPoly.from_roots([1, 3, 5])).to_json() == {"free_probe": "possibly-free",
                                                                    "exponents": [1, 3, 5]}
    assert free_probe(CharPoly.from_roots([0, 1, 1])).exponents == (0, 1, 1)
    tri_chi = charpoly(build_lattice(triangle_restriction()))
    assert str(tri_chi) == "t^3 - 6*t^2 + 12*t - 7"
    assert free_probe(tri_chi).status == "not-free"
    assert free_probe(CharPoly.from_roots([2, 2])).status == "possibly-free"
    # t^2 - 3t + 3 has no real roots
    assert free_probe(CharPoly((3, -3, 1))).status == "not-free"


def test_d4_probe_and_factoredness(d4):
    lat = build_lattice(d4)
    assert free_probe(charpoly(lat)).exponents == (1, 3, 3, 5)
    assert find_nice_partition(d4, lat) is None


def test_boolean_is_factored():
    a = boolean(4)
    nice = find_nice_partition(a)
    assert nice is not None and nice.sizes() == (1, 1, 1, 1)


def test_braid_partition_sizes():
    nice = find_nice_partition(weyl_arrangement("A", 3))
    assert nice.sizes() == (3, 2, 1)


def test_triangle_restriction_not_factored(tri):
    assert find_nice_partition(tri) is None


def test_nice_partition_bound():
    with pytest.raises(SizeBoundExceeded):
        find_nice_partition(weyl_arrangement("B", 4), bound=10)


@pytest.mark.parametrize("i", range(11))
def test_restrictions_of_the_e1_plus_e2_ideal(i):
    a = d4_ideal("e1+e2")
    res, _ = restrict(a, flat_of(a, [i]))
    lat = build_lattice(res)
    nice = find_nice_partition(res, lat)
    assert nice is not None
    assert is_nice_partition(res, lat, nice.blocks)
    if len(res) <= 7:
        assert nice_by_brute_force(res, lat) is not None


@pytest.mark.parametrize("a", [boolean(3), weyl_arrangement("A", 3), triangle_restriction(),
                               Arrangement.from_normals([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
                               Arrangement.from_normals([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1)])])
def test_nice_search_agrees_with_brute_force(a):
    lat = build_lattice(a)
    assert (find_nice_partition(a, lat) is None) == (nice_by_brute_force(a, lat) is None)


def test_is_nice_partition_rejects():
    a = boolean(3)
    lat = build_lattice(a)
    assert is_nice_partition(a, lat, [[0], [1], [2]])
    assert not is_nice_partition(a, lat, [[0, 1], [2]])
    assert not is_nice_partition(a, lat, [[0], [1]])


def arrangements():
    return st.integers(0, 10 ** 6).map(lambda s: random_arrangement(random.Random(s), max_dim=3, max_size=7))


@settings(max_examples=40)
@given(arrangements())
def test_modularity_agrees_with_sum_characterization(a):
    lat = build_lattice(a)
    for x in lat.flats:
        assert is_modular(lat, x) == modular_by_sums(a, lat, x)


@settings(max_examples=40)
@given(arrangements())
def test_nice_partition_factors_poincare(a):
    lat = build_lattice(a)
    nice = find_nice_partition(a, lat)
    if nice is None:
        return
    assert is_nice_partition(a, lat, nice.blocks)
    prod = CharPoly.from_roots([-s for s in nice.sizes()]).coeffs[::-1]
    pc = charpoly(lat).poincare()
    assert pc[:len(prod)] == prod and not any(pc[len(prod):])


@settings(max_examples=40)
@given(arrangements())
def test_supersolvable_implies_factored_and_restrictions_supersolvable(a):
    lat = build_lattice(a)
    chain = is_supersolvable(lat)
    if chain is None:
        return
    assert find_nice_partition(a, lat) is not None
    assert is_nice_partition(a, lat, chain_partition(chain).blocks)
    assert free_probe(charpoly(lat)).status == "possibly-free"
    for x in lat.flats:
        if 0 < x.rank < lat.rank:
            res, _ = restrict(a, x)
            assert is_supersolvable(build_lattice(res)) is not None


@settings(max_examples=40)
@given(arrangements(), st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_probe_invariant_under_linear_maps(a, entries):
    d = a.ambient_dim
    m = [entries[i * 3:i * 3 + d] for i in range(d)]
    if exact.rank(m) < d:
        m = [[int(i == j) for j in range(d)] for i in range(d)]
    b = apply_linear_map(a, m)
    pa = free_probe(charpoly(build_lattice(a)))
    pb = free_probe(charpoly(build_lattice(b)))
    assert pa == pb
    assert (is_supersolvable(build_lattice(a)) is None) == (is_supersolvable(build_lattice(b)) is None)


def test_report_keys(tri):
    report, skipped = criteria_report(tri)
    assert skipped == []
    assert report["lattice"] == {"rank": 3, "flats": 17, "strata": [1, 6, 9, 1]}
    assert report["charpoly"] == "t^3 - 6*t^2 + 12*t - 7"
    assert report["supersolvable"] is False and report["modular_chain"] is None
    assert report["free_probe"] == "not-free" and report["factored"] is False
    assert report["simplicial"] is False
    assert report["simple_triangle"] is None
    assert report["simple_triangle_isotopy"]["parameter"] == "1"


def test_report_skips_and_rejects(d4):
    report, skipped = criteria_report(d4, ("simple-triangle", "charpoly"))
    assert skipped == ["simple-triangle"] and report["simple_triangle"] is None
    assert report["charpoly"] == str(CharPoly.from_roots([1, 3, 3, 5]))
    with pytest.raises(ValueError):
        criteria_report(d4, ("nonsense",))
    assert set(CHECKS) >= {"lattice", "factored"}


@pytest.mark.parametrize("kind,n", [("A", 4), ("B", 4), ("B", 5)])
def test_chain_partition_beyond_search_bound(kind, n):
    a = weyl_arrangement(kind, n)
    lat = build_lattice(a)
    nice = chain_partition(is_supersolvable(lat))
    assert is_nice_partition(a, lat, nice.blocks)
    assert sorted(nice.sizes()) == [e for e in free_probe(charpoly(lat)).exponents if e]
