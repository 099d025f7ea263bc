import json
import random
import warnings
from fractions import Fraction

import pytest

from arrkit import Arrangement, ArrangementError, Hyperplane, NotAFlat, boolean, is_generic
from arrkit.arrangement import apply_linear_map, essentialize, localize, restrict, restrict_in_chart
from arrkit.exact import Subspace
from arrkit.family import triangle_member
from arrkit.lattice import build_lattice, flat_of
from arrkit.roots import RootSystem, diagonal_flat, family_ideal, ideal_arrangement, ideal_from_generators

from conftest import random_arrangement, triangle_restriction

SHEAR = ((1, -1, 0), (0, 1, -1), (0, 1, 1))


def test_canonical_normals():
    h = Hyperplane.from_normal([Fraction(-1, 2), 1, 0])
    assert h.normal == (1, -2, 0)
    assert Hyperplane.from_normal([-2, 4, 0]) == h


def test_proportional_normals_are_merged_with_warning():
    with pytest.warns(UserWarning):
        a = Arrangement.from_normals([(1, 0), (2, 0), (0, 1)])
    assert len(a) == 2 and a.degenerate


def test_zero_normal_rejected():
    with pytest.raises(ArrangementError):
        Arrangement.from_normals([(0, 0, 0)])


def test_wrong_length_rejected():
    with pytest.raises(ArrangementError):
        Arrangement(3, [Hyperplane.from_normal((1, 0))])


def test_json_roundtrip(tri):
    text = tri.dumps()
    again = Arrangement.loads(text)
    assert again == tri
    assert again.dumps() == text
    doc = json.loads(text)
    assert doc["dim"] == 3 and doc["hyperplanes"][0]["normal"] == ["0", "1", "0"]


def test_json_accepts_fractions():
    a = Arrangement.loads('{"dim": 2, "hyperplanes": [{"normal": ["1/2", "-3/4"]}]}')
    assert a.normals == [(2, -3)]


@pytest.mark.parametrize("text", ["not json", '{"dim": 2}', '{"dim": 2, "hyperplanes": [{"normal": ["x", "1"]}]}'])
def test_json_malformed(text):
    with pytest.raises(ArrangementError):
        Arrangement.loads(text)


def test_polynomial_string(tri):
    assert tri.polynomial_str() == "(y)(x-y)(x+z)(x-z)(y+z)(y-z)"


def test_localize_at_whole_space_is_empty(tri):
    assert len(localize(tri, Subspace.whole(3))) == 0


def test_localize_at_hyperplane(tri):
    loc = localize(tri, flat_of(tri, [2]))
    assert loc.normals == [tri[2].normal]


def test_localize_at_x_axis(tri):
    x_axis = Subspace.span([(1, 0, 0)], 3)
    assert localize(tri, x_axis).normal_set() == {(0, 1, 0), (0, 1, -1), (0, 1, 1)}


def test_localize_non_flat(tri):
    with pytest.raises(NotAFlat):
        localize(tri, Subspace.span([(1, 2, 3)], 3))


def test_restrict_boolean():
    b = boolean(3)
    res, chart = restrict(b, flat_of(b, [0]))
    assert res == boolean(2)
    assert chart == ((0, 1, 0), (0, 0, 1))


def test_restrict_records_parents():
    rs = RootSystem("D", 4)
    a = ideal_arrangement(rs, ideal_from_generators(rs, ["e1+e3"]))
    res, chart = restrict(a, flat_of(a, [a.index((0, 1, -1, 0))]))
    assert res == triangle_restriction()
    merged = [h for h in res if len(h.parents) > 1]
    assert {h.label for h in merged} == {"e1-e2|e1-e3", "e2-e4|e3-e4", "e2+e4|e3+e4"}
    # chart coordinates are (x1, x2, x4)
    assert chart == ((1, 0, 0, 0), (0, 1, 1, 0), (0, 0, 0, 1))


def test_restrict_family_n5():
    a = ideal_arrangement(RootSystem("D", 5), family_ideal("i", 5))
    res, _ = restrict(a, diagonal_flat(a, 5))
    assert res == triangle_restriction()


def test_restrict_to_whole_space_rejected(tri):
    with pytest.raises(ArrangementError):
        restrict(tri, Subspace.whole(3))


def test_restrict_in_chart_matches_rref_chart(tri):
    x = flat_of(tri, [0])
    res, chart = restrict(tri, x)
    assert restrict_in_chart(tri, x, chart) == res
    with pytest.raises(ArrangementError):
        restrict_in_chart(tri, x, [(1, 0, 0)])


def test_shear_maps_a1_onto_triangle_restriction():
    assert apply_linear_map(triangle_member(1), SHEAR) == triangle_restriction()


def test_identity_and_scaling_maps(tri):
    assert apply_linear_map(tri, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == tri
    assert apply_linear_map(tri, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]) == tri


def test_singular_map_rejected(tri):
    with pytest.raises(ArrangementError):
        apply_linear_map(tri, [[1, 0, 0], [0, 1, 0], [1, 1, 0]])


def test_essentialize():
    a = Arrangement.from_normals([(1, -1, 0, 0), (0, 1, -1, 0), (1, 0, -1, 0)])
    ess, piv = essentialize(a)
    assert ess.ambient_dim == 2 and ess.is_essential()
    assert len(ess) == 3
    assert build_lattice(ess).rank == build_lattice(a).rank


def test_is_generic(tri):
    assert not is_generic(boolean(3))
    assert is_generic(Arrangement.from_normals([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]))
    assert not is_generic(tri)


def test_center_and_rank():
    a = Arrangement.from_normals([(1, 1, 0), (1, -1, 0)])
    assert a.rank == 2
    assert a.center() == Subspace.span([(0, 0, 1)], 3)


def test_membership_and_index(tri):
    assert (0, -2, 0) in tri
    assert tri.index((0, 2, 2)) == 4
    assert (1, 1, 1) not in tri


def test_deletion(tri):
    assert len(tri.deletion(0)) == 5
    assert tri[0] not in tri.deletion(0)


def test_localization_restriction_commute_on_random_instances():
    rng = random.Random(11)
    checked = 0
    for _ in range(40):
        a = random_arrangement(rng, max_dim=4, max_size=8)
        lat = build_lattice(a)
        flats = [f for f in lat if 0 < f.rank < lat.rank]
        for x in flats[:4]:
            for y in flats[:4]:
                if not lat.leq(x, y) and not lat.leq(y, x):
                    continue
                # restrict to the smaller-rank flat then localize at the image of the other
                lo, hi = (x, y) if lat.leq(x, y) else (y, x)
                by, chart = restrict(a, lo)
                img = Subspace.span([lo.subspace.coordinates(v) for v in hi.subspace.basis], len(chart))
                left = localize(by, img)
                right, _ = restrict(localize(a, hi), lo.subspace)
                assert left == right
                checked += 1
    assert checked > 20
