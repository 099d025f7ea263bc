from fractions import Fraction

import pytest

from arrkit import apply_linear_map
from arrkit.chambers import find_simple_triangle
from arrkit.family import (DegreeBoundExceeded, ParamArrangement, exceptional_parameters,
                           simple_triangle_certificate, triangle_family, triangle_member)
from arrkit.lattice import lattice_isomorphic

from conftest import triangle_restriction


def test_triangle_family_exceptional_set():
    exc = exceptional_parameters(triangle_family())
    assert exc.rational == {Fraction(0), Fraction(-1)}
    assert exc.other_factors == ()
    assert 0 in exc and Fraction(-1) in exc and 1 not in exc


def test_constant_family_has_no_exceptions():
    exc = exceptional_parameters(ParamArrangement(2, [(1, 0), (0, 1), (1, 1)]))
    assert exc.rational == frozenset() and exc.other_factors == ()


def test_pencil_collapses_at_zero():
    exc = exceptional_parameters(ParamArrangement(2, [(1, 0), (1, "t")]))
    assert exc.rational == {Fraction(0)}


def test_irrational_values_reported_symbolically():
    exc = exceptional_parameters(ParamArrangement(2, [(1, 0), (0, 1), (1, "t**2 - 2")]))
    assert exc.rational == frozenset()
    assert exc.other_factors == ("t**2 - 2",)


def test_rational_roots_of_higher_degree():
    exc = exceptional_parameters(ParamArrangement(2, [(1, 0), (1, "t**2 - 1/4")]))
    assert exc.rational == {Fraction(1, 2), Fraction(-1, 2)}


def test_degree_bound():
    with pytest.raises(DegreeBoundExceeded):
        exceptional_parameters(ParamArrangement(2, [(1, 0), (1, "t**5")]))


def test_bad_normals_rejected():
    with pytest.raises(ValueError):
        ParamArrangement(2, [(0, 0)])
    with pytest.raises(ValueError):
        ParamArrangement(2, [(1, "s")])


def test_members_degenerate_exactly_at_exceptions():
    fam = triangle_family()
    assert fam.at(0).degenerate and len(fam.at(0)) == 5
    assert fam.at(-1).degenerate is False
    # at t = -1 the count survives but a new triple point appears
    assert lattice_isomorphic(fam.at(-1), fam.at(1)) is None
    for t in (Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(-7, 5)):
        assert not fam.at(t).degenerate
        assert lattice_isomorphic(fam.at(t), fam.at(1)) is not None


def test_certificate_for_triangle_restriction():
    tri = triangle_restriction()
    cert = simple_triangle_certificate(tri)
    assert cert is not None
    assert cert.parameter == 1
    assert apply_linear_map(triangle_member(cert.parameter), cert.matrix) == tri
    assert cert.reference_parameter == -2
    assert all(f.size == 2 for f in cert.reference_witness.vertex_flats)


@pytest.mark.parametrize("t", [Fraction(2), Fraction(-3), Fraction(-1, 2), Fraction(5, 7)])
def test_certificate_recovers_parameter_class(t):
    cert = simple_triangle_certificate(triangle_member(t))
    assert cert is not None and cert.parameter not in (0, -1)
    assert apply_linear_map(triangle_member(cert.parameter), cert.matrix) == triangle_member(t)


def test_no_certificate_for_other_lattices(b3):
    assert simple_triangle_certificate(b3) is None
    assert simple_triangle_certificate(triangle_member(-1)) is None


def test_certificate_json():
    d = simple_triangle_certificate(triangle_restriction()).to_json()
    assert d["parameter"] == "1" and d["reference_parameter"] == "-2"
    assert len(d["matrix"]) == 3 and len(d["correspondence"]) == 6


def test_reference_member_has_real_triangle():
    assert find_simple_triangle(triangle_member(-2)) is not None
