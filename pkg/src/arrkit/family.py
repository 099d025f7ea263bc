"""One-parameter families of arrangements and the triangle family.

The triangle family is ``x, y, z, x+y, x+z, y+t z``.  Its lattice is
constant for t outside {0, -1}, and for real t < 0 the real picture has a
triangular chamber whose vertices are double points.  Any rank-3
arrangement with the same lattice is a linear image of some member, which
gives an exact certificate that it sits in the same lattice-isotopy class
as those members.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import sympy

from . import config, exact
from .arrangement import Arrangement, Hyperplane, apply_linear_map
from .chambers import TriangleWitness, find_simple_triangle
from .lattice import lattice_isomorphic

T = sympy.Symbol("t")


class DegreeBoundExceeded(ValueError):
    pass


def _entry(x) -> sympy.Expr:
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, str):
        return sympy.sympify(x, locals={"t": T})
    return sympy.sympify(x)


class ParamArrangement:
    """Normals whose entries are polynomials in ``t`` over Q."""

    def __init__(self, ambient_dim: int, normals: Sequence[Sequence], labels: Sequence[str] | None = None):
        self.ambient_dim = ambient_dim
        self.normals = [tuple(sympy.expand(_entry(x)) for x in v) for v in normals]
        self.labels = list(labels) if labels is not None else [None] * len(self.normals)
        for v in self.normals:
            if len(v) != ambient_dim:
                raise ValueError("normal length differs from ambient dimension")
            if all(x == 0 for x in v):
                raise ValueError("normal is identically zero")
            for x in v:
                if not x.free_symbols <= {T}:
                    raise ValueError(f"entry {x} involves symbols other than t")

    def degree(self) -> int:
        return max(sympy.Poly(x, T).degree() if x != 0 else 0 for v in self.normals for x in v)

    def at(self, value) -> Arrangement:
        val = _entry(value)
        hs = []
        for v, label in zip(self.normals, self.labels):
            row = [x.subs(T, val) for x in v]
            if all(e == 0 for e in row):
                raise ValueError(f"normal vanishes at t = {value}")
            hs.append(Hyperplane.from_normal(
                [Fraction(int(sympy.numer(e)), int(sympy.denom(e))) for e in row], label))
        # members at exceptional values may merge hyperplanes; the result records it
        return Arrangement(self.ambient_dim, hs)


@dataclass(frozen=True)
class ExceptionalSet:
    rational: frozenset
    other_factors: tuple[str, ...]

    def __contains__(self, value) -> bool:
        return Fraction(value) in self.rational


def exceptional_parameters(p: ParamArrangement, degree_bound: int | None = None) -> ExceptionalSet:
    """Parameter values where some subset of normals drops below its generic rank.

    A subset that drops rank contains a generically independent subset of
    size equal to its generic rank that drops too, so it suffices to take,
    for every generically independent subset S, the common roots of its
    maximal minors, i.e. the roots of their gcd.
    """
    bound = config.PARAM_DEGREE_BOUND if degree_bound is None else degree_bound
    if p.degree() > bound:
        raise DegreeBoundExceeded(f"entry degree {p.degree()} exceeds {bound}")
    ell = p.ambient_dim
    rational: set[Fraction] = set()
    others: set[str] = set()
    for k in range(1, min(ell, len(p.normals)) + 1):
        for subset in combinations(range(len(p.normals)), k):
            m = sympy.Matrix([p.normals[i] for i in subset])
            minors = []
            for cols in combinations(range(ell), k):
                d = sympy.expand(m.extract(list(range(k)), list(cols)).det())
                if d != 0:
                    minors.append(sympy.Poly(d, T, domain="QQ"))
            if not minors:
                continue
            g = minors[0]
            for q in minors[1:]:
                g = sympy.gcd(g, q)
            if g.degree() <= 0:
                continue
            _, factors = sympy.factor_list(g.as_expr(), T)
            for f, _mult in factors:
                fp = sympy.Poly(f, T, domain="QQ")
                if fp.degree() == 1:
                    a, b = fp.all_coeffs()
                    root = -sympy.Rational(b) / sympy.Rational(a)
                    rational.add(Fraction(int(root.p), int(root.q)))
                elif fp.degree() > 1:
                    others.add(str(fp.monic().as_expr()))
    return ExceptionalSet(frozenset(rational), tuple(sorted(others)))


def triangle_family() -> ParamArrangement:
    return ParamArrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, "t")],
                            ["x", "y", "z", "x+y", "x+z", "y+tz"])


def triangle_member(t) -> Arrangement:
    """The member at a rational parameter value, with family labels."""
    return triangle_family().at(Fraction(t))


REFERENCE_PARAMETER = Fraction(-2)


@dataclass(frozen=True)
class TriangleCertificate:
    """The arrangement equals ``apply_linear_map(member(parameter), matrix)``.

    Together with ``reference_witness`` (a simple triangle of the member at
    the reference parameter) and the exceptional set of the family, this
    places the arrangement in the lattice-isotopy class of an arrangement
    carrying a simple triangle.
    """

    parameter: Fraction
    matrix: tuple[tuple[Fraction, ...], ...]
    correspondence: tuple[int, ...]
    reference_parameter: Fraction
    reference_witness: TriangleWitness

    def to_json(self) -> dict:
        return {
            "parameter": str(self.parameter),
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "correspondence": list(self.correspondence),
            "reference_parameter": str(self.reference_parameter),
            "reference_witness": self.reference_witness.to_json(),
        }


def _proportional_combo(u, v, w):
    """Solve u + lam*v = mu*w; return lam or None."""
    cols = [[v[i], -w[i]] for i in range(len(u))]
    sol = exact.solve(cols, [-x for x in u])
    return None if sol is None else sol[0]


_REFERENCE_CACHE: dict = {}


def _reference():
    if "ref" not in _REFERENCE_CACHE:
        fam = triangle_family()
        exc = exceptional_parameters(fam)
        ref = fam.at(REFERENCE_PARAMETER)
        _REFERENCE_CACHE["ref"] = (exc, ref, find_simple_triangle(ref))
    return _REFERENCE_CACHE["ref"]


def simple_triangle_certificate(a: Arrangement) -> TriangleCertificate | None:
    """Certificate that ``a`` is a linear image of a generic triangle-family member."""
    if a.ambient_dim != 3 or len(a) != 6 or a.rank != 3:
        return None
    exc, ref, witness = _reference()
    if witness is None or exc.other_factors:
        return None
    sigma = lattice_isomorphic(ref, a)
    if sigma is None:
        return None
    r = [exact.vector(a[sigma[i]].normal) for i in range(6)]
    lam1 = _proportional_combo(r[0], r[1], r[3])
    lam2 = _proportional_combo(r[0], r[2], r[4])
    if lam1 is None or lam2 is None or lam1 == 0 or lam2 == 0:
        return None
    row1 = tuple(lam1 * x for x in r[1])
    row2 = tuple(lam2 * x for x in r[2])
    # row1 + t*row2 must be proportional to r[5]
    sol = exact.solve([[row2[i], -r[5][i]] for i in range(3)], [-x for x in row1])
    if sol is None:
        return None
    t0 = sol[0]
    if t0 in exc:
        return None
    m = (tuple(r[0]), row1, row2)
    if apply_linear_map(triangle_member(t0), m) != a:
        return None
    return TriangleCertificate(t0, m, tuple(sigma[i] for i in range(6)), REFERENCE_PARAMETER, witness)
