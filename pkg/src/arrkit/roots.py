"""Classical positive root systems, the root poset and its upper ideals.

Conventions follow Bourbaki.  For type D_n the simple roots are
``e_i - e_{i+1}`` (i < n) and ``e_{n-1} + e_n``; in the stacked diagram
labels used in the literature the upper fork entry is the coefficient of
``e_{n-1} - e_n`` and the lower one that of ``e_{n-1} + e_n``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from . import config, exact
from .arrangement import Arrangement, ArrangementError, Hyperplane
from .lattice import Flat, flat_from_subspace, flat_of


class RootError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Root:
    e_coords: tuple[int, ...]
    simple_coords: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.simple_coords)

    @property
    def name(self) -> str:
        return e_notation(self.e_coords)

    def __str__(self) -> str:
        return self.name


def e_notation(v: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(v):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(("-" if c < 0 else "+", f"{mag}e{i + 1}"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return out + "".join(s + t for s, t in parts[1:])


def _unit(dim: int, i: int, c: int = 1) -> list[int]:
    v = [0] * dim
    v[i] = c
    return v


def _simple_roots(kind: str, n: int) -> list[tuple[int, ...]]:
    if kind == "A":
        dim = n + 1
        return [tuple(a - b for a, b in zip(_unit(dim, i), _unit(dim, i + 1))) for i in range(n)]
    dim = n
    out = [tuple(a - b for a, b in zip(_unit(dim, i), _unit(dim, i + 1))) for i in range(n - 1)]
    if kind == "B":
        out.append(tuple(_unit(dim, n - 1)))
    elif kind == "C":
        out.append(tuple(_unit(dim, n - 1, 2)))
    elif kind == "D":
        out.append(tuple(a + b for a, b in zip(_unit(dim, n - 2), _unit(dim, n - 1))))
    return out


def _positive_e_coords(kind: str, n: int) -> list[tuple[int, ...]]:
    if kind == "A":
        dim = n + 1
        return [tuple(a - b for a, b in zip(_unit(dim, i), _unit(dim, j)))
                for i, j in combinations(range(dim), 2)]
    out = []
    for i, j in combinations(range(n), 2):
        out.append(tuple(a - b for a, b in zip(_unit(n, i), _unit(n, j))))
        out.append(tuple(a + b for a, b in zip(_unit(n, i), _unit(n, j))))
    if kind == "B":
        out += [tuple(_unit(n, i)) for i in range(n)]
    elif kind == "C":
        out += [tuple(_unit(n, i, 2)) for i in range(n)]
    return out


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


class RootSystem:
    """Positive roots of type A_n, B_n, C_n or D_n."""

    def __init__(self, kind: str, n: int):
        kind = kind.upper()
        if kind not in _MIN_RANK:
            raise RootError(f"unsupported type {kind!r}")
        if n < _MIN_RANK[kind]:
            raise RootError(f"type {kind} needs rank at least {_MIN_RANK[kind]}")
        self.kind = kind
        self.n = n
        self.simple = _simple_roots(kind, n)
        self.ambient_dim = len(self.simple[0])
        cols = [list(c) for c in zip(*self.simple)]  # ambient_dim x n
        roots = []
        for e in _positive_e_coords(kind, n):
            x = exact.solve(cols, e)
            if x is None or any(c.denominator != 1 or c < 0 for c in x):
                raise AssertionError(f"{e} is not a nonnegative integral combination of simple roots")
            roots.append(Root(e, tuple(int(c) for c in x)))
        self.positive_roots: tuple[Root, ...] = tuple(roots)
        self._by_e = {r.e_coords: r for r in roots}
        self._by_simple = {r.simple_coords: r for r in roots}

    def __repr__(self) -> str:
        return f"RootSystem({self.kind}{self.n})"

    def __len__(self) -> int:
        return len(self.positive_roots)

    def __iter__(self):
        return iter(self.positive_roots)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self) -> int:
        return hash((self.kind, self.n))

    def by_e(self, v: Sequence[int]) -> Root:
        try:
            return self._by_e[tuple(v)]
        except KeyError:
            raise RootError(f"{e_notation(v)} is not a positive root of {self.kind}{self.n}") from None

    def by_simple(self, c: Sequence[int]) -> Root:
        try:
            return self._by_simple[tuple(c)]
        except KeyError:
            raise RootError(f"coefficients {list(c)} do not give a positive root of {self.kind}{self.n}") from None

    def root(self, spec) -> Root:
        """Accept a Root, e-notation text, a coefficient list or text like '0,1,2,1,1'."""
        if isinstance(spec, Root):
            if spec.e_coords not in self._by_e:
                raise RootError(f"{spec} is not a root of {self!r}")
            return spec
        if isinstance(spec, str):
            s = spec.replace(" ", "")
            if re.fullmatch(r"-?\d+(,-?\d+)*", s):
                return self.by_simple([int(x) for x in s.split(",")])
            return self.by_e(parse_e_notation(s, self.ambient_dim))
        return self.by_simple([int(x) for x in spec])

    def highest_root(self) -> Root:
        return max(self.positive_roots, key=lambda r: r.height)

    def leq(self, alpha: Root, beta: Root) -> bool:
        return root_leq(alpha, beta)

    @cached_property
    def upper_covers(self) -> dict[Root, tuple[Root, ...]]:
        out = {}
        for a in self.positive_roots:
            above = [b for b in self.positive_roots if b != a and root_leq(a, b)]
            out[a] = tuple(b for b in above if b.height == a.height + 1)
        return out

    def add(self, alpha: Root, beta: Root) -> Root | None:
        s = tuple(x + y for x, y in zip(alpha.e_coords, beta.e_coords))
        return self._by_e.get(s)


def parse_e_notation(text: str, dim: int) -> tuple[int, ...]:
    s = text.replace(" ", "")
    if not s:
        raise RootError("empty root")
    if s[0] not in "+-":
        s = "+" + s
    terms = re.findall(r"([+-])(\d*)e(\d+)", s)
    if "".join(f"{a}{b}e{c}" for a, b, c in terms) != s:
        raise RootError(f"cannot parse root {text!r}")
    v = [0] * dim
    for sign, mag, idx in terms:
        k = int(idx) - 1
        if not 0 <= k < dim:
            raise RootError(f"index e{idx} out of range")
        v[k] += (-1 if sign == "-" else 1) * (int(mag) if mag else 1)
    return tuple(v)


def positive_roots(kind: str, n: int) -> list[Root]:
    return list(RootSystem(kind, n).positive_roots)


def root_leq(alpha: Root, beta: Root) -> bool:
    """alpha precedes beta iff beta - alpha has nonnegative simple coordinates."""
    if len(alpha.simple_coords) != len(beta.simple_coords):
        raise RootError("roots from different systems")
    return all(b >= a for a, b in zip(alpha.simple_coords, beta.simple_coords))


@dataclass(frozen=True)
class RootIdeal:
    system: RootSystem
    members: frozenset

    @cached_property
    def generators(self) -> tuple[Root, ...]:
        gens = [a for a in self.members
                if not any(b != a and root_leq(b, a) for b in self.members)]
        return tuple(sorted(gens, key=self.system.positive_roots.index))

    @property
    def complement(self) -> tuple[Root, ...]:
        return tuple(r for r in self.system.positive_roots if r not in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, r) -> bool:
        return r in self.members

    def generator_names(self) -> list[str]:
        return [g.name for g in self.generators]

    def to_json(self) -> dict:
        return {"type": self.system.kind, "n": self.system.n,
                "generators": [list(g.simple_coords) for g in self.generators]}


def ideal_from_generators(rs: RootSystem, gens: Iterable) -> RootIdeal:
    gs = [rs.root(g) for g in gens]
    members = frozenset(b for b in rs.positive_roots if any(root_leq(g, b) for g in gs))
    return RootIdeal(rs, members)


def additive_closure(rs: RootSystem, gens: Iterable) -> frozenset:
    """Close under: alpha in I, beta positive, alpha + beta a root => in I."""
    members = set(rs.root(g) for g in gens)
    todo = list(members)
    while todo:
        a = todo.pop()
        for b in rs.positive_roots:
            c = rs.add(a, b)
            if c is not None and c not in members:
                members.add(c)
                todo.append(c)
    return frozenset(members)


def ideal_from_spec(spec: dict) -> RootIdeal:
    """Parse ``{"type": "D", "n": 5, "generators": [[0,1,1,1,1], "e1+e4"]}``."""
    try:
        rs = RootSystem(str(spec.get("type", "D")), int(spec["n"]))
        gens = spec.get("generators", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise RootError(f"malformed ideal spec: {exc}") from exc
    return ideal_from_generators(rs, gens)


def ideal_arrangement(rs: RootSystem, ideal: RootIdeal | None = None) -> Arrangement:
    """Hyperplanes orthogonal to the positive roots outside the ideal."""
    members = ideal.members if ideal is not None else frozenset()
    hs = [Hyperplane.from_normal(r.e_coords, r.name) for r in rs.positive_roots if r not in members]
    return Arrangement(rs.ambient_dim, hs)


def weyl_arrangement(kind: str, n: int) -> Arrangement:
    return ideal_arrangement(RootSystem(kind, n))


def family_ideal(kind: str, n: int, s: int | None = None, t: int | None = None) -> RootIdeal:
    """Ideals of D_n generated by e_1+e_{n-1} (kind 'i') or additionally e_s+e_t (kind 'ii')."""
    if n < 4:
        raise RootError("the family needs n >= 4")
    rs = RootSystem("D", n)
    gens = [f"e1+e{n - 1}"]
    if kind == "i":
        if s is not None or t is not None:
            raise RootError("kind 'i' takes no (s, t)")
    elif kind == "ii":
        if s is None or t is None or not 1 < s < t < n - 1:
            raise RootError(f"kind 'ii' needs 1 < s < t < n-1, got s={s}, t={t}, n={n}")
        gens.append(f"e{s}+e{t}")
    else:
        raise RootError(f"unknown family kind {kind!r}")
    return ideal_from_generators(rs, gens)


def family_pairs(n: int) -> list[tuple[int, int]]:
    return [(s, t) for s in range(2, n - 1) for t in range(s + 1, n - 1)]


def diagonal_flat(a: Arrangement, n: int, first: int = 2, last: int | None = None) -> Flat:
    """The flat x_first = ... = x_last (1-based; last defaults to n-1)."""
    last = n - 1 if last is None else last
    if a.ambient_dim != n:
        raise ArrangementError("arrangement dimension differs from n")
    idxs = []
    for i, j in combinations(range(first - 1, last), 2):
        normal = tuple(1 if k == i else -1 if k == j else 0 for k in range(n))
        if normal not in a:
            raise ArrangementError(f"x{i + 1}-x{j + 1} is not a hyperplane of the arrangement")
        idxs.append(a.index(normal))
    if not idxs:
        raise ArrangementError("the diagonal flat needs at least two coordinates")
    return flat_of(a, idxs)


def coordinate_flat(a: Arrangement, coords: Iterable[int]) -> Flat:
    """The subspace where the listed coordinates (1-based) vanish, as a flat of ``a``.

    Raises NotAFlat when the hyperplanes containing it cut out more.
    """
    cs = sorted(set(c - 1 for c in coords))
    forms = [_unit(a.ambient_dim, c) for c in cs]
    return flat_from_subspace(a, exact.Subspace.kernel(forms, a.ambient_dim))


def enumerate_ideals(rs: RootSystem, bound: int | None = None) -> Iterator[RootIdeal]:
    """Every upper ideal once: the empty ideal first, all of the roots last.

    Roots are decided from the top of the poset down; a root may join only
    when all of its upper covers already have, and exclusion is tried
    before inclusion.
    """
    bound = config.IDEAL_ROOT_BOUND if bound is None else bound
    if len(rs) > bound:
        raise RootError(f"{len(rs)} positive roots exceed the enumeration bound {bound}")
    order = sorted(rs.positive_roots, key=lambda r: (-r.height, rs.positive_roots.index(r)))
    covers = rs.upper_covers

    def walk(k: int, current: frozenset):
        if k == len(order):
            yield RootIdeal(rs, current)
            return
        r = order[k]
        yield from walk(k + 1, current)
        if all(c in current for c in covers[r]):
            yield from walk(k + 1, current | {r})

    yield from walk(0, frozenset())


def fork_swap(ideal: RootIdeal) -> RootIdeal:
    """Image under the D_n diagram automorphism exchanging the two fork nodes."""
    rs = ideal.system
    if rs.kind != "D":
        raise RootError("the fork automorphism exists for type D only")

    def swap(r: Root) -> Root:
        c = list(r.simple_coords)
        c[-1], c[-2] = c[-2], c[-1]
        return rs.by_simple(c)

    return RootIdeal(rs, frozenset(swap(r) for r in ideal.members))
