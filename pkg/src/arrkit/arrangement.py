"""Central hyperplane arrangements over Q.

A hyperplane is stored by its canonical normal: coprime integers with the
first nonzero entry positive.  Two hyperplanes are equal iff their
canonical normals agree; labels are carried along but never compared.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import exact
from .exact import Subspace
from .kernels import rank_of


class ArrangementError(ValueError):
    pass


class NotAFlat(ArrangementError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple[int, ...]
    label: str | None = field(default=None, compare=False)
    parents: tuple[int, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_normal(cls, normal: Sequence, label: str | None = None, parents=()) -> "Hyperplane":
        return cls(exact.primitive_integer(normal), label, tuple(parents))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def evaluate(self, v: Sequence) -> Fraction:
        return exact.dot(self.normal, exact.vector(v))

    def form(self, names: Sequence[str] | None = None) -> str:
        return linear_form_str(self.normal, names)


def default_names(dim: int) -> list[str]:
    if dim <= 3:
        return ["x", "y", "z"][:dim]
    return [f"x{i + 1}" for i in range(dim)]


def linear_form_str(normal: Sequence[int], names: Sequence[str] | None = None) -> str:
    names = list(names) if names is not None else default_names(len(normal))
    parts = []
    for c, name in zip(normal, names):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        term = name if mag == 1 else f"{mag}{name}"
        parts.append((sign, term))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, term in parts[1:]:
        out += sign + term
    return out


class Arrangement:
    """An ordered, duplicate-free list of hyperplanes through the origin.

    Building from normals that contain proportional pairs keeps the first
    occurrence and sets :attr:`degenerate`; this mirrors families whose
    members collide at special parameter values.
    """

    def __init__(self, ambient_dim: int, hyperplanes: Iterable[Hyperplane] = ()):
        if ambient_dim < 1:
            raise ArrangementError("ambient dimension must be positive")
        self.ambient_dim = ambient_dim
        hs: list[Hyperplane] = []
        seen: set[tuple[int, ...]] = set()
        self.degenerate = False
        for h in hyperplanes:
            if h.dim != ambient_dim:
                raise ArrangementError(f"normal {h.normal} has length {h.dim}, expected {ambient_dim}")
            if h.normal in seen:
                self.degenerate = True
                continue
            seen.add(h.normal)
            hs.append(h)
        self.hyperplanes: tuple[Hyperplane, ...] = tuple(hs)
        self._index = {h.normal: i for i, h in enumerate(hs)}

    @classmethod
    def from_normals(cls, normals: Iterable[Sequence], labels: Iterable[str | None] | None = None,
                     dim: int | None = None) -> "Arrangement":
        normals = [exact.vector(v) for v in normals]
        if dim is None:
            if not normals:
                raise ArrangementError("dimension required for an empty arrangement")
            dim = len(normals[0])
        labels = list(labels) if labels is not None else [None] * len(normals)
        hs = []
        for v, lab in zip(normals, labels):
            if all(x == 0 for x in v):
                raise ArrangementError("zero normal does not define a hyperplane")
            hs.append(Hyperplane.from_normal(v, lab))
        arr = cls(dim, hs)
        if arr.degenerate:
            warnings.warn("proportional normals merged", stacklevel=2)
        return arr

    # container protocol
    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __getitem__(self, i: int) -> Hyperplane:
        return self.hyperplanes[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.normal_set() == other.normal_set()

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.normal_set()))

    def __repr__(self) -> str:
        return f"Arrangement(dim={self.ambient_dim}, Q={self.polynomial_str()})"

    @property
    def normals(self) -> list[tuple[int, ...]]:
        return [h.normal for h in self.hyperplanes]

    def normal_set(self) -> frozenset:
        return frozenset(self.normals)

    def index(self, normal: Sequence) -> int:
        return self._index[exact.primitive_integer(normal)]

    def __contains__(self, normal) -> bool:
        if isinstance(normal, Hyperplane):
            normal = normal.normal
        try:
            return exact.primitive_integer(normal) in self._index
        except ValueError:
            return False

    @property
    def rank(self) -> int:
        return rank_of(self.normals, range(len(self))) if len(self) else 0

    def rank_of(self, idxs: Iterable[int]) -> int:
        return rank_of(self.normals, list(idxs))

    def center(self) -> Subspace:
        return Subspace.kernel(self.normals, self.ambient_dim)

    def is_essential(self) -> bool:
        return self.rank == self.ambient_dim

    def polynomial_str(self, names: Sequence[str] | None = None) -> str:
        if not self.hyperplanes:
            return "1"
        return "".join(f"({h.form(names)})" for h in self.hyperplanes)

    def subarrangement(self, idxs: Iterable[int]) -> "Arrangement":
        return Arrangement(self.ambient_dim, [self.hyperplanes[i] for i in sorted(set(idxs))])

    def deletion(self, i: int) -> "Arrangement":
        return self.subarrangement(j for j in range(len(self)) if j != i)

    # serialization
    def to_json(self) -> dict:
        return {
            "dim": self.ambient_dim,
            "hyperplanes": [
                {"normal": [str(x) for x in h.normal], **({"label": h.label} if h.label else {})}
                for h in self.hyperplanes
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        try:
            dim = int(data["dim"])
            entries = data["hyperplanes"]
            normals = [[exact.as_rational(x) for x in e["normal"]] for e in entries]
            labels = [e.get("label") for e in entries]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ArrangementError(f"malformed arrangement document: {exc}") from exc
        return cls.from_normals(normals, labels, dim=dim)

    @classmethod
    def loads(cls, text: str) -> "Arrangement":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ArrangementError(f"invalid JSON: {exc}") from exc
        return cls.from_json(data)

    @classmethod
    def load(cls, path) -> "Arrangement":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())


def _subspace_of(x) -> Subspace:
    if isinstance(x, Subspace):
        return x
    sub = getattr(x, "subspace", None)
    if isinstance(sub, Subspace):
        return sub
    raise TypeError(f"expected a Flat or Subspace, got {type(x).__name__}")


def localization_indices(a: Arrangement, x) -> tuple[int, ...]:
    """Indices of the hyperplanes containing ``x``."""
    sub = _subspace_of(x)
    if sub.ambient_dim != a.ambient_dim:
        raise exact.DimensionMismatch("flat and arrangement live in different spaces")
    return tuple(i for i, h in enumerate(a.hyperplanes)
                 if all(exact.dot(h.normal, b) == 0 for b in sub.basis))


def check_flat(a: Arrangement, x) -> tuple[int, ...]:
    """Localization of ``x``, raising NotAFlat unless ``x`` lies in L(a)."""
    sub = _subspace_of(x)
    loc = localization_indices(a, sub)
    if Subspace.kernel([a[i].normal for i in loc], a.ambient_dim) != sub:
        raise NotAFlat("subspace is not an intersection of hyperplanes of the arrangement")
    return loc


def localize(a: Arrangement, x) -> Arrangement:
    return a.subarrangement(check_flat(a, x))


def restrict(a: Arrangement, x) -> tuple[Arrangement, exact.RatMatrix]:
    """Restriction to the flat ``x`` in the coordinates of its RREF basis.

    Returns the restricted arrangement and the chart (rows = basis of x).
    Traces of several parent hyperplanes are merged; the merged hyperplane
    keeps the parent indices in ``parents`` and joins their labels.
    """
    sub = _subspace_of(x)
    loc = set(check_flat(a, sub))
    if sub.dim == a.ambient_dim:
        raise ArrangementError("restriction to the whole space is not a proper restriction")
    chart = sub.basis
    traces: dict[tuple[int, ...], list[int]] = {}
    for i, h in enumerate(a.hyperplanes):
        if i in loc:
            continue
        coords = [exact.dot(h.normal, b) for b in chart]
        traces.setdefault(exact.primitive_integer(coords), []).append(i)
    hs = []
    for normal, parents in traces.items():
        labels = [a[i].label or a[i].form() for i in parents]
        hs.append(Hyperplane(normal, "|".join(labels), tuple(parents)))
    return Arrangement(sub.dim, hs), chart


def restrict_in_chart(a: Arrangement, x, chart: Sequence[Sequence]) -> Arrangement:
    """Restriction expressed in a caller-supplied basis of ``x``."""
    sub = _subspace_of(x)
    loc = set(check_flat(a, sub))
    if exact.Subspace.span(chart, a.ambient_dim) != sub or len(chart) != sub.dim:
        raise ArrangementError("chart rows are not a basis of the flat")
    hs = []
    for i, h in enumerate(a.hyperplanes):
        if i not in loc:
            coords = [exact.dot(h.normal, b) for b in chart]
            hs.append(Hyperplane.from_normal(coords, h.label, (i,)))
    return Arrangement(sub.dim, hs)


def essentialize(a: Arrangement) -> tuple[Arrangement, tuple[int, ...]]:
    """Quotient by the center.

    The new coordinates are the pivot entries of the RREF basis of the row
    space of the normals; the pivot columns are returned alongside.
    """
    if not len(a):
        raise ArrangementError("the empty arrangement has no essentialization")
    red, _ = exact.rref(a.normals)
    piv = tuple(exact.pivots(red))
    hs = []
    for h in a.hyperplanes:
        # RREF rows are 1 at their own pivot and 0 at the others
        coords = [h.normal[p] for p in piv]
        hs.append(Hyperplane.from_normal(coords, h.label, h.parents))
    return Arrangement(len(piv), hs), piv


def apply_linear_map(a: Arrangement, m: Sequence[Sequence]) -> Arrangement:
    """Pull each ``ker(alpha)`` back along ``m``: the new normal is ``alpha * m``."""
    m = exact.matrix(m)
    if len(m) != a.ambient_dim or any(len(r) != a.ambient_dim for r in m):
        raise exact.DimensionMismatch("map must be square of the ambient size")
    if exact.rank(m) < a.ambient_dim:
        raise ArrangementError("singular matrix")
    hs = []
    for h in a.hyperplanes:
        new = [sum((h.normal[i] * m[i][j] for i in range(a.ambient_dim)), Fraction(0))
               for j in range(a.ambient_dim)]
        hs.append(Hyperplane.from_normal(new, h.label, h.parents))
    out = Arrangement(a.ambient_dim, hs)
    assert len(out) == len(a), "invertible map merged hyperplanes"
    return out


def is_generic(a: Arrangement) -> bool:
    ell = a.ambient_dim
    if len(a) < ell + 1:
        return False
    return all(a.rank_of(s) == ell for s in combinations(range(len(a)), ell))


def boolean(dim: int) -> Arrangement:
    return Arrangement.from_normals(
        [[int(i == j) for j in range(dim)] for i in range(dim)], dim=dim)
