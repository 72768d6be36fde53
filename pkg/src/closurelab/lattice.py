"""Constructions that depend on the integer lattice: splits, lattice-free
checks, Chvatal cuts, mixed-integer hulls and unimodular maps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import (
    EmptyPolyhedron,
    NotFullDimensional,
    NotPrimitive,
    NotUnimodular,
    Unbounded,
    UnboundedDirection,
    Undecidable,
    ValidationError,
)
from .numeric import (
    INF,
    ceil_fraction,
    det,
    dot,
    floor_fraction,
    int_gcd,
    inverse,
    lex_positive,
    matvec,
    to_fraction,
    transpose,
)
from .polyhedra import Polyhedron, support


def _int_vector(u: Sequence) -> tuple:
    out = []
    for x in u:
        f = to_fraction(x)
        if f.denominator != 1:
            raise NotPrimitive(f"{tuple(u)} is not an integer vector")
        out.append(int(f))
    return tuple(out)


def _require_primitive(u: Sequence) -> tuple:
    u = _int_vector(u)
    if int_gcd(u) != 1:
        raise NotPrimitive(f"{u} is not primitive (gcd {int_gcd(u)})")
    return u


@dataclass(frozen=True)
class Split:
    """The slab ``{x : i <= <x, u> <= i + 1}`` for primitive integer ``u``."""

    u: tuple
    i: int

    def __post_init__(self):
        object.__setattr__(self, "u", _require_primitive(self.u))
        object.__setattr__(self, "i", int(self.i))

    def polyhedron(self) -> Polyhedron:
        return make_split(self.u, self.i)


def make_split(u: Sequence, i: int) -> Polyhedron:
    u = _require_primitive(u)
    return Polyhedron.from_h(len(u), [(u, i + 1), (tuple(-x for x in u), -i)])


def primitive_directions(dim: int, norm_bound: int, lex_positive_only: bool = True) -> list:
    """Primitive integer vectors with sup-norm at most ``norm_bound``,
    ordered by sup-norm and then lexicographically."""
    out = []
    for u in product(range(-norm_bound, norm_bound + 1), repeat=dim):
        if not any(u) or int_gcd(u) != 1:
            continue
        if lex_positive_only and not lex_positive(u):
            continue
        out.append(u)
    out.sort(key=lambda u: (max(abs(x) for x in u), tuple(-x for x in u)))
    return out


def enumerate_splits(P: Polyhedron, norm_bound: int) -> list:
    """Splits with ``|u|_inf <= norm_bound`` whose open slab meets ``P``."""
    if P.is_empty:
        raise EmptyPolyhedron("no splits for the empty set")
    splits = []
    for u in primitive_directions(P.dim, norm_bound):
        hi = support(P, u)
        lo = support(P, tuple(-x for x in u))
        if hi is INF or lo is INF:
            raise UnboundedDirection(f"P is unbounded along {u}")
        lo = -lo
        for i in range(floor_fraction(lo), ceil_fraction(hi)):
            if i < hi and i + 1 > lo:
                splits.append(Split(u, i))
    return splits


def _box(points: Sequence, shifts: Sequence = ()) -> list:
    d = len(points[0])
    ranges = []
    for j in range(d):
        lo = min(p[j] for p in points) + sum(min(0, s[j]) for s in shifts)
        hi = max(p[j] for p in points) + sum(max(0, s[j]) for s in shifts)
        ranges.append(range(ceil_fraction(Fraction(lo)), floor_fraction(Fraction(hi)) + 1))
    return ranges


def integer_points(P: Polyhedron) -> list:
    if not P.is_bounded:
        raise Unbounded("integer points of an unbounded polyhedron")
    if P.is_empty:
        return []
    return [z for z in product(*_box(P.vertices)) if P.contains(z)]


def _check_decidable(L: Polyhedron) -> None:
    if not L.is_full_dimensional:
        raise NotFullDimensional("lattice-freeness is defined for full-dimensional sets")
    if L.rays:
        raise Undecidable("recession cone is not a linear space; no bounded base to scan")


def _search_region(points, L: Polyhedron) -> list:
    # integer points in L can be shifted by lattice vectors of lineal(L) into
    # conv(points) + sum of [0, 1] * line
    return _box(points, L.lines)


def is_lattice_free(L: Polyhedron) -> bool:
    """True iff no integer point lies in the interior of ``L``."""
    _check_decidable(L)
    return not any(L.in_interior(z) for z in product(*_search_region(L.vertices, L)))


def _facet_has_relint_point(L: Polyhedron, idx: int) -> bool:
    a, alpha = L.constraints[idx]
    others = [c for j, c in enumerate(L.constraints) if j != idx]
    facet_vertices = [v for v in L.vertices if dot(a, v) == alpha]
    for z in product(*_search_region(facet_vertices, L)):
        if dot(a, z) == alpha and all(dot(b, z) < beta for b, beta in others):
            return True
    return False


def is_maximal_lattice_free(L: Polyhedron) -> bool:
    """Lattice-free, and every facet has an integer point in its relative interior."""
    if not is_lattice_free(L):
        return False
    return all(_facet_has_relint_point(L, i) for i in range(len(L.constraints)))


def chvatal_cut(P: Polyhedron, u: Sequence) -> tuple:
    """The inequality ``<x, u> <= floor(h(P, u))`` as ``(u, rhs)``."""
    u = _require_primitive(u)
    h = support(P, u)
    if h is INF:
        raise UnboundedDirection(f"h(P, {u}) is infinite")
    return (u, Fraction(floor_fraction(h)))


def anchored_split(P: Polyhedron, u: Sequence) -> Split:
    """The split ``floor(h) <= <x, u> <= floor(h) + 1`` whose reduction of P is the Chvatal cut."""
    u, rhs = chvatal_cut(P, u)
    return Split(u, int(rhs))


def chvatal_closure_bounded(P: Polyhedron, norm_bound: int) -> Polyhedron:
    """P cut by every Chvatal cut with ``|u|_inf <= norm_bound``.

    A relaxation of the Chvatal closure: exact only when the bound already
    captures every facet of the closure.
    """
    if not P.is_bounded:
        raise Unbounded("bounded Chvatal closure needs a polytope")
    if P.is_empty or norm_bound <= 0:
        return P
    cuts = [chvatal_cut(P, u) for u in primitive_directions(P.dim, norm_bound, lex_positive_only=False)]
    return Polyhedron.from_h(P.dim, list(P.constraints) + cuts)


@dataclass(frozen=True)
class MixedIntegerSpace:
    """``Z^m x R^n``: the first ``m`` coordinates are integral."""

    m: int
    n: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 0:
            raise ValidationError(f"invalid mixed-integer space m={self.m}, n={self.n}")

    @property
    def dim(self) -> int:
        return self.m + self.n

    def contains(self, x: Sequence) -> bool:
        return all(to_fraction(c).denominator == 1 for c in x[: self.m])


def mixed_integer_hull(P: Polyhedron, space: MixedIntegerSpace) -> Polyhedron:
    """``conv(P cap (Z^m x R^n))`` for a polytope ``P``, by slicing."""
    if space.dim != P.dim:
        raise ValidationError(f"space has dimension {space.dim}, P has {P.dim}")
    if not P.is_bounded:
        raise Unbounded("mixed-integer hull is implemented for polytopes only")
    if P.is_empty:
        return P
    d = P.dim
    ranges = []
    for j in range(space.m):
        e = tuple(int(i == j) for i in range(d))
        hi = support(P, e)
        lo = -support(P, tuple(-x for x in e))
        ranges.append(range(ceil_fraction(lo), floor_fraction(hi) + 1))
    points = []
    for z in product(*ranges):
        eqs = []
        for j, zj in enumerate(z):
            e = tuple(int(i == j) for i in range(d))
            eqs.append((e, zj))
            eqs.append((tuple(-x for x in e), -zj))
        piece = Polyhedron.from_h(d, list(P.constraints) + eqs)
        points.extend(piece.vertices)
    if not points:
        return Polyhedron.empty(d)
    return Polyhedron.from_v(d, points)


@dataclass(frozen=True)
class UnimodularMap:
    """``x -> U x + shift`` with ``U`` integral and ``|det U| = 1``."""

    U: tuple
    shift: tuple

    def __post_init__(self):
        try:
            U = tuple(tuple(_int_vector(row)) for row in self.U)
            shift = _int_vector(self.shift)
        except NotPrimitive as exc:
            raise NotUnimodular(str(exc)) from None
        if any(len(row) != len(U) for row in U) or len(shift) != len(U):
            raise NotUnimodular("U must be square and match the shift")
        if abs(det(U)) != 1:
            raise NotUnimodular(f"det U = {det(U)}")
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "shift", shift)

    def __call__(self, x: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(matvec(self.U, x), self.shift))

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """``self after other``."""
        U = tuple(tuple(dot(row, col) for col in transpose(other.U)) for row in self.U)
        return UnimodularMap(U, self(other.shift))


def apply_unimodular(P: Polyhedron, A: UnimodularMap) -> Polyhedron:
    """Image of ``P`` under ``A``; normals move by the inverse transpose."""
    if P.dim != len(A.U):
        raise ValidationError("map and polyhedron dimensions differ")
    if P.is_empty:
        return P
    inv_t = transpose(inverse(A.U))
    cons = []
    for a, alpha in P.constraints:
        b = matvec(inv_t, a)
        cons.append((b, alpha + dot(b, A.shift)))
    return Polyhedron.from_h(P.dim, cons)
