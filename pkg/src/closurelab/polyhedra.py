"""Rational polyhedra with paired inequality / generator descriptions.

A :class:`Polyhedron` always carries both descriptions in canonical form:

* the H-representation is irredundant, every normal is a primitive integer
  vector, implicit equations appear as a pair of opposite inequalities, and
  the constraint list is sorted;
* the V-representation lists the lineality space as a canonical primitive
  basis, and vertices and rays projected onto its orthogonal complement.

Canonical forms make equality structural, which the closure iteration relies
on for fixpoint detection.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

from . import dd
from .errors import (
    DimensionLimitExceeded,
    EmptyPolyhedron,
    FullSpace,
    NotFullDimensional,
    NotInterior,
    NotLineFree,
    OriginNotInterior,
    RecessionNotLinear,
    Unbounded,
    ValidationError,
)
from .lp import OPTIMAL, linprog
from .numeric import (
    INF,
    ExtendedRational,
    canonical_basis,
    denominator_lcm,
    det,
    dot,
    ext_add,
    primitive_vector,
    project_onto_complement,
    qvec,
    rank,
    rref,
    solve_affine,
    to_fraction,
    vadd,
    vscale,
    vsub,
)

DEFAULT_MAX_DIM = 6
DEFAULT_MAX_CONSTRAINTS = 64


def max_dim() -> int:
    return int(os.environ.get("CLOSURELAB_MAX_DIM", DEFAULT_MAX_DIM))


def _check_dim(dim: int) -> None:
    if not isinstance(dim, int) or dim < 1:
        raise ValidationError(f"dimension must be a positive integer, got {dim!r}")
    if dim > max_dim():
        raise DimensionLimitExceeded(
            f"dimension {dim} exceeds the limit {max_dim()} (set CLOSURELAB_MAX_DIM to override)"
        )


Constraint = tuple  # (normal: tuple[int, ...], offset: Fraction)


@dataclass(frozen=True)
class HPolyhedron:
    """``{x : <x, a_i> <= alpha_i}``; an empty list is the whole space."""

    dim: int
    constraints: tuple = ()


@dataclass(frozen=True)
class VPolyhedron:
    """``conv(vertices) + cone(rays) + span(lines)``."""

    dim: int
    vertices: tuple = ()
    rays: tuple = ()
    lines: tuple = ()


def normalize_constraint(a: Sequence, alpha) -> Constraint:
    """Scale ``<a, x> <= alpha`` so that ``a`` is a primitive integer vector."""
    a = qvec(a)
    alpha = to_fraction(alpha)
    p = primitive_vector(a)
    i = next(k for k, x in enumerate(a) if x != 0)
    scale = Fraction(p[i]) / a[i]
    return (p, alpha * scale)


def _empty_constraints(dim: int) -> tuple:
    e = tuple(int(i == 0) for i in range(dim))
    return ((tuple(-x for x in e), Fraction(-1)), (e, Fraction(0)))


def h_to_v(H: HPolyhedron) -> VPolyhedron:
    """Generators of an H-described polyhedron (canonical form)."""
    d = H.dim
    rows = [tuple([0] * d + [-1])]
    for a, alpha in sorted(H.constraints):
        a = tuple(int(x) for x in a)
        alpha = to_fraction(alpha)
        s = alpha.denominator
        rows.append(tuple(x * s for x in a) + (-alpha.numerator,))
    lines, rays = dd.cone_generators(rows, d + 1)
    vertices, rec_rays = [], []
    for r in rays:
        t = r[-1]
        if t > 0:
            vertices.append(tuple(Fraction(x, t) for x in r[:-1]))
        else:
            rec_rays.append(r[:-1])
    if not vertices:
        return VPolyhedron(d)
    return _canonical_v(d, vertices, rec_rays, [l[:-1] for l in lines])


def _canonical_v(d: int, vertices, rays, lines) -> VPolyhedron:
    basis = canonical_basis(lines) if lines else ()
    vs = sorted({project_onto_complement(v, basis) for v in vertices})
    rs = set()
    for r in rays:
        pr = project_onto_complement(r, basis)
        if any(pr):
            rs.add(primitive_vector(pr))
    return VPolyhedron(d, tuple(vs), tuple(sorted(rs)), tuple(basis))


def v_to_h(V: VPolyhedron) -> HPolyhedron:
    """Irredundant canonical inequality description of a V-described set."""
    d = V.dim
    if not V.vertices:
        if V.rays or V.lines:
            raise ValidationError("rays or lines without a vertex do not describe a polyhedron")
        return HPolyhedron(d, _empty_constraints(d))
    rows = []
    for v in V.vertices:
        v = qvec(v)
        s = denominator_lcm(v)
        rows.append(tuple(int(x * s) for x in v) + (s,))
    for r in V.rays:
        rows.append(tuple(int(x) for x in primitive_vector(r)) + (0,))
    for l in V.lines:
        l = primitive_vector(l)
        rows.append(tuple(l) + (0,))
        rows.append(tuple(-x for x in l) + (0,))
    rows.sort()
    lines, rays = dd.cone_generators(rows, d + 1)

    constraints = set()
    eq_normals = []
    eq_offsets = []
    if lines:
        red, _ = rref(lines)
        for row in red:
            a = row[:d]
            beta = row[d]
            p = primitive_vector(a)
            i = next(k for k, x in enumerate(a) if x != 0)
            scale = Fraction(p[i]) / a[i]
            alpha = -beta * scale
            eq_normals.append(tuple(Fraction(x) for x in p))
            eq_offsets.append(alpha)
            constraints.add((p, alpha))
            constraints.add((tuple(-x for x in p), -alpha))
    gram = [[dot(a, b) for b in eq_normals] for a in eq_normals]
    for r in rays:
        a = tuple(Fraction(x) for x in r[:d])
        alpha = Fraction(-r[d])
        if eq_normals:
            sol = solve_affine(gram, [dot(e, a) for e in eq_normals])
            for c, e, off in zip(sol.point, eq_normals, eq_offsets):
                a = vsub(a, vscale(c, e))
                alpha -= c * off
        if not any(a):
            continue
        constraints.add(normalize_constraint(a, alpha))
    return HPolyhedron(d, tuple(sorted(constraints)))


class Polyhedron:
    """A rational polyhedron holding canonical H- and V-representations.

    Build instances with :meth:`from_h`, :meth:`from_v`, :meth:`empty` or
    :meth:`full`; the constructor itself is internal.
    """

    __slots__ = ("dim", "hrep", "vrep", "is_empty", "is_bounded", "is_line_free", "affine_dim", "_hash")

    def __init__(self, hrep: HPolyhedron, vrep: VPolyhedron):
        self.dim = hrep.dim
        self.hrep = hrep
        self.vrep = vrep
        self.is_empty = not vrep.vertices
        self.is_line_free = not vrep.lines
        self.is_bounded = self.is_empty or (not vrep.rays and not vrep.lines)
        if self.is_empty:
            self.affine_dim = -1
        else:
            v0 = vrep.vertices[0]
            spans = [vsub(v, v0) for v in vrep.vertices[1:]] + list(vrep.rays) + list(vrep.lines)
            self.affine_dim = rank(spans)
        self._hash = None

    # -- construction --------------------------------------------------
    @classmethod
    def from_h(cls, dim: int, constraints: Iterable) -> "Polyhedron":
        _check_dim(dim)
        cons = []
        for a, alpha in constraints:
            if len(a) != dim:
                raise ValidationError(f"normal {a!r} does not have dimension {dim}")
            a = qvec(a)
            alpha = to_fraction(alpha)
            if not any(a):
                if alpha < 0:
                    return cls.empty(dim)
                continue
            cons.append(normalize_constraint(a, alpha))
        V = h_to_v(HPolyhedron(dim, tuple(cons)))
        return cls(v_to_h(V), V)

    @classmethod
    def from_v(cls, dim: int, vertices: Iterable = (), rays: Iterable = (), lines: Iterable = ()) -> "Polyhedron":
        _check_dim(dim)
        vertices = [qvec(v) for v in vertices]
        rays = [qvec(r) for r in rays]
        lines = [qvec(l) for l in lines]
        for g in vertices + rays + lines:
            if len(g) != dim:
                raise ValidationError(f"generator {g!r} does not have dimension {dim}")
        rays = [primitive_vector(r) for r in rays if any(r)]
        lines = [primitive_vector(l) for l in lines if any(l)]
        if not vertices:
            if rays or lines:
                raise ValidationError("rays or lines need at least one vertex")
            return cls.empty(dim)
        H = v_to_h(VPolyhedron(dim, tuple(vertices), tuple(rays), tuple(lines)))
        return cls(H, h_to_v(H))

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        _check_dim(dim)
        return cls(HPolyhedron(dim, _empty_constraints(dim)), VPolyhedron(dim))

    @classmethod
    def full(cls, dim: int) -> "Polyhedron":
        return cls.from_h(dim, [])

    # -- views -----------------------------------------------------------
    @property
    def constraints(self) -> tuple:
        return self.hrep.constraints

    @property
    def vertices(self) -> tuple:
        return self.vrep.vertices

    @property
    def rays(self) -> tuple:
        return self.vrep.rays

    @property
    def lines(self) -> tuple:
        return self.vrep.lines

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.dim == other.dim and self.hrep.constraints == other.hrep.constraints

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, self.hrep.constraints))
        return self._hash

    def __repr__(self) -> str:
        if self.is_empty:
            return f"Polyhedron(dim={self.dim}, empty)"
        return (
            f"Polyhedron(dim={self.dim}, vertices={len(self.vertices)}, rays={len(self.rays)}, "
            f"lines={len(self.lines)}, constraints={len(self.constraints)})"
        )

    # -- membership ------------------------------------------------------
    def contains(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        x = qvec(x)
        return all(dot(a, x) <= alpha for a, alpha in self.constraints)

    def in_interior(self, x: Sequence) -> bool:
        if not self.is_full_dimensional:
            return False
        x = qvec(x)
        return all(dot(a, x) < alpha for a, alpha in self.constraints)

    def tight_constraints(self, x: Sequence) -> frozenset:
        x = qvec(x)
        return frozenset(i for i, (a, alpha) in enumerate(self.constraints) if dot(a, x) == alpha)

    def issubset(self, other: "Polyhedron") -> bool:
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        if not all(other.contains(v) for v in self.vertices):
            return False
        for a, _ in other.constraints:
            if any(dot(a, r) > 0 for r in self.rays):
                return False
            if any(dot(a, l) != 0 for l in self.lines):
                return False
        return True

    __le__ = issubset

    def intersect(self, *others: "Polyhedron") -> "Polyhedron":
        cons = list(self.constraints)
        for o in others:
            if o.is_empty:
                return Polyhedron.empty(self.dim)
            cons.extend(o.constraints)
        if self.is_empty:
            return Polyhedron.empty(self.dim)
        return Polyhedron.from_h(self.dim, cons)

    def interior_point(self) -> tuple:
        """A rational point of int(P), or a ``NotFullDimensional`` error."""
        if not self.is_full_dimensional:
            raise NotFullDimensional("polyhedron has empty interior")
        d = self.dim
        A = [list(a) + [1] for a, _ in self.constraints] + [[0] * d + [1]]
        b = [alpha for _, alpha in self.constraints] + [1]
        res = linprog([0] * d + [1], A, b)
        assert res.status == OPTIMAL and res.value > 0
        x = res.x[:d]
        assert self.in_interior(x)
        return x


# -- support / width / gauge ------------------------------------------------

def _require_nonempty(P: Polyhedron) -> None:
    if P.is_empty:
        raise EmptyPolyhedron("operation needs a nonempty polyhedron")


def support(P: Polyhedron, u: Sequence) -> ExtendedRational:
    """h(P, u) = sup of <u, x> over P."""
    _require_nonempty(P)
    u = qvec(u)
    if any(dot(u, r) > 0 for r in P.rays) or any(dot(u, l) != 0 for l in P.lines):
        return INF
    return max(dot(u, v) for v in P.vertices)


def width(P: Polyhedron, u: Sequence) -> ExtendedRational:
    u = qvec(u)
    return ext_add(support(P, u), support(P, vscale(-1, u)))


def recession_is_linear(P: Polyhedron) -> bool:
    return not P.rays


def gauge(L: Polyhedron, v: Sequence, u: Sequence) -> Fraction:
    """The gauge of ``u`` with respect to ``L - v`` for an interior point ``v``.

    When the result ``rho`` is positive, ``v + u / rho`` is the unique point
    where the ray from ``v`` along ``u`` leaves ``L``; zero means the ray
    never leaves.
    """
    v = qvec(v)
    u = qvec(u)
    if not L.in_interior(v):
        raise NotInterior(f"{v} is not an interior point")
    if not recession_is_linear(L):
        raise RecessionNotLinear("gauge needs a recession cone that is a linear space")
    best = Fraction(0)
    for a, alpha in L.constraints:
        val = dot(a, u) / (alpha - dot(a, v))
        if val > best:
            best = val
    return best


def recession_cone(P: Polyhedron) -> Polyhedron:
    _require_nonempty(P)
    origin = tuple(Fraction(0) for _ in range(P.dim))
    return Polyhedron.from_v(P.dim, [origin], P.rays, P.lines)


def lineality_space(P: Polyhedron) -> tuple:
    _require_nonempty(P)
    return P.lines


def polar(P: Polyhedron) -> Polyhedron:
    """The polar body ``conv{a_i / alpha_i}`` (origin interior, linear recession)."""
    origin = tuple(Fraction(0) for _ in range(P.dim))
    if not P.in_interior(origin):
        raise OriginNotInterior("polar needs the origin in the interior")
    if not recession_is_linear(P):
        raise RecessionNotLinear("polar body is only a polytope for linear recession cones")
    if not P.constraints:
        raise FullSpace("the polar of the whole space is {0}")
    points = [tuple(Fraction(x) / alpha for x in a) for a, alpha in P.constraints]
    return Polyhedron.from_v(P.dim, points)


# -- faces -------------------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    """A one-dimensional face: a segment between two vertices or a ray.

    ``direction`` is the primitive integer vector ``u(v, e)`` pointing from
    ``start`` into the edge.
    """

    kind: str  # "segment" | "ray"
    start: int
    end: int | None
    direction: tuple

    @property
    def is_segment(self) -> bool:
        return self.kind == "segment"

    def vertex_indices(self) -> tuple:
        return (self.start,) if self.end is None else (self.start, self.end)


def skeleton_1(P: Polyhedron) -> tuple[tuple, tuple]:
    """Vertices and edges of a nonempty line-free polyhedron."""
    _require_nonempty(P)
    if not P.is_line_free:
        raise NotLineFree("the 1-skeleton is only defined here for line-free polyhedra")
    d = P.dim
    cons = P.constraints
    normals = [a for a, _ in cons]
    vtight = [P.tight_constraints(v) for v in P.vertices]
    rtight = [frozenset(i for i, a in enumerate(normals) if dot(a, r) == 0) for r in P.rays]
    edges = []
    for i, j in combinations(range(len(P.vertices)), 2):
        common = vtight[i] & vtight[j]
        if len(common) < d - 1:
            continue
        if rank([normals[k] for k in common]) == d - 1:
            u = primitive_vector(vsub(P.vertices[j], P.vertices[i]))
            edges.append(Edge("segment", i, j, u))
    for i in range(len(P.vertices)):
        for r, rt in zip(P.rays, rtight):
            common = vtight[i] & rt
            if len(common) >= d - 1 and rank([normals[k] for k in common]) == d - 1:
                edges.append(Edge("ray", i, None, tuple(r)))
    return P.vertices, tuple(edges)


def facet_normals_U(P: Polyhedron) -> tuple:
    """Primitive outer facet normals of a full-dimensional polyhedron."""
    if not P.is_full_dimensional:
        raise NotFullDimensional("facet normals need a full-dimensional polyhedron")
    return tuple(a for a, _ in P.constraints)


def max_facet_width(P: Polyhedron) -> ExtendedRational:
    normals = facet_normals_U(P)
    if not normals:
        # whole space: no facets, width over an empty family
        return Fraction(0)
    return max(width(P, u) for u in normals)


# -- volume ------------------------------------------------------------------

def _affine_rank(points: Sequence) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([vsub(p, p0) for p in points[1:]])


def _triangulate(S: frozenset, k: int, pts, incidences, memo) -> list:
    """Triangulate the face with vertex set ``S`` of dimension ``k``."""
    key = S
    if key in memo:
        return memo[key]
    if k == 0:
        out = [(next(iter(S)),)]
        memo[key] = out
        return out
    v0 = min(S)
    facets = set()
    for inc in incidences:
        F = S & inc
        if F == S or len(F) < k:
            continue
        if _affine_rank([pts[i] for i in sorted(F)]) == k - 1:
            facets.add(F)
    # keep maximal candidates only
    facets = [F for F in facets if not any(F < G for G in facets)]
    out = []
    for F in sorted(facets, key=sorted):
        if v0 in F:
            continue
        for simplex in _triangulate(F, k - 1, pts, incidences, memo):
            out.append((v0,) + simplex)
    memo[key] = out
    return out


def triangulation(P: Polyhedron) -> list:
    """Simplices (as vertex-index tuples) triangulating a polytope."""
    _require_nonempty(P)
    if not P.is_bounded:
        raise Unbounded("triangulation needs a polytope")
    pts = P.vertices
    incidences = [frozenset(i for i, v in enumerate(pts) if dot(a, v) == alpha) for a, alpha in P.constraints]
    return _triangulate(frozenset(range(len(pts))), P.affine_dim, pts, incidences, {})


def volume(P: Polyhedron) -> Fraction:
    """Exact d-volume of a polytope; lower-dimensional sets have volume 0."""
    if P.is_empty:
        return Fraction(0)
    if not P.is_bounded:
        raise Unbounded("volume of an unbounded polyhedron")
    if not P.is_full_dimensional:
        return Fraction(0)
    pts = P.vertices
    total = Fraction(0)
    for simplex in triangulation(P):
        base = pts[simplex[0]]
        total += abs(det([vsub(pts[i], base) for i in simplex[1:]]))
    return total / factorial(P.dim)


# -- Hausdorff distance (sup norm) -----------------------------------------------

def linf_distance(x: Sequence, Q: Polyhedron) -> Fraction:
    """min over y in Q of the sup-norm of x - y, by an exact LP."""
    _require_nonempty(Q)
    x = qvec(x)
    d = Q.dim
    A, b = [], []
    for a, alpha in Q.constraints:
        A.append(list(a) + [0])
        b.append(alpha)
    for j in range(d):
        e = [0] * d
        e[j] = 1
        A.append(e + [-1])
        b.append(x[j])
        A.append([-c for c in e] + [-1])
        b.append(-x[j])
    res = linprog([0] * d + [-1], A, b)
    assert res.status == OPTIMAL
    return -res.value


def directed_hausdorff(P: Polyhedron, Q: Polyhedron) -> ExtendedRational:
    """sup over x in P of the sup-norm distance from x to Q."""
    if P.is_empty:
        return Fraction(0)
    if Q.is_empty:
        return INF
    if recession_cone(P) != recession_cone(Q):
        return INF
    return max(linf_distance(v, Q) for v in P.vertices)


def hausdorff_distance(P: Polyhedron, Q: Polyhedron) -> ExtendedRational:
    """Hausdorff distance measured in the sup norm (keeps everything rational)."""
    if P.is_empty and Q.is_empty:
        return Fraction(0)
    if P.is_empty or Q.is_empty:
        return INF
    return max(directed_hausdorff(P, Q), directed_hausdorff(Q, P))
