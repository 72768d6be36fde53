"""L-reductions ``R_L(P) = conv(P \\ int L)`` for rational polyhedra.

Polyhedrality is preserved exactly when ``L`` is a halfspace or its recession
cone is a linear space; :func:`classify_reducer` tells the two apart from the
rest, and :func:`nonclosed_witness` builds a polyhedron whose reduction is not
closed when neither holds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    DimensionNot2,
    NonPreservingReducer,
    NotFullDimensional,
    PreservingReducer,
    Unbounded,
    ValidationError,
)
from .lp import OPTIMAL, linprog
from .numeric import dot, primitive_vector, qvec, rank, vadd, vscale
from .polyhedra import Edge, Polyhedron, gauge, skeleton_1


class ReducerClass(enum.Enum):
    HALFSPACE = "Halfspace"
    REC_LINEAR = "RecLinear"
    NON_PRESERVING = "NonPreserving"

    def __str__(self) -> str:
        return self.value


def classify_reducer(L: Polyhedron) -> ReducerClass:
    if not L.is_full_dimensional:
        raise NotFullDimensional("a reducer must be full-dimensional")
    if len(L.constraints) == 1:
        return ReducerClass.HALFSPACE
    if not L.rays:
        return ReducerClass.REC_LINEAR
    return ReducerClass.NON_PRESERVING


def _check_pair(P: Polyhedron, L: Polyhedron) -> ReducerClass:
    if P.dim != L.dim:
        raise ValidationError(f"dimension mismatch: P has {P.dim}, L has {L.dim}")
    return classify_reducer(L)


def _lines_inside_recession(P: Polyhedron, L: Polyhedron) -> bool:
    return all(dot(a, l) == 0 for l in P.lines for a, _ in L.constraints)


def _crossing(L: Polyhedron, v, u) -> tuple | None:
    """Where the ray ``v + t u`` (v interior) leaves L; None if it never does."""
    rho = gauge(L, v, u)
    if rho == 0:
        return None
    return vadd(v, vscale(1 / rho, u))


def _edge_remainder_points(P: Polyhedron, L: Polyhedron, e: Edge, inside: list) -> list:
    """Generators contributed by the part of edge ``e`` outside int(L).

    Endpoints outside int(L) are collected separately; this adds only the
    boundary crossing for edges that start inside and end outside.
    """
    verts = P.vertices
    if e.is_segment:
        a, b = e.start, e.end
        if inside[a] and not inside[b]:
            return [_crossing(L, verts[a], e.direction)]
        if inside[b] and not inside[a]:
            return [_crossing(L, verts[b], vscale(-1, e.direction))]
        return []
    if inside[e.start]:
        x = _crossing(L, verts[e.start], e.direction)
        return [] if x is None else [x]
    return []


def _reduce_line_free(P: Polyhedron, L: Polyhedron) -> Polyhedron:
    inside = [L.in_interior(v) for v in P.vertices]
    if not any(inside):
        # every vertex survives, and with them all of P
        return P
    points = [v for v, ins in zip(P.vertices, inside) if not ins]
    _, edges = skeleton_1(P)
    for e in edges:
        points.extend(_edge_remainder_points(P, L, e, inside))
    if not points:
        return Polyhedron.empty(P.dim)
    return Polyhedron.from_v(P.dim, points, P.rays)


def reduce(P: Polyhedron, L: Polyhedron) -> Polyhedron:
    """Compute ``conv(P \\ int L)`` for a polyhedrality-preserving ``L``."""
    cls = _check_pair(P, L)
    if cls is ReducerClass.NON_PRESERVING:
        raise NonPreservingReducer("L is neither a halfspace nor has a linear recession cone")
    if P.is_empty:
        return P
    if cls is ReducerClass.HALFSPACE:
        (a, alpha), = L.constraints
        return P.intersect(Polyhedron.from_h(P.dim, [(vscale(-1, a), -alpha)]))
    if not L.constraints:
        return Polyhedron.empty(P.dim)
    if not _lines_inside_recession(P, L):
        return P
    if P.is_line_free:
        return _reduce_line_free(P, L)
    # P = base + lineal(P) with lineal(P) inside lineal(L): reduce the base
    base = Polyhedron.from_v(P.dim, P.vertices, P.rays)
    reduced = _reduce_line_free(base, L)
    if reduced.is_empty:
        return reduced
    if reduced is base:
        return P
    return Polyhedron.from_v(P.dim, reduced.vertices, reduced.rays, P.lines)


def extreme_points_of_reduction(P: Polyhedron, L: Polyhedron) -> frozenset:
    """Extreme points of ``R_L(P)`` read off the 1-skeleton of ``P``.

    A point qualifies if it is a vertex of P outside int(L), or if it splits
    an edge of P into a piece inside int(L) and a piece missing L entirely.
    """
    cls = _check_pair(P, L)
    if cls is not ReducerClass.REC_LINEAR:
        raise NonPreservingReducer("extreme points are characterised for linear recession cones only")
    verts, edges = skeleton_1(P)
    inside = [L.in_interior(v) for v in verts]
    result = {v for v, ins in zip(verts, inside) if not ins}
    for e in edges:
        if e.is_segment:
            for a, b, u in ((e.start, e.end, e.direction), (e.end, e.start, vscale(-1, e.direction))):
                if inside[a] and not L.contains(verts[b]):
                    result.add(_crossing(L, verts[a], u))
        elif inside[e.start]:
            x = _crossing(L, verts[e.start], e.direction)
            if x is not None:
                result.add(x)
    return frozenset(result)


def reduce_oracle_2d(P: Polyhedron, L: Polyhedron) -> Polyhedron:
    """Brute-force planar reduction: clip P by each facet complement of L."""
    if P.dim != 2:
        raise DimensionNot2("the clipping oracle is planar only")
    if not P.is_bounded:
        raise Unbounded("the clipping oracle needs a bounded P")
    cls = _check_pair(P, L)
    if cls is ReducerClass.NON_PRESERVING:
        raise NonPreservingReducer("oracle only covers polyhedrality-preserving L")
    points = []
    for a, alpha in L.constraints:
        piece = P.intersect(Polyhedron.from_h(2, [(vscale(-1, a), -alpha)]))
        points.extend(piece.vertices)
    if not points:
        return Polyhedron.empty(2)
    return Polyhedron.from_v(2, points)


# -- membership in conv(K \ int L) without taking closures -------------------

def reduction_pieces(K: Polyhedron, L: Polyhedron) -> list:
    """Closed polyhedra whose union is ``K \\ int L``."""
    pieces = []
    for a, alpha in L.constraints:
        Q = K.intersect(Polyhedron.from_h(K.dim, [(vscale(-1, a), -alpha)]))
        if not Q.is_empty:
            pieces.append(Q)
    return pieces


def _in_positive_combination(x, pieces) -> bool:
    """Is x a convex combination with strictly positive weights of points
    taken one from each piece? Decided by maximising the smallest weight."""
    d = len(x)
    k = len(pieces)
    nvar = k * d + k + 1  # y_j blocks, lambda_j, tau
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for j, Q in enumerate(pieces):
        for a, alpha in Q.constraints:
            row = [Fraction(0)] * nvar
            for i in range(d):
                row[j * d + i] = Fraction(a[i])
            row[k * d + j] = -alpha
            A_ub.append(row)
            b_ub.append(0)
        row = [Fraction(0)] * nvar
        row[-1] = Fraction(1)
        row[k * d + j] = Fraction(-1)
        A_ub.append(row)
        b_ub.append(0)
    for i in range(d):
        row = [Fraction(0)] * nvar
        for j in range(k):
            row[j * d + i] = Fraction(1)
        A_eq.append(row)
        b_eq.append(x[i])
    row = [Fraction(0)] * nvar
    for j in range(k):
        row[k * d + j] = Fraction(1)
    A_eq.append(row)
    b_eq.append(1)
    c = [0] * nvar
    c[-1] = 1
    res = linprog(c, A_ub, b_ub, A_eq, b_eq)
    return res.status == OPTIMAL and res.value > 0


def reduction_contains(K: Polyhedron, L: Polyhedron, x) -> bool:
    """Exact test of ``x in conv(K \\ int L)`` (the hull itself, not its closure).

    Works for any full-dimensional polyhedral L, including ones whose
    reduction is not closed.
    """
    x = qvec(x)
    pieces = reduction_pieces(K, L)
    for size in range(1, len(pieces) + 1):
        for subset in combinations(pieces, size):
            if _in_positive_combination(x, subset):
                return True
    return False


# -- non-closedness witness ---------------------------------------------------------

@dataclass(frozen=True)
class NonClosedWitness:
    """A polyhedron ``K`` and point ``p`` in the closure of ``R_L(K)`` but not in it.

    ``p - eps * u2`` lies in ``R_L(K)`` for every ``eps > 0``.
    """

    K: Polyhedron
    p: tuple
    u2: tuple
    u1: tuple
    t: Fraction

    def approach_point(self, eps) -> tuple:
        return tuple(pi - Fraction(eps) * ui for pi, ui in zip(self.p, self.u2))


def _two_face_rays(L: Polyhedron) -> tuple:
    """Two extreme rays of the pointed part of rec(L) spanning a 2-face."""
    d = L.dim
    origin = (0,) * d
    C = Polyhedron.from_v(d, [origin], L.rays)
    normals = [a for a, _ in C.constraints]
    tight = [frozenset(i for i, a in enumerate(normals) if dot(a, r) == 0) for r in C.rays]
    for i, j in combinations(range(len(C.rays)), 2):
        common = tight[i] & tight[j]
        if rank([normals[k] for k in common]) == d - 2:
            return C.rays[i], C.rays[j]
    raise AssertionError("a pointed cone of dimension >= 2 has a 2-face")


def nonclosed_witness(L: Polyhedron) -> NonClosedWitness:
    """Construct ``K = p - 2t u1 + cone{u1, -u2}`` with a non-closed reduction."""
    if classify_reducer(L) is not ReducerClass.NON_PRESERVING:
        raise PreservingReducer("L preserves polyhedrality; no witness exists")
    d = L.dim
    dim_c = rank(L.rays)
    if dim_c == 1:
        u1 = tuple(L.rays[0])
        span = list(L.rays) + list(L.lines)
        base = rank(span)
        u2 = next(
            e
            for e in (tuple(int(i == j) for j in range(d)) for i in range(d))
            if rank(span + [e]) > base
        )
    else:
        u1, u2 = _two_face_rays(L)
    u1 = primitive_vector(u1)
    u2 = primitive_vector(u2)
    p = L.interior_point()
    # boundary crossing of p - s*u1; -u1 is not a recession direction of L
    rho = max(dot(a, vscale(-1, u1)) / (alpha - dot(a, p)) for a, alpha in L.constraints)
    assert rho > 0
    t = 1 / rho
    apex = tuple(pi - 2 * t * ui for pi, ui in zip(p, u1))
    K = Polyhedron.from_v(d, [apex], [u1, vscale(-1, u2)])
    return NonClosedWitness(K, tuple(p), u2, u1, t)
