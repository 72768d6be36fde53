"""Finite closures, remainder matrices and iterated closures.

The remainder matrix of ``P`` with respect to ``L`` records, for each vertex
``v`` and incident edge ``e`` of ``P``, how much of ``e`` survives reduction
by ``L``: ``0`` (nothing), ``INF`` (everything from ``v`` on), or the gauge of
the edge direction seen from ``v``. Entrywise smaller matrices give smaller
reductions, which is what makes pruning a cut family sound.
"""

from __future__ import annotations

import csv
import enum
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import (
    EmptyFamily,
    EmptyPolyhedron,
    NotFullDimensional,
    NotLineFree,
    PreconditionViolated,
    RecessionNotLinear,
    ReferenceNotContained,
    ShapeMismatch,
)
from .numeric import INF, ExtendedRational, denominator_lcm, format_rational, qvec, to_fraction
from .polyhedra import Polyhedron, gauge, hausdorff_distance, max_facet_width, skeleton_1
from .reduction import reduce


@dataclass(frozen=True)
class CutBounds:
    """Certified constants: max-facet-width ``k``, facet lattice ``l``, denominators ``m``."""

    k: int
    l: int
    m: int

    def factor(self) -> int:
        return factorial(self.k * self.l * self.m)


def facet_lattice_condition(L: Polyhedron, l: int) -> bool:
    """Every facet hyperplane, scaled by ``l``, meets the integer lattice.

    For a primitive normal ``a`` that is the same as ``l * h(L, a)`` being an
    integer.
    """
    return all((l * alpha).denominator == 1 for _, alpha in L.constraints)


@dataclass(frozen=True)
class CutFamily:
    members: tuple
    bounds: CutBounds | None = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for idx, L in enumerate(self.members):
            if not L.is_full_dimensional:
                raise NotFullDimensional(f"member {idx} is not full-dimensional")
        if self.bounds is None:
            return
        k, l = self.bounds.k, self.bounds.l
        for idx, L in enumerate(self.members):
            w = max_facet_width(L)
            if w is INF or w > k:
                raise PreconditionViolated(f"member {idx}: max-facet-width {format_rational(w)} exceeds k={k}")
            if not facet_lattice_condition(L, l):
                raise PreconditionViolated(f"member {idx}: a facet of l*L misses the lattice (l={l})")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True)
class RemainderMatrix:
    vertices: tuple
    edges: tuple
    entries: tuple  # entries[vertex_index][edge_index]

    @property
    def shape(self) -> tuple:
        return (len(self.vertices), len(self.edges))

    def __getitem__(self, key) -> ExtendedRational:
        i, j = key
        return self.entries[i][j]

    def as_vector(self) -> tuple:
        return tuple(x for row in self.entries for x in row)

    def finite_entries(self) -> list:
        return [x for x in self.as_vector() if x is not INF]


def remainder_matrix(P: Polyhedron, L: Polyhedron) -> RemainderMatrix:
    if P.is_empty:
        raise EmptyPolyhedron("remainder matrix of the empty set")
    if not P.is_line_free:
        raise NotLineFree("remainder matrices need a line-free P")
    if L.rays or not L.is_full_dimensional:
        raise RecessionNotLinear("remainder matrices need a full-dimensional L with linear recession cone")
    verts, edges = skeleton_1(P)
    inside = [L.in_interior(v) for v in verts]
    rows = []
    for vi, v in enumerate(verts):
        row = []
        for e in edges:
            if vi not in e.vertex_indices():
                row.append(Fraction(0))
                continue
            u = e.direction if vi == e.start else tuple(-x for x in e.direction)
            if e.is_segment:
                inside_edge = inside[e.start] and inside[e.end]
            else:
                inside_edge = inside[vi] and gauge(L, v, u) == 0
            if inside_edge:
                row.append(Fraction(0))
            elif not inside[vi]:
                row.append(INF)
            else:
                row.append(gauge(L, v, u))
        rows.append(tuple(row))
    return RemainderMatrix(verts, edges, tuple(rows))


def _as_entries(item) -> tuple:
    if isinstance(item, RemainderMatrix):
        return item.as_vector()
    return tuple(item)


def _leq(x: Sequence, y: Sequence) -> bool:
    return all(a <= b for a, b in zip(x, y))


def dominates(R1: RemainderMatrix, R2: RemainderMatrix) -> bool:
    """True iff ``R1 <= R2`` entrywise (so R_{L1}(P) lies inside R_{L2}(P))."""
    if R1.vertices != R2.vertices or R1.edges != R2.edges:
        raise ShapeMismatch("remainder matrices belong to different polyhedra")
    return _leq(R1.as_vector(), R2.as_vector())


def minimal_antichain(items: Sequence) -> list:
    """Indices of the minimal elements (first representative of duplicates).

    Accepts remainder matrices or plain tuples of extended rationals.
    """
    vecs = [_as_entries(x) for x in items]
    if vecs and any(len(v) != len(vecs[0]) for v in vecs):
        raise ShapeMismatch("all items must have the same shape")
    first = {}
    for i, v in enumerate(vecs):
        first.setdefault(v, i)
    reps = sorted(first.values())
    selected = []
    for i in reps:
        vi = vecs[i]
        if not any(j != i and vecs[j] != vi and _leq(vecs[j], vi) for j in reps):
            selected.append(i)
    return selected


def _check_integrality(P: Polyhedron, matrices, bounds: CutBounds) -> None:
    for v in P.vertices:
        if any((bounds.m * x).denominator != 1 for x in v):
            raise PreconditionViolated(f"m={bounds.m} does not clear the denominators of vertex {v}")
    f = bounds.factor()
    for R in matrices:
        for r in R.finite_entries():
            scaled = f * r
            if scaled.denominator != 1 or scaled < 0:
                raise PreconditionViolated(f"scaled remainder entry {format_rational(scaled)} is not a nonnegative integer")


def pruned_indices(P: Polyhedron, family: CutFamily) -> list:
    """Indices of the members kept by :func:`prune_class`."""
    matrices = [remainder_matrix(P, L) for L in family.members]
    keep = minimal_antichain(matrices)
    if family.bounds is not None:
        _check_integrality(P, [matrices[i] for i in keep], family.bounds)
    return keep


def prune_class(P: Polyhedron, family: CutFamily) -> CutFamily:
    """Drop members whose remainder matrix dominates another member's."""
    keep = pruned_indices(P, family)
    return CutFamily(tuple(family.members[i] for i in keep), family.bounds)


def scaled_integrality_check(L: Polyhedron, p: Sequence, k: int, l: int, m: int) -> bool:
    """Check that ``(k*l*m)! * gauge_{L-p}(z)`` is a nonnegative integer on a
    sample of integer ``z`` with sup-norm at most 2."""
    from itertools import product

    p = qvec(p)
    if not L.in_interior(p):
        raise PreconditionViolated("p is not an interior point of L")
    if any((m * x).denominator != 1 for x in p):
        raise PreconditionViolated(f"m*p is not integral for m={m}")
    w = max_facet_width(L)
    if w is INF or w > k:
        raise PreconditionViolated(f"max-facet-width {format_rational(w)} exceeds k={k}")
    if not facet_lattice_condition(L, l):
        raise PreconditionViolated(f"facet lattice condition fails for l={l}")
    f = factorial(k * l * m)
    for z in product(range(-2, 3), repeat=L.dim):
        if not any(z):
            continue
        scaled = f * gauge(L, p, z)
        if scaled.denominator != 1 or scaled < 0:
            return False
    return True


def closure(P: Polyhedron, family: CutFamily, jobs: int = 1) -> Polyhedron:
    """Intersection of ``R_L(P)`` over the members of ``family``."""
    members = family.members
    if not members:
        raise EmptyFamily("closure over an empty family is undefined")
    if jobs > 1 and len(members) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reduced = list(pool.map(reduce, [P] * len(members), members))
    else:
        reduced = [reduce(P, L) for L in members]
    if any(R.is_empty for R in reduced):
        return Polyhedron.empty(P.dim)
    changed = [R for R in reduced if R is not P and R != P]
    if not changed:
        return P
    cons = []
    for R in changed:
        cons.extend(R.constraints)
    return Polyhedron.from_h(P.dim, cons)


class StopReason(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    FIXPOINT = "Fixpoint"

    def __str__(self) -> str:
        return self.value


@dataclass
class IterationTrace:
    iterates: list = field(default_factory=list)
    distances: list = field(default_factory=list)
    stopped_because: StopReason | None = None

    @property
    def final(self) -> Polyhedron:
        return self.iterates[-1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["iteration", "num_vertices", "num_constraints", "hausdorff_linf"])
        for i, R in enumerate(self.iterates):
            if self.distances:
                dist = self.distances[i]
                cell = "inf" if dist is INF else format_rational(dist)
            else:
                cell = ""
            writer.writerow([i, len(R.vertices), len(R.constraints), cell])
        return buf.getvalue()


def iterate_closure(
    P: Polyhedron,
    family: CutFamily,
    max_i: int,
    reference: Polyhedron | None = None,
    tol=0,
    jobs: int = 1,
) -> IterationTrace:
    """Apply :func:`closure` repeatedly, stopping at a fixpoint, after
    ``max_i`` rounds, or once the sup-norm Hausdorff distance to
    ``reference`` drops to ``tol``."""
    tol = to_fraction(tol)
    if reference is not None and not reference.issubset(P):
        raise ReferenceNotContained("the reference body must lie inside P")
    trace = IterationTrace(iterates=[P])

    def converged(R: Polyhedron) -> bool:
        if reference is None:
            return False
        dist = hausdorff_distance(R, reference)
        trace.distances.append(dist)
        return dist <= tol

    if converged(P):
        trace.stopped_because = StopReason.CONVERGED
        return trace
    if max_i <= 0:
        trace.stopped_because = StopReason.MAX_ITERATIONS
        return trace
    for i in range(1, max_i + 1):
        prev = trace.iterates[-1]
        R = closure(prev, family, jobs=jobs)
        trace.iterates.append(R)
        if converged(R):
            trace.stopped_because = StopReason.CONVERGED
            break
        if R == prev:
            trace.stopped_because = StopReason.FIXPOINT
            break
    else:
        trace.stopped_because = StopReason.MAX_ITERATIONS
    return trace


def denominators_of(P: Polyhedron) -> int:
    """Smallest m with m*v integral for every vertex v of P."""
    return denominator_lcm(x for v in P.vertices for x in v)
