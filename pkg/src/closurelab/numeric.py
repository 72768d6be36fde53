"""Exact rational scalars, vectors and the small amount of linear algebra
everything else is built on.

Scalars are :class:`fractions.Fraction` (always gcd-reduced with a positive
denominator), vectors are tuples of fractions and matrices are tuples of rows.
``INF`` is a distinct tag for +infinity; it orders above every rational but
refuses arithmetic so that an accidental ``n * INF`` fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import ZeroVector

Rational = Fraction
QVector = tuple  # tuple[Fraction, ...]
QMatrix = tuple  # tuple[QVector, ...]


class PositiveInfinity:
    """The +inf tag used for unbounded support values and remainder entries."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "+inf"

    def __hash__(self) -> int:
        return hash("closurelab+inf")

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        if other is self or _is_number(other):
            return False
        return NotImplemented

    def __le__(self, other) -> bool:
        if other is self:
            return True
        if _is_number(other):
            return False
        return NotImplemented

    def __gt__(self, other) -> bool:
        if other is self:
            return False
        if _is_number(other):
            return True
        return NotImplemented

    def __ge__(self, other) -> bool:
        if other is self or _is_number(other):
            return True
        return NotImplemented

    def __reduce__(self):
        return (PositiveInfinity, ())


INF = PositiveInfinity()
ExtendedRational = Union[Fraction, PositiveInfinity]


def _is_number(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def is_inf(x) -> bool:
    return x is INF


def ext_add(a: ExtendedRational, b: ExtendedRational) -> ExtendedRational:
    """Sum where +inf absorbs."""
    if a is INF or b is INF:
        return INF
    return a + b


# -- scalars ---------------------------------------------------------------

def to_fraction(x) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: every input to this library has to be exact.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_extended(text: str) -> ExtendedRational:
    t = text.strip()
    if t in ("+inf", "inf"):
        return INF
    return Fraction(t)


def format_rational(x: ExtendedRational) -> str:
    if x is INF:
        return "+inf"
    x = to_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# -- vectors ---------------------------------------------------------------

def qvec(values: Iterable) -> tuple:
    return tuple(to_fraction(v) for v in values)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def denominator_lcm(v: Iterable) -> int:
    return reduce(lcm, (to_fraction(x).denominator for x in v), 1)


def int_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, (abs(x) for x in v), 0)


def primitive_vector(v: Sequence) -> tuple:
    """Scale ``v`` by a positive rational to a primitive integer vector.

    >>> primitive_vector((Fraction(1, 2), Fraction(1, 3)))
    (3, 2)
    """
    v = [to_fraction(x) for x in v]
    if all(x == 0 for x in v):
        raise ZeroVector("primitive_vector of the zero vector")
    den = denominator_lcm(v)
    ints = [int(x * den) for x in v]
    g = int_gcd(ints)
    return tuple(x // g for x in ints)


def primitive_int(v: Sequence[int]) -> tuple:
    """gcd-normalise an integer vector; the zero vector is returned as is."""
    g = int_gcd(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def lex_positive(v: Sequence) -> bool:
    for x in v:
        if x != 0:
            return x > 0
    return False


# -- matrices --------------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[to_fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of {x : A x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class AffineSolution:
    point: tuple
    null_basis: tuple

    def evaluate(self, coefficients: Sequence) -> tuple:
        x = self.point
        for c, b in zip(coefficients, self.null_basis):
            x = vadd(x, vscale(to_fraction(c), b))
        return x


def solve_affine(A: Sequence[Sequence], b: Sequence) -> AffineSolution | None:
    """Solve ``A x = b`` exactly; ``None`` means the system is infeasible.

    The particular solution sets every free variable to zero.
    """
    if len(A) != len(b):
        raise ValueError("A and b have incompatible shapes")
    if not A:
        raise ValueError("empty system has no column count")
    ncols = len(A[0])
    aug = [list(row) + [bb] for row, bb in zip(A, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    coeff_rows = [row[:ncols] for row in red]
    return AffineSolution(tuple(x), tuple(nullspace(coeff_rows, ncols)))


def det(rows: Sequence[Sequence]) -> Fraction:
    m = [[to_fraction(x) for x in r] for r in rows]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        pv = m[c][c]
        result *= pv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [a - f * bb for a, bb in zip(m[i], m[c])]
    return result


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def matvec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in M)


def project_onto_complement(v: Sequence, basis: Sequence[Sequence]) -> tuple:
    """Orthogonal projection of ``v`` onto span(basis)^perp, exactly."""
    if not basis:
        return tuple(to_fraction(x) for x in v)
    gram = [[dot(a, b) for b in basis] for a in basis]
    rhs = [dot(a, v) for a in basis]
    sol = solve_affine(gram, rhs)
    assert sol is not None
    out = tuple(to_fraction(x) for x in v)
    for c, a in zip(sol.point, basis):
        out = vsub(out, vscale(c, a))
    return out


def canonical_basis(vectors: Sequence[Sequence]) -> tuple:
    """Canonical primitive integer basis of span(vectors) (rref, then scaled)."""
    red, _ = rref(vectors)
    return tuple(primitive_vector(row) for row in red)
