"""A dense two-phase simplex over the rationals.

Only meant for the handful of tiny LPs the library needs (distances,
interior points, membership in hulls of unions), so it favours clarity and
Bland's anti-cycling rule over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None = None
    value: Fraction | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    pv = T[r][c]
    if pv != 1:
        T[r] = [x / pv for x in T[r]]
    row = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f != 0:
                Ti = T[i]
                T[i] = [a - f * b for a, b in zip(Ti, row)]
    basis[r] = c


def _run(T: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Maximise the objective stored in the last row (as reduced costs).

    The last row holds ``-c`` so that negative entries can still improve.
    Returns False when the problem is unbounded.
    """
    m = len(T) - 1
    while True:
        obj = T[m]
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return True
        best = None
        for i in range(m):
            a = T[i][col]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], col)


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nonneg: Sequence[bool] | None = None,
) -> LPResult:
    """Maximise ``c.x`` subject to ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.

    Variables are free unless flagged in ``nonneg``.
    """
    n = len(c)
    if nonneg is None:
        nonneg = [False] * n
    # column layout: one column per nonneg var, two (x+, x-) per free var
    cols: list[tuple[int, int]] = []
    for j in range(n):
        cols.append((j, 1))
        if not nonneg[j]:
            cols.append((j, -1))
    nv = len(cols)

    rows: list[tuple[list[Fraction], Fraction, int]] = []  # coeffs, rhs, slack sign
    for a, b in zip(A_ub, b_ub):
        rows.append(([Fraction(a[j]) * s for j, s in cols], Fraction(b), 1))
    for a, b in zip(A_eq, b_eq):
        rows.append(([Fraction(a[j]) * s for j, s in cols], Fraction(b), 0))

    m = len(rows)
    n_slack = sum(1 for r in rows if r[2])
    n_art = m
    width = nv + n_slack + n_art + 1
    T: list[list[Fraction]] = []
    basis: list[int] = []
    slack_idx = nv
    for i, (coeffs, rhs, has_slack) in enumerate(rows):
        row = coeffs + [Fraction(0)] * (n_slack + n_art) + [rhs]
        if has_slack:
            row[slack_idx] = Fraction(1)
            slack_idx += 1
        if rhs < 0:
            row = [-x for x in row]
        row[nv + n_slack + i] = Fraction(1)
        T.append(row)
        basis.append(nv + n_slack + i)

    # phase 1: maximise -sum(artificials)
    obj = [Fraction(0)] * width
    for i in range(m):
        obj = [o - t for o, t in zip(obj, T[i])]
    for i in range(m):
        obj[nv + n_slack + i] = Fraction(0)
    T.append(obj)
    _run(T, basis, nv + n_slack)
    if T[m][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= nv + n_slack:
            col = next((j for j in range(nv + n_slack) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)

    keep = [i for i in range(m) if basis[i] < nv + n_slack]
    T2 = [T[i][: nv + n_slack] + [T[i][-1]] for i in keep]
    basis2 = [basis[i] for i in keep]
    cost = [Fraction(c[j]) * s for j, s in cols] + [Fraction(0)] * n_slack
    obj = [-x for x in cost] + [Fraction(0)]
    for i, b in enumerate(basis2):
        f = obj[b]
        if f != 0:
            obj = [o - f * t for o, t in zip(obj, T2[i])]
    T2.append(obj)
    if not _run(T2, basis2, nv + n_slack):
        return LPResult(UNBOUNDED)

    vals = [Fraction(0)] * (nv + n_slack)
    for i, b in enumerate(basis2):
        vals[b] = T2[i][-1]
    x = [Fraction(0)] * n
    for k, (j, s) in enumerate(cols):
        x[j] += s * vals[k]
    return LPResult(OPTIMAL, tuple(x), T2[-1][-1])
