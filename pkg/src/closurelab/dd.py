"""Double description method for polyhedral cones over the integers.

``cone_generators(rows, n)`` returns generators of ``{y in R^n : A y <= 0}``.
All arithmetic is on Python ints: every ray and line is kept as a primitive
integer vector, so there is no fraction growth.
"""

from __future__ import annotations

from typing import Sequence

from .numeric import primitive_int


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _canon_ray(v: list[int]) -> tuple[int, ...]:
    return primitive_int(v)


def cone_generators(rows: Sequence[Sequence[int]], n: int) -> tuple[list[tuple], list[tuple]]:
    """Return ``(lines, rays)`` with ``cone = span(lines) + cone(rays)``.

    ``rays`` are the extreme rays of the pointed part. Rows are processed in
    the given order; callers sort them for determinism.
    """
    lines: list[list[int]] = [[int(i == j) for j in range(n)] for i in range(n)]
    rays: list[tuple[int, ...]] = []
    zeros: list[int] = []  # bitmask of processed rows tight at each ray
    for k, a in enumerate(rows):
        a = list(a)
        bit = 1 << k
        pivot = next((i for i, l in enumerate(lines) if _dot(a, l) != 0), None)
        if pivot is not None:
            l0 = lines.pop(pivot)
            s0 = _dot(a, l0)
            if s0 > 0:
                l0 = [-x for x in l0]
                s0 = -s0
            # s0 < 0; make every other generator orthogonal to a
            new_lines = []
            for l in lines:
                s = _dot(a, l)
                if s:
                    l = [(-s0) * x + s * y for x, y in zip(l, l0)]
                    l = list(primitive_int(l))
                new_lines.append(l)
            lines = new_lines
            new_rays = []
            for r in rays:
                s = _dot(a, r)
                if s:
                    r = _canon_ray([(-s0) * x + s * y for x, y in zip(r, l0)])
                new_rays.append(r)
            rays = new_rays
            zeros = [z | bit for z in zeros]
            prev = bit - 1  # l0 was orthogonal to every earlier row
            rays.append(_canon_ray(l0))
            zeros.append(prev)
            continue

        vals = [_dot(a, r) for r in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        if not pos:
            zeros = [z | bit if s == 0 else z for z, s in zip(zeros, vals)]
            continue
        neg = [i for i, s in enumerate(vals) if s < 0]
        zer = [i for i, s in enumerate(vals) if s == 0]
        need = n - len(lines) - 2
        new_rays = [rays[i] for i in neg] + [rays[i] for i in zer]
        new_zeros = [zeros[i] for i in neg] + [zeros[i] | bit for i in zer]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if bin(common).count("1") < need:
                    continue
                adjacent = True
                for r in range(len(rays)):
                    if r != p and r != q and (zeros[r] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                sp, sq = vals[p], vals[q]
                v = [sp * y - sq * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(_canon_ray(v))
                new_zeros.append(common | bit)
        rays, zeros = new_rays, new_zeros

    seen = {}
    for r in rays:
        if any(r):
            seen.setdefault(tuple(r), None)
    return [tuple(l) for l in lines], list(seen)
