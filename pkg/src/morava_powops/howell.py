"""Howell normal form of integer matrices over Z/p^N.

Z/p^N is a chain ring, so a row echelon form whose pivots are powers of p
and whose entries above each pivot are reduced modulo that pivot is
canonical once the Howell property holds: for every pivot row with pivot
p^v, the multiple p^(N-v) * row (which kills the pivot) lies in the span of
the rows below it.  With that property, the rows whose first nonzero column
is at or after c span every element of the row space that vanishes before
column c, which is what membership tests and kernel extraction need.

The compiled kernel in ``_howell`` is used when it was built and ``p^N``
fits in 31 bits; otherwise the pure-Python routine below runs.  Set
``MORAVA_POWOPS_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os
from typing import NamedTuple, Sequence

try:
    if os.environ.get("MORAVA_POWOPS_PURE"):
        raise ImportError("pure-Python backend requested")
    from ._howell import howell_form as _howell_ext
except ImportError:
    _howell_ext = None

BACKEND = "cython" if _howell_ext is not None else "python"

# products of two residues must fit in a signed 64-bit integer
_EXT_MODULUS_LIMIT = 1 << 31


class Pivot(NamedTuple):
    col: int
    exp: int  # pivot entry is p**exp
    row: list


def _valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def howell_form_py(rows: Sequence[Sequence[int]], p: int, N: int, ncols: int) -> list[Pivot]:
    q = p ** N
    work = []
    for r in rows:
        r = [x % q for x in r]
        if any(r):
            work.append(r)
    pivots: list[Pivot] = []
    for c in range(ncols):
        best, bv = -1, N
        for idx, r in enumerate(work):
            e = r[c]
            if e:
                v = _valuation(e, p)
                if v < bv:
                    best, bv = idx, v
                    if v == 0:
                        break
        if best < 0:
            continue
        piv = work.pop(best)
        pv = p ** bv
        uinv = pow(piv[c] // pv, -1, q)
        piv = [x * uinv % q for x in piv]
        remaining = []
        for r in work:
            e = r[c]
            if e:
                f = e // pv
                r = [(x - f * y) % q for x, y in zip(r, piv)]
                if not any(r):
                    continue
            remaining.append(r)
        if bv:
            ann = [x * p ** (N - bv) % q for x in piv]
            if any(ann):
                remaining.append(ann)
        work = remaining
        pivots.append(Pivot(c, bv, piv))

    for k, (c, v, row) in enumerate(pivots):
        pv = p ** v
        for j in range(k):
            above = pivots[j].row
            if above[c] >= pv:
                f = above[c] // pv
                pivots[j].row[:] = [(x - f * y) % q for x, y in zip(above, row)]
    return pivots


def howell_form(rows: Sequence[Sequence[int]], p: int, N: int, ncols: int) -> list[Pivot]:
    """Howell form of the row span of ``rows`` (each of length ``ncols``)."""
    if _howell_ext is not None and p ** N < _EXT_MODULUS_LIMIT and rows:
        return [Pivot(c, v, r) for c, v, r in _howell_ext(rows, p, N, ncols)]
    return howell_form_py(rows, p, N, ncols)


def reduce_vector(pivots: Sequence[Pivot], x: Sequence[int], p: int, N: int) -> list[int]:
    """Remainder of x against a Howell basis; zero iff x is in the span."""
    q = p ** N
    x = [v % q for v in x]
    for c, v, row in pivots:
        e = x[c]
        if e:
            f = e // p ** v
            x = [(a - f * b) % q for a, b in zip(x, row)]
    return x


def in_span(pivots: Sequence[Pivot], x: Sequence[int], p: int, N: int) -> bool:
    return not any(reduce_vector(pivots, x, p, N))


def left_kernel(images: Sequence[Sequence[int]], relations: Sequence[Sequence[int]],
                p: int, N: int) -> list[list[int]]:
    """Generators of {c : sum_i c_i images[i] in span(relations)} over Z/p^N.

    Row-reduces [images | I] stacked on [relations | 0] and keeps the rows
    whose left block vanished.
    """
    n = len(images)
    width = len(images[0]) if images else 0
    stacked = []
    for i, img in enumerate(images):
        unit = [0] * n
        unit[i] = 1
        stacked.append(list(img) + unit)
    for rel in relations:
        stacked.append(list(rel) + [0] * n)
    pivots = howell_form(stacked, p, N, width + n)
    return [row[width:] for c, v, row in pivots if c >= width]
