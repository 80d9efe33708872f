"""Small dense exact linear algebra over the rationals.

Everything works on lists of rows; entries may be ints or Fractions and
are coerced on first touch.  Sizes here are desk scale (a few hundred
rows at most), so plain Gaussian elimination is enough.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple


def rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def in_rowspan(rref_rows: Sequence[Sequence[Fraction]], pivots: Sequence[int], vector: Sequence) -> bool:
    """Membership test against a precomputed RREF."""
    v = [Fraction(x) for x in vector]
    for row, c in zip(rref_rows, pivots):
        if v[c]:
            f = v[c]
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> List[Tuple[int, ...]]:
    """Integer-cleared basis of {x : A x = 0} for A given by rows."""
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            vec[pc] = -row[fc]
        basis.append(integer_clear(vec))
    return basis


def integer_clear(vec: Sequence[Fraction]) -> Tuple[int, ...]:
    """Scale a rational vector to coprime integers, first nonzero > 0."""
    fracs = [Fraction(x) for x in vec]
    denom = 1
    for x in fracs:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def same_rowspan(rows_a: Sequence[Sequence], rows_b: Sequence[Sequence]) -> bool:
    return rref(rows_a)[0] == rref(rows_b)[0]


def intersect_rowspans(rows_a: Sequence[Sequence], rows_b: Sequence[Sequence]) -> List[Tuple[int, ...]]:
    """Basis of span(rows_a) & span(rows_b), integer-cleared."""
    a, _ = rref(rows_a)
    b, _ = rref(rows_b)
    if not a or not b:
        return []
    ncols = len(a[0])
    # (u, v) with u*A = v*B: kernel of the stacked transpose.
    stacked = [
        [a[i][c] for i in range(len(a))] + [-b[j][c] for j in range(len(b))]
        for c in range(ncols)
    ]
    out = []
    for vec in kernel_basis(stacked, len(a) + len(b)):
        u = vec[: len(a)]
        combo = [sum(Fraction(u[i]) * a[i][c] for i in range(len(a))) for c in range(ncols)]
        if any(combo):
            out.append(integer_clear(combo))
    reduced, _ = rref(out)
    return [integer_clear(r) for r in reduced]
