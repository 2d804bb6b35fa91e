"""Small exact linear-algebra helpers over the rationals and integers.

Vectors are plain tuples. Rational entries are ``fractions.Fraction``;
integer-valued vectors are tuples of ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Vec = tuple
Rat = Fraction


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def vec_gcd(a: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in a), 0)


def primitive(a: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in a]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = vec_gcd(ints)
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(x // g for x in ints)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Rational basis of {x : row . x = 0 for all rows}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def canonical_subspace(rows: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """A hashable canonical form of the row space."""
    return tuple(tuple(r) for r in rref(rows)[0]) if rows else ()


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """One solution x of matrix @ x = rhs, or None when inconsistent."""
    ncols = len(matrix[0])
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return tuple(x)


def integer_kernel(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """A Z-basis of the saturated lattice {x in Z^n : rows . x = 0}.

    Rational rows are cleared of denominators, then unimodular column
    operations bring the matrix to column echelon form; the transformed
    unit vectors sitting over zero columns span the kernel.
    """
    mat = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = reduce(lcm, (x.denominator for x in fr), 1)
        mat.append([int(x * den) for x in fr])
    n = ncols
    # columns of mat, each paired with a column of the unimodular transform
    cols = [[mat[i][j] for i in range(len(mat))] for j in range(n)]
    trans = [[int(i == j) for i in range(n)] for j in range(n)]
    lead = 0
    for i in range(len(mat)):
        # euclid on row i over columns lead..n-1
        while True:
            nz = [j for j in range(lead, n) if cols[j][i] != 0]
            if len(nz) <= 1:
                break
            jmin = min(nz, key=lambda j: abs(cols[j][i]))
            for j in nz:
                if j == jmin:
                    continue
                q = cols[j][i] // cols[jmin][i]
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[jmin])]
                trans[j] = [a - q * b for a, b in zip(trans[j], trans[jmin])]
        nz = [j for j in range(lead, n) if cols[j][i] != 0]
        if nz:
            j = nz[0]
            cols[lead], cols[j] = cols[j], cols[lead]
            trans[lead], trans[j] = trans[j], trans[lead]
            lead += 1
    return [tuple(trans[j]) for j in range(lead, n)]


def det2(a: Sequence, b: Sequence):
    return a[0] * b[1] - a[1] * b[0]


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
