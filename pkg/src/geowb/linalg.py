"""Small dense linear algebra over exact scalars.

Gaussian elimination over the field Q[i] (or plain Fractions).  Matrices
are lists of row lists.  Sizes here are tiny (dimensions of invariant-form
spaces, at most a few hundred), so straightforward row reduction is
plenty; the float counterparts live in numpy and are used only on the
float backend.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussRational


def _is_zero(x) -> bool:
    return not x


def rref(matrix):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not _is_zero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not _is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix) -> int:
    _, pivots = rref(matrix)
    return len(pivots)


def solve(matrix, rhs):
    """One solution of A x = b, or None if inconsistent.

    ``matrix`` is m x k, ``rhs`` a length-m vector.
    """
    m = len(matrix)
    if m == 0:
        return []
    k = len(matrix[0])
    augmented = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    rows, pivots = rref(augmented)
    if k in pivots:
        return None  # pivot in the rhs column
    zero = _zero_like(matrix)
    solution = [zero] * k
    for r, c in enumerate(pivots):
        solution[c] = rows[r][k]
    return solution


def nullspace(matrix):
    """Basis of the kernel of A (list of length-k vectors)."""
    if not matrix:
        return []
    k = len(matrix[0])
    rows, pivots = rref(matrix)
    zero = _zero_like(matrix)
    one = zero + 1
    free = [c for c in range(k) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * k
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def column_space_basis(columns):
    """Independent subset spanning the given column vectors."""
    basis = []
    rows: list[list] = []
    pivots: list[int] = []
    for col in columns:
        candidate = rows + [list(col)]
        new_rows, new_pivots = rref(candidate)
        if len(new_pivots) > len(pivots):
            basis.append(list(col))
            rows, pivots = new_rows, new_pivots
    return basis


def _zero_like(matrix):
    for row in matrix:
        for x in row:
            if isinstance(x, GaussRational):
                return GaussRational(0)
            if isinstance(x, Fraction):
                return Fraction(0)
            return type(x)(0)
    return Fraction(0)


def matvec(matrix, vec):
    return [sum_product(row, vec) for row in matrix]


def sum_product(row, vec):
    total = None
    for a, b in zip(row, vec):
        term = a * b
        total = term if total is None else total + term
    if total is None:
        return Fraction(0)
    return total
