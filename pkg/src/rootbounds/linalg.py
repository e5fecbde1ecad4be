"""Small exact linear algebra over the rationals and integers.

Everything here works on tuples/lists of Fractions or ints and performs no
rounding: Gaussian elimination for rank/solve/det, Bareiss fraction-free
elimination for integer systems, and a tiny phase-one simplex used for exact
feasibility questions in low dimension.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, ...]


def to_vec(xs: Sequence) -> Vector:
    return tuple(Fraction(x) for x in xs)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vec_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(c: Fraction, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def mat_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    col = 0
    while rank < nrows and col < ncols:
        pivot = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        m[rank] = [x / pv for x in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        pv = m[col][col]
        result *= pv
        inv = 1 / pv
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return result


def solve_square(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector | None:
    """Solve A x = b exactly for square A; None when A is singular."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(rhs[i])] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def solve_integer_bareiss(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> Vector:
    """Fraction-free solve of an integer square system (must be nonsingular)."""
    n = len(rows)
    m = [[int(x) for x in r] + [int(rhs[i])] for i, r in enumerate(rows)]
    sign = 1
    prev = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular integer system")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n + 1):
                m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) // prev
            m[r][col] = 0
        prev = m[col][col]
    d = sign * prev  # determinant
    # back substitution over rationals on the triangularized system
    x: list[Fraction] = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = Fraction(m[r][n]) - sum(Fraction(m[r][c]) * x[c] for c in range(r + 1, n))
        x[r] = s / m[r][r]
    if d == 0:
        raise ValueError("singular integer system")
    return tuple(x)


def gram_solve(basis: Sequence[Vector], target: Sequence[Fraction]) -> Vector:
    """Coefficients y with (B^T B) y = target for independent columns B."""
    g = [[dot(bi, bj) for bj in basis] for bi in basis]
    y = solve_square(g, list(target))
    if y is None:
        raise ValueError("gram matrix singular: basis not independent")
    return y


# ---------------------------------------------------------------------------
# Exact phase-one simplex feasibility
# ---------------------------------------------------------------------------


def _phase_one_feasible(eq_rows: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    # Feasibility of {x >= 0 : M x = q} with q >= 0, via artificial variables
    # and Bland's rule.
    nrows = len(eq_rows)
    if nrows == 0:
        return True
    ncols = len(eq_rows[0])
    # tableau columns: original vars, artificials, rhs
    total = ncols + nrows
    tab = [row[:] + [Fraction(0)] * nrows + [rhs[i]] for i, row in enumerate(eq_rows)]
    for i in range(nrows):
        tab[i][ncols + i] = Fraction(1)
    basis = [ncols + i for i in range(nrows)]
    # objective: minimize sum of artificials; reduced costs via z-row
    z = [Fraction(0)] * (total + 1)
    for i in range(nrows):
        for c in range(total + 1):
            z[c] += tab[i][c]
    # artificial columns start with cost contribution 1 each; subtract basis cost
    for i in range(nrows):
        z[ncols + i] -= Fraction(1)

    max_pivots = 200 * (total + nrows + 1)
    for _ in range(max_pivots):
        enter = next((c for c in range(total) if z[c] > 0), None)
        if enter is None:
            break
        ratios = [
            (tab[r][total] / tab[r][enter], basis[r], r)
            for r in range(nrows)
            if tab[r][enter] > 0
        ]
        if not ratios:
            raise ArithmeticError("phase-one objective unbounded; malformed tableau")
        _, _, leave = min(ratios, key=lambda t: (t[0], t[1]))
        pv = tab[leave][enter]
        tab[leave] = [x / pv for x in tab[leave]]
        for r in range(nrows):
            if r != leave and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[leave])]
        f = z[enter]
        z = [x - f * y for x, y in zip(z, tab[leave])]
        basis[leave] = enter
    else:
        raise ArithmeticError("simplex failed to terminate")
    return z[total] == 0


def in_convex_hull(points: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> bool:
    """Exact test for target in conv(points), via phase-one simplex on the
    convex-combination equalities."""
    pts = [to_vec(p) for p in points]
    tv = to_vec(target)
    if not pts:
        return False
    d = len(tv)
    eq_rows: list[list[Fraction]] = []
    q: list[Fraction] = []
    for i in range(d):
        row = [p[i] for p in pts]
        rhs_i = tv[i]
        if rhs_i < 0:
            row = [-x for x in row]
            rhs_i = -rhs_i
        eq_rows.append(row)
        q.append(rhs_i)
    eq_rows.append([Fraction(1)] * len(pts))
    q.append(Fraction(1))
    return _phase_one_feasible(eq_rows, q)


def nonneg_solution_exists(
    constraint_rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
) -> bool:
    """Exact feasibility of {y >= 0 : row . y >= rhs_j for every row}.

    Decided through the Gale/Farkas alternative: the system is infeasible
    exactly when some nonnegative combination lambda of the rows has
    componentwise-nonpositive sum but positive combined rhs.  The alternative
    is itself checked with a phase-one simplex whose row count is the
    (small) variable dimension, keeping the tableau tiny even for many
    constraints.
    """
    rows = [to_vec(r) for r in constraint_rows]
    c = to_vec(rhs)
    if not rows:
        return True
    n = len(rows[0])
    k = len(rows)
    # Alternative system: lambda >= 0, sum lambda_j d_j + s = 0 (s >= 0 slack),
    # sum lambda_j c_j = 1.
    eq_rows: list[list[Fraction]] = []
    q: list[Fraction] = []
    for i in range(n):
        row = [rows[j][i] for j in range(k)] + [Fraction(0)] * n
        row[k + i] = Fraction(1)
        # flip rows so the rhs is 0 with sum <= 0 encoded as equality+slack
        eq_rows.append(row)
        q.append(Fraction(0))
    eq_rows.append([c[j] for j in range(k)] + [Fraction(0)] * n)
    q.append(Fraction(1))
    farkas = _phase_one_feasible(eq_rows, q)
    return not farkas
