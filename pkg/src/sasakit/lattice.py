"""Exact integer and rational linear algebra.

Everything here runs on Python ints and fractions.Fraction, so results are
exact at any magnitude.  This is the engine behind every lattice verdict in
the package: Smith normal forms, primitivity, unimodular completions, and
saturation of sublattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


IntVector = tuple[int, ...]


def _as_int_vector(v) -> IntVector:
    out = tuple(int(x) for x in v)
    if any(x != y for x, y in zip(out, v)):
        raise ValueError(f"non-integer entry in {tuple(v)}")
    return out


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[IntVector, ...]

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        data = tuple(_as_int_vector(r) for r in rows)
        if not data or not data[0]:
            raise ValueError("matrix must be nonempty")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return IntMatrix(len(data), ncols, data)

    @staticmethod
    def from_columns(cols) -> "IntMatrix":
        return IntMatrix.from_rows(list(zip(*[_as_int_vector(c) for c in cols])))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.entries))
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries]
        )

    def mul_vector(self, v) -> IntVector:
        v = _as_int_vector(v)
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(list(zip(*self.entries)))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def inverse_unimodular(self) -> "IntMatrix":
        """Exact integer inverse; requires |det| = 1."""
        d = self.det()
        if d not in (1, -1):
            raise ValueError(f"matrix is not unimodular (det = {d})")
        n = self.rows
        cols = []
        for j in range(n):
            e = [Fraction(1 if i == j else 0) for i in range(n)]
            sol = solve_rational([list(map(Fraction, r)) for r in self.entries], e)
            cols.append([int(x) for x in sol])
        return IntMatrix.from_columns(cols)

    def column(self, j: int) -> IntVector:
        return tuple(r[j] for r in self.entries)

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )


@dataclass(frozen=True)
class SnfDecomposition:
    """Smith normal form data: U @ M @ V == D with U, V unimodular."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> IntVector:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D.entries[i][i] for i in range(n))

    @property
    def invariant_factors(self) -> IntVector:
        """Nonunit diagonal entries, i.e. the torsion of the cokernel."""
        return tuple(d for d in self.diagonal if d not in (0, 1))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def verify(self, M: IntMatrix) -> bool:
        if (self.U @ M @ self.V).entries != self.D.entries:
            return False
        if abs(self.U.det()) != 1 or abs(self.V.det()) != 1:
            return False
        if not self.D.is_diagonal():
            return False
        diag = self.diagonal
        if any(d < 0 for d in diag):
            return False
        for a, b in zip(diag, diag[1:]):
            if a == 0 and b != 0:
                return False
            if a != 0 and b % a != 0:
                return False
        return True


def _pivot(m, t, rows, cols):
    # smallest absolute value wins; ties broken by lowest row, then column
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            if m[i][j] != 0:
                key = (abs(m[i][j]), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(M: IntMatrix) -> SnfDecomposition:
    """Smith normal form over the integers.

    Returns U, D, V with U @ M @ V == D, U and V unimodular, D diagonal with
    nonnegative entries forming a divisibility chain d1 | d2 | ...
    """
    rows, cols = M.rows, M.cols
    d = [list(r) for r in M.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_swap(a, b):
        d[a], d[b] = d[b], d[a]
        u[a], u[b] = u[b], u[a]

    def col_swap(a, b):
        for r in d:
            r[a], r[b] = r[b], r[a]
        for r in v:
            r[a], r[b] = r[b], r[a]

    def row_add(dst, src, c):
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def col_add(dst, src, c):
        for r in d:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def row_neg(a):
        d[a] = [-x for x in d[a]]
        u[a] = [-x for x in u[a]]

    n = min(rows, cols)
    t = 0
    while t < n:
        loc = _pivot(d, t, rows, cols)
        if loc is None:
            break
        i, j = loc
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            # clear column t below the pivot
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    if q:
                        row_add(i, t, -q)
                    if d[i][t] != 0:
                        row_swap(i, t)
                        dirty = True
            if dirty:
                continue
            # clear row t right of the pivot
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    if q:
                        col_add(j, t, -q)
                    if d[t][j] != 0:
                        col_swap(j, t)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the whole remaining block
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % d[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if d[t][t] < 0:
            row_neg(t)
        t += 1

    snf = SnfDecomposition(
        U=IntMatrix.from_rows(u), D=IntMatrix.from_rows(d), V=IntMatrix.from_rows(v)
    )
    assert snf.verify(M), "internal error: SNF failed remultiplication check"
    return snf


def vector_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def is_primitive(v) -> bool:
    """True iff the gcd of the entries is 1.  Rejects the zero vector."""
    v = _as_int_vector(v)
    g = vector_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return g == 1


def make_primitive(v) -> IntVector:
    v = _as_int_vector(v)
    g = vector_gcd(v)
    if g == 0:
        raise ValueError("zero vector")
    return tuple(x // g for x in v)


def complete_to_unimodular(v) -> IntMatrix:
    """Find A in SL(n, Z) with A @ v == (-1, 0, ..., 0).

    The sign convention targets -1 in the leading slot.  Requires a primitive
    vector of length at least 2; in rank 1 no SL(1, Z) element can flip sign.
    """
    v = _as_int_vector(v)
    if len(v) < 2:
        raise ValueError("need at least 2 components to complete to SL(n, Z)")
    if not is_primitive(v):
        raise ValueError(f"{v} is not primitive")
    column = IntMatrix.from_rows([[x] for x in v])
    snf = smith_normal_form(column)
    a = [list(r) for r in snf.U.entries]
    image = [sum(c * x for c, x in zip(row, v)) for row in a]
    assert image[0] in (1, -1) and all(x == 0 for x in image[1:])
    if image[0] == 1:
        a[0] = [-x for x in a[0]]
    A = IntMatrix.from_rows(a)
    if A.det() == -1:
        a[1] = [-x for x in a[1]]
        A = IntMatrix.from_rows(a)
    assert A.det() == 1
    assert A.mul_vector(v) == tuple([-1] + [0] * (len(v) - 1))
    return A


def sublattice_saturation_equal(vectors) -> bool:
    """Decide whether the given integer vectors span a saturated sublattice.

    True iff they are linearly independent over Z and every lattice point of
    their real span is already an integer combination of them, which is
    equivalent to all Smith invariant factors of the column matrix being 1.
    """
    cols = [_as_int_vector(v) for v in vectors]
    if not cols:
        raise ValueError("need at least one vector")
    M = IntMatrix.from_columns(cols)
    snf = smith_normal_form(M)
    if snf.rank != len(cols):
        return False
    return all(x == 1 for x in snf.diagonal[: len(cols)])


# --- exact rational elimination -------------------------------------------

def solve_rational(a, b):
    """Solve a @ x = b over Fraction.  Raises if singular or inconsistent.

    `a` is a list of rows; the system may be overdetermined as long as it is
    consistent and of full column rank.
    """
    rows = [list(map(Fraction, r)) + [Fraction(x)] for r, x in zip(a, b)]
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    if len(pivots) < ncols:
        raise ValueError("system is rank deficient")
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            raise ValueError("system is inconsistent")
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x


def rational_rank(a) -> int:
    rows = [list(map(Fraction, r)) for r in a]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def rational_kernel_basis(a):
    """Basis of the right kernel of `a` over Fraction."""
    rows = [list(map(Fraction, r)) for r in a]
    ncols = len(rows[0])
    pivots = {}
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        pivots[c] = rank
        rank += 1
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for c, r in pivots.items():
            vec[c] = -rows[r][f]
        basis.append(vec)
    return basis
