"""Dense exact matrices over one scalar field.

Matrices are immutable values: row-major tuples of raw field values
plus a field reference.  Zero-row and zero-column matrices are legal
everywhere; empty factors implement the rank-0 conventions the block
and completion machinery relies on.
"""

from dataclasses import dataclass

from .errors import FieldMismatchError, ShapeError
from .fields import Field


class Matrix:
    __slots__ = ("field", "rows", "cols", "data", "_rank")

    def __init__(self, field: Field, rows: int, cols: int, data):
        data = tuple(data)
        if rows < 0 or cols < 0 or len(data) != rows * cols:
            raise ShapeError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(data)}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data
        self._rank = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_rows(cls, field, rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        flat = []
        for row in rows_list:
            if len(row) != cols:
                raise ShapeError("ragged row list")
            flat.extend(row)
        return cls(field, rows, cols, flat)

    @classmethod
    def from_ints(cls, field, rows_list):
        return cls.from_rows(field, [[field.from_int(x) for x in row] for row in rows_list])

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, n, n, [o if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def scalar(cls, field, value):
        return cls(field, 1, 1, [value])

    @classmethod
    def random(cls, field, rows, cols, rng):
        return cls(field, rows, cols, [field.random(rng) for _ in range(rows * cols)])

    # -- basics -----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.render(self.get(i, j)) for j in range(self.cols))
            for i in range(self.rows)
        )
        return f"Matrix({self.field.id} {self.rows}x{self.cols}: {body})"

    @property
    def shape(self):
        return (self.rows, self.cols)

    def get(self, i, j):
        return self.data[i * self.cols + j]

    def row_list(self, i):
        return list(self.data[i * self.cols : (i + 1) * self.cols])

    def to_lists(self):
        return [self.row_list(i) for i in range(self.rows)]

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        f = self.field
        return all(f.is_zero(x) for x in self.data)

    def _check_same_field(self, other):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.id} vs {other.field.id}")

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"add {self.shape} vs {other.shape}")
        f = self.field
        return Matrix(self.field, self.rows, self.cols,
                      [f.add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"sub {self.shape} vs {other.shape}")
        f = self.field
        return Matrix(self.field, self.rows, self.cols,
                      [f.sub(a, b) for a, b in zip(self.data, other.data)])

    def __neg__(self):
        f = self.field
        return Matrix(self.field, self.rows, self.cols, [f.neg(a) for a in self.data])

    def scale(self, c):
        f = self.field
        return Matrix(self.field, self.rows, self.cols, [f.mul(c, a) for a in self.data])

    def __matmul__(self, other):
        self._check_same_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"matmul {self.shape} @ {other.shape}")
        f = self.field
        m, k, n = self.rows, self.cols, other.cols
        a, b = self.data, other.data
        out = [f.zero] * (m * n)
        for i in range(m):
            arow = a[i * k : (i + 1) * k]
            orow = i * n
            for t in range(k):
                av = arow[t]
                if f.is_zero(av):
                    continue
                brow = t * n
                for j in range(n):
                    bv = b[brow + j]
                    if not f.is_zero(bv):
                        out[orow + j] = f.add(out[orow + j], f.mul(av, bv))
        return Matrix(self.field, m, n, out)

    def __pow__(self, k: int):
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self):
        return Matrix(self.field, self.cols, self.rows,
                      [self.get(i, j) for j in range(self.cols) for i in range(self.rows)])

    def conj_transpose(self):
        f = self.field
        return Matrix(self.field, self.cols, self.rows,
                      [f.conj(self.get(i, j)) for j in range(self.cols) for i in range(self.rows)])

    def conj(self):
        f = self.field
        return Matrix(self.field, self.rows, self.cols, [f.conj(a) for a in self.data])

    # -- block structure -----------------------------------------------------
    def extract(self, row_range, col_range):
        """Submatrix for ranges given as (start, stop) pairs."""
        r0, r1 = row_range
        c0, c1 = col_range
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise ShapeError("extract range out of bounds")
        return Matrix(self.field, r1 - r0, c1 - c0,
                      [self.get(i, j) for i in range(r0, r1) for j in range(c0, c1)])

    def vec(self):
        """Column-major vectorization as an (rows*cols) x 1 matrix."""
        return Matrix(self.field, self.rows * self.cols, 1,
                      [self.get(i, j) for j in range(self.cols) for i in range(self.rows)])

    def unvec(self, rows, cols):
        """Inverse of vec for a column vector of length rows*cols."""
        if self.cols != 1 or self.rows != rows * cols:
            raise ShapeError("unvec shape mismatch")
        return Matrix(self.field, rows, cols,
                      [self.data[j * rows + i] for i in range(rows) for j in range(cols)])


def block(grid):
    """Assemble a matrix from a rectangular grid of conformable blocks."""
    if not grid or not grid[0]:
        raise ShapeError("empty block grid")
    field = grid[0][0].field
    ncols_per = [b.cols for b in grid[0]]
    rows_out = []
    for grow in grid:
        if len(grow) != len(ncols_per):
            raise ShapeError("ragged block grid")
        height = grow[0].rows
        for b, w in zip(grow, ncols_per):
            if b.field != field:
                raise FieldMismatchError("blocks over different fields")
            if b.rows != height or b.cols != w:
                raise ShapeError("non-conformable block")
        for i in range(height):
            row = []
            for b in grow:
                row.extend(b.row_list(i))
            rows_out.append(row)
    total_cols = sum(ncols_per)
    flat = [x for row in rows_out for x in row]
    return Matrix(field, len(rows_out), total_cols, flat)


def hstack(*mats):
    return block([list(mats)])


def vstack(*mats):
    return block([[m] for m in mats])


def block_diag(field, mats):
    """diag(A_1, ..., A_k); accepts the empty list."""
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = Matrix.zeros(field, rows, cols)
    data = list(out.data)
    r = c = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                data[(r + i) * cols + (c + j)] = m.get(i, j)
        r += m.rows
        c += m.cols
    return Matrix(field, rows, cols, data)


def kron(a: Matrix, b: Matrix) -> Matrix:
    a._check_same_field(b)
    f = a.field
    rows, cols = a.rows * b.rows, a.cols * b.cols
    data = [f.zero] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            av = a.get(i, j)
            if f.is_zero(av):
                continue
            ro, co = i * b.rows, j * b.cols
            for p in range(b.rows):
                for q in range(b.cols):
                    data[(ro + p) * cols + (co + q)] = f.mul(av, b.get(p, q))
    return Matrix(f, rows, cols, data)


@dataclass(frozen=True)
class EchelonResult:
    rref: Matrix
    rank: int
    pivots: tuple
    transform: Matrix  # invertible; transform @ input == rref


def rref_rank(a: Matrix) -> EchelonResult:
    """Reduced row echelon form with the left transform recorded.

    Pivot choice is the first nonzero entry in column order, which makes
    every downstream construction deterministic.
    """
    f = a.field
    m, n = a.rows, a.cols
    rows = [a.row_list(i) for i in range(m)]
    trans = [[f.one if i == j else f.zero for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pivot = None
        for i in range(r, m):
            if not f.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        trans[r], trans[pivot] = trans[pivot], trans[r]
        pv = f.inv(rows[r][c])
        if pv != f.one:
            rows[r] = [f.mul(pv, x) for x in rows[r]]
            trans[r] = [f.mul(pv, x) for x in trans[r]]
        for i in range(m):
            if i == r:
                continue
            factor = rows[i][c]
            if f.is_zero(factor):
                continue
            rrow, rtr = rows[r], trans[r]
            rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rrow)]
            trans[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(trans[i], rtr)]
        pivots.append(c)
        r += 1
    rref = Matrix(f, m, n, [x for row in rows for x in row])
    transform = Matrix(f, m, m, [x for row in trans for x in row])
    return EchelonResult(rref, r, tuple(pivots), transform)


def rank(a: Matrix) -> int:
    if a._rank is None:
        a._rank = rref_rank(a).rank
    return a._rank


def null_space_basis(a: Matrix) -> Matrix:
    """Columns form a basis of the right null space; a @ result == 0."""
    f = a.field
    ech = rref_rank(a)
    pivset = set(ech.pivots)
    free = [j for j in range(a.cols) if j not in pivset]
    cols = []
    for fc in free:
        v = [f.zero] * a.cols
        v[fc] = f.one
        for k, pc in enumerate(ech.pivots):
            v[pc] = f.neg(ech.rref.get(k, fc))
        cols.append(v)
    return Matrix(f, a.cols, len(free),
                  [cols[j][i] for i in range(a.cols) for j in range(len(free))])


def full_rank_factorization(a: Matrix):
    """A = F @ G with F of full column rank r(A), G of full row rank."""
    ech = rref_rank(a)
    r = ech.rank
    fcols = [[a.get(i, p) for p in ech.pivots] for i in range(a.rows)]
    fmat = Matrix(a.field, a.rows, r, [x for row in fcols for x in row])
    gmat = ech.rref.extract((0, r), (0, a.cols))
    return fmat, gmat


def inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise ShapeError("inverse of a non-square matrix")
    ech = rref_rank(a)
    if ech.rank != a.rows:
        raise ShapeError("matrix is singular")
    return ech.transform


def solve_right(a: Matrix, b: Matrix):
    """One exact solution X of A @ X = B, or None when inconsistent."""
    a._check_same_field(b)
    if a.rows != b.rows:
        raise ShapeError(f"solve {a.shape} X = {b.shape}")
    f = a.field
    ech = rref_rank(a)
    c = ech.transform @ b
    for i in range(ech.rank, a.rows):
        for j in range(b.cols):
            if not f.is_zero(c.get(i, j)):
                return None
    x = Matrix.zeros(f, a.cols, b.cols)
    data = list(x.data)
    for k, pc in enumerate(ech.pivots):
        for j in range(b.cols):
            data[pc * b.cols + j] = c.get(k, j)
    return Matrix(f, a.cols, b.cols, data)


def linear_matrix_solve(terms, a: Matrix):
    """One exact solution of sum_i B_i X_i C_i = A via vectorization.

    Returns a tuple of X_i, or None when the equation is inconsistent.
    This is the oracle every closed-form consistency criterion is
    checked against.
    """
    if not terms:
        raise ShapeError("no terms")
    blocks = []
    shapes = []
    for b, c in terms:
        if b.field != a.field or c.field != a.field:
            raise FieldMismatchError("mixed fields in equation")
        if b.rows != a.rows or c.cols != a.cols:
            raise ShapeError(
                f"term ({b.shape}, {c.shape}) not conformable with A {a.shape}")
        blocks.append(kron(c.transpose(), b))
        shapes.append((b.cols, c.rows))
    big = hstack(*blocks)
    sol = solve_right(big, a.vec())
    if sol is None:
        return None
    out = []
    offset = 0
    for (p, q) in shapes:
        piece = sol.extract((offset, offset + p * q), (0, 1))
        out.append(piece.unvec(p, q))
        offset += p * q
    return tuple(out)


def subspace_intersection_dim(mats) -> int:
    """dim of the intersection of the column spaces of the given matrices."""
    mats = list(mats)
    if not mats:
        raise ShapeError("need at least one matrix")
    m = mats[0].rows
    field = mats[0].field
    for a in mats:
        if a.rows != m:
            raise ShapeError("row counts differ")
        if a.field != field:
            raise FieldMismatchError("mixed fields")
    n = block_diag(field, mats)
    q = vstack(*[Matrix.identity(field, m) for _ in mats])
    return rank(n) + rank(q) - rank(hstack(n, q))
