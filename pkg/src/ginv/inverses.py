"""Generalized inverses: inner, reflexive, outer, Moore-Penrose, group,
Drazin, weighted Moore-Penrose, plus projectors, rank complements and
structured block formulas.

Every constructor is deterministic: the canonical inner inverse comes
from the echelon transform, so repeated runs produce identical output.
"""

from dataclasses import dataclass

from .errors import (
    DrazinUnrepresentableError,
    IndexError_,
    MPNonexistentError,
    PreconditionError,
    ShapeError,
    WeightError,
)
from .matrices import (
    Matrix,
    block,
    block_diag,
    full_rank_factorization,
    hstack,
    inverse,
    rank,
    rref_rank,
    vstack,
)


@dataclass(frozen=True)
class InverseFamily:
    """The full solution set of AXA = A: base + F_A V + W E_A.

    F_A = I - XA and E_A = I - AX for the stored inner inverse, so any
    choice of V (n x m) and W (n x m) yields another inner inverse.
    """

    a: Matrix
    base: Matrix
    f_a: Matrix  # n x n
    e_a: Matrix  # m x m

    def member(self, v: Matrix, w: Matrix) -> Matrix:
        return self.base + self.f_a @ v + w @ self.e_a


def inner_inverse(a: Matrix) -> InverseFamily:
    """Canonical inner inverse with its free-parameter family.

    With T @ A in reduced echelon form, placing the first r rows of T at
    the pivot positions of an n x m zero matrix gives AXA = A over any
    field.
    """
    f = a.field
    ech = rref_rank(a)
    data = [f.zero] * (a.cols * a.rows)
    for k, pc in enumerate(ech.pivots):
        row = ech.transform.row_list(k)
        data[pc * a.rows : (pc + 1) * a.rows] = row
    base = Matrix(f, a.cols, a.rows, data)
    f_a = Matrix.identity(f, a.cols) - base @ a
    e_a = Matrix.identity(f, a.rows) - a @ base
    return InverseFamily(a, base, f_a, e_a)


def second_inner_inverse(a: Matrix) -> Matrix:
    """An inner inverse generically different from the canonical one.

    Used by invariance assertions that compare two independent choices.
    """
    fam = inner_inverse(a)
    f = a.field
    one = f.one
    v = Matrix(f, a.cols, a.rows,
               [one if (i + j) % 2 == 0 else f.zero
                for i in range(a.cols) for j in range(a.rows)])
    w = Matrix(f, a.cols, a.rows,
               [one if (i * 2 + j) % 3 == 0 else f.zero
                for i in range(a.cols) for j in range(a.rows)])
    return fam.member(v, w)


def projectors(a: Matrix, x: Matrix):
    """Oblique projectors (E, F) = (I - AX, I - XA) for an inner inverse X."""
    if a @ x @ a != a:
        raise PreconditionError("X is not an inner inverse of A")
    e = Matrix.identity(a.field, a.rows) - a @ x
    f = Matrix.identity(a.field, a.cols) - x @ a
    return e, f


def moore_penrose(a: Matrix) -> Matrix:
    """The Moore-Penrose inverse via full-rank factorization.

    Over involution-positive fields it always exists.  Over GF(p) the
    Gram matrices can be singular; then no matrix satisfies all four
    Penrose equations and MPNonexistentError is raised.
    """
    f = a.field
    fm, gm = full_rank_factorization(a)
    gg = gm @ gm.conj_transpose()
    ff = fm.conj_transpose() @ fm
    r = gg.rows
    if rank(gg) != r or rank(ff) != r:
        raise MPNonexistentError(
            f"A*A or AA* drops rank over {f.id}; no Moore-Penrose inverse")
    x = gm.conj_transpose() @ inverse(gg) @ inverse(ff) @ fm.conj_transpose()
    if not f.involution_positive:
        ax, xa = a @ x, x @ a
        if (a @ xa != a or x @ ax != x
                or ax.conj_transpose() != ax or xa.conj_transpose() != xa):
            raise MPNonexistentError(f"Penrose equations unsolvable over {f.id}")
    return x


def e_proj(a: Matrix) -> Matrix:
    """E_A = I - A A^+ (left annihilator projector)."""
    return Matrix.identity(a.field, a.rows) - a @ moore_penrose(a)


def f_proj(a: Matrix) -> Matrix:
    """F_A = I - A^+ A (right annihilator projector)."""
    return Matrix.identity(a.field, a.cols) - moore_penrose(a) @ a


def reflexive_inner(a: Matrix, v1: Matrix, v2: Matrix) -> Matrix:
    """A reflexive inner inverse (A~ - F_A V1) A (A~ - V2 E_A)."""
    fam = inner_inverse(a)
    left = fam.base - fam.f_a @ v1
    right = fam.base - v2 @ fam.e_a
    return left @ a @ right


def outer_from_triple(a: Matrix, b: Matrix, c: Matrix) -> Matrix:
    """(E_B A F_C)^+, an outer inverse of A for every B and C."""
    eb = e_proj(b)
    fc = f_proj(c)
    return moore_penrose(eb @ a @ fc)


def index(a: Matrix) -> int:
    """Smallest k >= 0 with r(A^{k+1}) = r(A^k); 0 for nonsingular A."""
    if not a.is_square():
        raise ShapeError("index of a non-square matrix")
    n = a.rows
    prev = n  # r(A^0)
    power = Matrix.identity(a.field, n)
    k = 0
    while True:
        power = power @ a
        cur = rank(power)
        if cur == prev:
            return k
        prev = cur
        k += 1


def drazin(a: Matrix) -> Matrix:
    """Drazin inverse A^k (A^{2k+1})~ A^k, verified against its axioms."""
    k = index(a)
    if k == 0:
        return inverse(a)
    ak = a ** k
    mid = inner_inverse(a ** (2 * k + 1)).base
    x = ak @ mid @ ak
    if (a ** (k + 1)) @ x != ak or x @ a @ x != x or a @ x != x @ a:
        raise DrazinUnrepresentableError(
            f"Drazin candidate fails its defining equations over {a.field.id}")
    return x


def group_inverse(a: Matrix) -> Matrix:
    k = index(a)
    if k > 1:
        raise IndexError_(f"group inverse needs index <= 1, got {k}")
    return drazin(a)


def is_hermitian(a: Matrix) -> bool:
    return a.is_square() and a.conj_transpose() == a


def _det(a: Matrix):
    """Exact determinant by Gaussian elimination."""
    f = a.field
    n = a.rows
    rows = [a.row_list(i) for i in range(n)]
    det = f.one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not f.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            return f.zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = f.neg(det)
        det = f.mul(det, rows[c][c])
        inv = f.inv(rows[c][c])
        for i in range(c + 1, n):
            factor = f.mul(rows[i][c], inv)
            if f.is_zero(factor):
                continue
            rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[c])]
    return det


def is_positive_definite(a: Matrix) -> bool:
    """Hermitian with all leading principal minors positive (exact)."""
    if not is_hermitian(a):
        return False
    f = a.field
    for k in range(1, a.rows + 1):
        minor = _det(a.extract((0, k), (0, k)))
        if f.id == "gaussian":
            re, im = minor
            if im != 0 or re <= 0:
                return False
        elif f.id == "rational":
            if minor <= 0:
                return False
        else:
            return False  # no order on GF(p)
    return True


def weighted_mp(a: Matrix, m: Matrix, n: Matrix) -> Matrix:
    """Weighted Moore-Penrose inverse for positive definite weights M, N.

    Uses the square-root-free closed form N^{-1} G* (F* M A N^{-1} G*)^{-1} F* M
    from the full-rank factorization A = FG, then re-verifies the four
    defining equations.
    """
    a.field.require_involution_positive("weighted Moore-Penrose inverse")
    if m.shape != (a.rows, a.rows) or n.shape != (a.cols, a.cols):
        raise ShapeError("weight shapes must match A")
    if not is_positive_definite(m) or not is_positive_definite(n):
        raise WeightError("weights must be Hermitian positive definite")
    fm, gm = full_rank_factorization(a)
    ninv = inverse(n)
    core = fm.conj_transpose() @ m @ a @ ninv @ gm.conj_transpose()
    x = ninv @ gm.conj_transpose() @ inverse(core) @ fm.conj_transpose() @ m
    max_ = m @ a @ x
    nxa = n @ x @ a
    if (a @ x @ a != a or x @ a @ x != x
            or max_.conj_transpose() != max_ or nxa.conj_transpose() != nxa):
        raise WeightError("weighted Moore-Penrose equations failed to verify")
    return x


def rank_complement(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
    """J(D) = [I - (CF_A)(CF_A)^+] (D - C A^+ B) [I - (E_A B)^+ (E_A B)]."""
    ad = moore_penrose(a)
    fa = Matrix.identity(a.field, a.cols) - ad @ a
    ea = Matrix.identity(a.field, a.rows) - a @ ad
    cfa = c @ fa
    eab = ea @ b
    s = d - c @ ad @ b
    left = Matrix.identity(a.field, c.rows) - cfa @ moore_penrose(cfa)
    right = Matrix.identity(a.field, b.cols) - moore_penrose(eab) @ eab
    return left @ s @ right


def rank_additivity_holds(a, b, c, d) -> str | None:
    """Check condition (9.22); returns the failing equality name or None."""
    m = block([[a, b], [c, d]])
    rm = rank(m)
    col_split = rank(vstack(a, c)) + rank(vstack(b, d))
    row_split = rank(hstack(a, b)) + rank(hstack(c, d))
    if rm != col_split:
        return f"r(M) = {rm} != r[A;C] + r[B;D] = {col_split}"
    if rm != row_split:
        return f"r(M) = {rm} != r[A,B] + r[C,D] = {row_split}"
    return None


def block_mp_2x2(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
    """M^+ of [[A,B],[C,D]] under rank additivity of rows and columns."""
    failing = rank_additivity_holds(a, b, c, d)
    if failing is not None:
        raise PreconditionError(f"rank additivity violated: {failing}")
    f = a.field
    ad = moore_penrose(a)
    i_m = Matrix.identity(f, a.rows)
    i_n = Matrix.identity(f, a.cols)
    b1 = (i_m - a @ ad) @ b
    c1 = c @ (i_n - ad @ a)
    s = d - c @ ad @ b
    jd = (Matrix.identity(f, c.rows) - c1 @ moore_penrose(c1)) @ s \
        @ (Matrix.identity(f, b.cols) - moore_penrose(b1) @ b1)
    jdd = moore_penrose(jd)
    b1d = moore_penrose(b1)
    c1d = moore_penrose(c1)
    h1 = ad + c1d @ (s @ jdd @ s - s) @ b1d
    h2 = c1d @ (Matrix.identity(f, s.rows) - s @ jdd)
    h3 = (Matrix.identity(f, s.cols) - jdd @ s) @ b1d
    top_left = h1 - h2 @ c @ ad - ad @ b @ h3 + ad @ b @ jdd @ c @ ad
    top_right = h2 - ad @ b @ jdd
    bot_left = h3 - jdd @ c @ ad
    return block([[top_left, top_right], [bot_left, jdd]])


def bordered_mp(a: Matrix, b: Matrix, c: Matrix) -> Matrix:
    """M^+ of the bordered matrix [[A,B],[C,0]] under rank additivity.

    Requires r(M) = r[A;C] + r(B) = r[A,B] + r(C).
    """
    f = a.field
    m = block([[a, b], [c, Matrix.zeros(f, c.rows, b.cols)]])
    rm = rank(m)
    lhs = rank(vstack(a, c)) + rank(b)
    rhs = rank(hstack(a, b)) + rank(c)
    if rm != lhs or rm != rhs:
        raise PreconditionError(
            f"bordered rank additivity fails: r(M)={rm}, r[A;C]+r(B)={lhs}, r[A,B]+r(C)={rhs}")
    bd = moore_penrose(b)
    cd = moore_penrose(c)
    eb = Matrix.identity(f, a.rows) - b @ bd
    fc = Matrix.identity(f, a.cols) - cd @ c
    nd = moore_penrose(eb @ a @ fc)
    top_left = nd
    top_right = cd - nd @ a @ cd
    bot_left = bd - bd @ a @ nd
    bot_right = bd @ a @ nd @ a @ cd - bd @ a @ cd
    return block([[top_left, top_right], [bot_left, bot_right]])


def circulant_matrix(mats) -> Matrix:
    """Block circulant with first block row A_1 ... A_k."""
    k = len(mats)
    grid = [[mats[(j - i) % k] for j in range(k)] for i in range(k)]
    return block(grid)


def sum_mp_via_circulant(mats) -> Matrix:
    """(A_1 + ... + A_k)^+ assembled from the block-circulant inverse."""
    if not mats:
        raise ShapeError("need at least one matrix")
    f = mats[0].field
    f.require_involution_positive("circulant sum formula (needs 1/k)")
    k = len(mats)
    m, n = mats[0].rows, mats[0].cols
    circ = circulant_matrix(mats)
    circ_mp = moore_penrose(circ)
    left = hstack(*[Matrix.identity(f, n) for _ in range(k)])
    right = vstack(*[Matrix.identity(f, m) for _ in range(k)])
    return (left @ circ_mp @ right).scale(f.inv(f.from_int(k)))


def diag_mp(mats) -> Matrix:
    """Moore-Penrose inverse of diag(A_1, ..., A_k)."""
    field = mats[0].field
    return block_diag(field, [moore_penrose(m) for m in mats])
