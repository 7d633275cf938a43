"""Linear matrix equations and extreme ranks of linear expressions.

Covers consistency verdicts and general-solution families for BXC = A
and its multi-term relatives, extreme ranks of A - BXC and
A - B1 X1 C1 - B2 X2 C2 with achieving witnesses, shorted matrices and
parallel sums.  Every extreme-rank routine verifies its witnesses by
direct evaluation before returning.
"""

from dataclasses import dataclass, field as dc_field

from .errors import (
    InternalInvariantError,
    PreconditionError,
    ShapeError,
    UnsupportedStructureError,
    UsageError,
)
from .fields import field_by_name
from .matrices import (
    Matrix,
    block,
    block_diag,
    full_rank_factorization,
    hstack,
    kron,
    linear_matrix_solve,
    rank,
    solve_right,
    subspace_intersection_dim,
    vstack,
)
from .inverses import inner_inverse, second_inner_inverse
from .rng import Rng, mix_key


# ---------------------------------------------------------------------------
# solution families


@dataclass(frozen=True)
class SolutionFamily:
    """All solutions of a linear matrix equation: particular + sum L_i U_i R_i.

    The U_i range freely over matrices of the recorded shapes.  A family
    with no effective freedom (every L_i U_i R_i is forced to zero)
    describes a unique solution.
    """

    particular: Matrix
    terms: tuple  # of (left: Matrix, (rows, cols), right: Matrix)

    def instantiate(self, frees) -> Matrix:
        if len(frees) != len(self.terms):
            raise ShapeError(f"expected {len(self.terms)} free matrices")
        x = self.particular
        for (left, shape, right), u in zip(self.terms, frees):
            if u.shape != shape:
                raise ShapeError(f"free matrix must be {shape}, got {u.shape}")
            x = x + left @ u @ right
        return x

    def random_member(self, rng: Rng) -> Matrix:
        f = self.particular.field
        frees = [Matrix.random(f, r, c, rng) for (_, (r, c), _) in self.terms]
        return self.instantiate(frees)

    @property
    def unique(self) -> bool:
        return all(rank(left) == 0 or rank(right) == 0
                   for (left, _, right) in self.terms)


def _inner(a: Matrix):
    """Canonical inner inverse with its two annihilator projectors."""
    fam = inner_inverse(a)
    return fam.base, fam.e_a, fam.f_a  # E = I - A A~, F = I - A~ A


def solve_bxc(a: Matrix, b: Matrix, c: Matrix):
    """General solution of B X C = A, or None when inconsistent.

    The family is B~ A C~ + F_B V + W E_C over free V and W.
    """
    if b.rows != a.rows or c.cols != a.cols:
        raise ShapeError(f"B {b.shape} X C {c.shape} = A {a.shape}")
    b0, _, fb = _inner(b)
    c0, ec, _ = _inner(c)
    if b @ (b0 @ a @ c0) @ c != a:
        return None
    k, l = b.cols, c.rows
    return SolutionFamily(
        particular=b0 @ a @ c0,
        terms=((fb, (k, l), Matrix.identity(a.field, l)),
               (Matrix.identity(a.field, k), (k, l), ec)),
    )


# ---------------------------------------------------------------------------
# extreme ranks of A - BXC


@dataclass(frozen=True)
class ExtremeRankResult:
    """Extreme ranks of a matrix expression over its free variables.

    Witnesses are concrete variable assignments; each is verified by
    evaluation before the result is constructed.  For one-variable
    expressions witnesses are single matrices, otherwise tuples.
    """

    max_value: int
    min_value: int
    max_witness: object
    min_witness: object
    rank_invariant: bool
    range_invariant: bool | None = None
    row_range_invariant: bool | None = None

    def to_json(self, render=None):
        from .io import format_matrix

        def enc(w):
            if isinstance(w, Matrix):
                return format_matrix(w)
            return [format_matrix(x) for x in w]

        return {
            "max": self.max_value,
            "min": self.min_value,
            "max_witness": enc(self.max_witness),
            "min_witness": enc(self.min_witness),
            "invariant": self.rank_invariant,
        }


def _max_rank_sandwich(e: Matrix, f: Matrix) -> Matrix:
    """A matrix U with r(E U F) = min{r(E), r(F)} over any field."""
    fld = e.field
    re_, rf = rank(e), rank(f)
    if re_ == 0 or rf == 0:
        return Matrix.zeros(fld, e.cols, f.rows)
    el, er = full_rank_factorization(e)  # er has full row rank r(E)
    fl, fr = full_rank_factorization(f)  # fl has full column rank r(F)
    er_r = _inner(er)[0]      # right inverse of er
    fl_l = _inner(fl)[0]      # left inverse of fl
    t = min(re_, rf)
    p = Matrix(fld, re_, rf,
               [fld.one if i == j and i < t else fld.zero
                for i in range(re_) for j in range(rf)])
    return er_r @ p @ fl_l


def extreme_rank_bxc(a: Matrix, b: Matrix, c: Matrix) -> ExtremeRankResult:
    """Extreme ranks of A - B X C over X, with achieving witnesses.

    max = min{r[A,B], r[A;C]};  min = r[A,B] + r[A;C] - r[[A,B],[C,0]].
    Also reports whether the rank / column range / row range of A - BXC
    are invariant in X.
    """
    if b.rows != a.rows or c.cols != a.cols:
        raise ShapeError(f"A {a.shape}, B {b.shape}, C {c.shape}")
    fld = a.field
    k, l = b.cols, c.rows
    ra_b = rank(hstack(a, b))
    ra_c = rank(vstack(a, c))
    m_blk = block([[a, b], [c, Matrix.zeros(fld, l, k)]])
    rm = rank(m_blk)
    max_v = min(ra_b, ra_c)
    min_v = ra_b + ra_c - rm
    if k == 0 or l == 0:
        zero = Matrix.zeros(fld, k, l)
        return ExtremeRankResult(rank(a), rank(a), zero, zero, True, True, True)

    m0, em, fm = _inner(m_blk)
    t = hstack(Matrix.zeros(fld, k, a.cols), Matrix.identity(fld, k))
    s = vstack(Matrix.zeros(fld, a.rows, l), Matrix.identity(fld, l))
    x_base = -(t @ m0 @ s)
    t1 = t @ fm
    s1 = em @ s
    # E_{T1} = I - T1 T1~ and F_{S1} = I - S1~ S1
    fam_t1 = inner_inverse(t1)
    fam_s1 = inner_inverse(s1)
    e_t1 = Matrix.identity(fld, k) - t1 @ fam_t1.base
    f_s1 = Matrix.identity(fld, l) - fam_s1.base @ s1
    x_max = x_base + _max_rank_sandwich(e_t1, f_s1)

    if rank(a - b @ x_max @ c) != max_v or rank(a - b @ x_base @ c) != min_v:
        raise InternalInvariantError("extreme-rank witness failed to verify")

    rng_inv = max_v == min_v
    col_inv = rm == ra_c
    row_inv = rm == ra_b
    if b.is_zero() or c.is_zero():
        col_inv = row_inv = True
    return ExtremeRankResult(max_v, min_v, x_max, x_base,
                             rng_inv, col_inv, row_inv)


# ---------------------------------------------------------------------------
# extreme ranks of A - B1 X1 C1 - B2 X2 C2


def _two_term_values(a, b1, c1, b2, c2):
    """Closed-form extreme ranks of A - B1 X1 C1 - B2 X2 C2."""
    fld = a.field

    def z(r, c):
        return Matrix.zeros(fld, r, c)

    r_ab = rank(hstack(a, b1, b2))
    r_ac = rank(vstack(a, c1, c2))
    r_b1c2 = rank(block([[a, b1], [c2, z(c2.rows, b1.cols)]]))
    r_b2c1 = rank(block([[a, b2], [c1, z(c1.rows, b2.cols)]]))
    max_v = min(r_ab, r_ac, r_b1c2, r_b2c1)
    r_b1b2c2 = rank(block([[a, b1, b2], [c2, z(c2.rows, b1.cols), z(c2.rows, b2.cols)]]))
    r_b1c1c2 = rank(block([[a, b1], [c1, z(c1.rows, b1.cols)], [c2, z(c2.rows, b1.cols)]]))
    r_b1b2c1 = rank(block([[a, b1, b2], [c1, z(c1.rows, b1.cols), z(c1.rows, b2.cols)]]))
    r_b2c1c2 = rank(block([[a, b2], [c1, z(c1.rows, b2.cols)], [c2, z(c2.rows, b2.cols)]]))
    min_v = r_ac + r_ab + max(r_b1c2 - r_b1b2c2 - r_b1c1c2,
                              r_b2c1 - r_b1b2c1 - r_b2c1c2)
    return max_v, min_v


def _nested_two_term_values(a, b1, c1, b2, c2):
    """Extreme ranks under R(B1) <= R(B2) and row ranges nested the other way."""
    fld = a.field

    def z(r, c):
        return Matrix.zeros(fld, r, c)

    r_ab2 = rank(hstack(a, b2))
    r_ac1 = rank(vstack(a, c1))
    r_b1c2 = rank(block([[a, b1], [c2, z(c2.rows, b1.cols)]]))
    max_v = min(r_ab2, r_ac1, r_b1c2)
    r_b1c1 = rank(block([[a, b1], [c1, z(c1.rows, b1.cols)]]))
    r_b2c2 = rank(block([[a, b2], [c2, z(c2.rows, b2.cols)]]))
    min_v = r_ab2 + r_ac1 + r_b1c2 - r_b1c1 - r_b2c2
    return max_v, min_v


def _is_nested(b1, c1, b2, c2):
    return (rank(hstack(b2, b1)) == rank(b2)
            and rank(vstack(c1, c2)) == rank(c1))


def _banded_embedding(a, b1, c1, b2, c2):
    """The block matrix whose corner completions carry X1 and X2.

    Returns (assemble, offset): assemble(x1, x2) has rank
    r(A - B1 X1 C1 - B2 X2 C2) + offset.
    """
    fld = a.field
    m, n = a.shape
    p1, q1 = b1.cols, c1.rows
    p2, q2 = b2.cols, c2.rows

    def z(r, c):
        return Matrix.zeros(fld, r, c)

    def ident(k):
        return Matrix.identity(fld, k)

    def assemble(x1, x2):
        return block([
            [z(p2, q1), z(p2, p1), z(p2, n), ident(p2), -x2],
            [z(q2, q1), z(q2, p1), c2, z(q2, p2), ident(q2)],
            [z(m, q1), b1, a, b2, z(m, q2)],
            [ident(q1), z(q1, p1), c1, z(q1, p2), z(q1, q2)],
            [-x1, ident(p1), z(p1, n), z(p1, p2), z(p1, q2)],
        ])

    return assemble, p1 + p2 + q1 + q2


def _value_at(a, b1, c1, b2, c2, x1, x2):
    return rank(a - b1 @ x1 @ c1 - b2 @ x2 @ c2)


def _best_x2_given_x1(a, b1, c1, b2, c2, x1, maximize):
    res = extreme_rank_bxc(a - b1 @ x1 @ c1, b2, c2)
    return res.max_witness if maximize else res.min_witness


def _best_x1_given_x2(a, b1, c1, b2, c2, x2, maximize):
    res = extreme_rank_bxc(a - b2 @ x2 @ c2, b1, c1)
    return res.max_witness if maximize else res.min_witness


def _greedy_banded_min(a, b1, c1, b2, c2, x2_first):
    """Complete the banded embedding corner by corner, minimizing each step."""
    fld = a.field
    m, n = a.shape
    p1, q1 = b1.cols, c1.rows
    p2, q2 = b2.cols, c2.rows
    assemble, _ = _banded_embedding(a, b1, c1, b2, c2)
    full = assemble(Matrix.zeros(fld, p1, q1), Matrix.zeros(fld, p2, q2))
    rows_total = p2 + q2 + m + q1 + p1
    cols_total = q1 + p1 + n + p2 + q2
    if x2_first:
        # rows not containing X1, with X2 = N0 - E X2 F embedded
        sub = full.extract((0, rows_total - p1), (0, cols_total))
        e = vstack(Matrix.identity(fld, p2),
                   Matrix.zeros(fld, q2 + m + q1, p2))
        f = hstack(Matrix.zeros(fld, q2, cols_total - q2),
                   Matrix.identity(fld, q2))
        x2 = extreme_rank_bxc(sub, e, f).min_witness
        x1 = _best_x1_given_x2(a, b1, c1, b2, c2, x2, maximize=False)
    else:
        sub = full.extract((p2, rows_total), (0, cols_total))
        e = vstack(Matrix.zeros(fld, q2 + m + q1, p1),
                   Matrix.identity(fld, p1))
        f = hstack(Matrix.identity(fld, q1),
                   Matrix.zeros(fld, q1, cols_total - q1))
        x1 = extreme_rank_bxc(sub, e, f).min_witness
        x2 = _best_x2_given_x1(a, b1, c1, b2, c2, x1, maximize=False)
    return x1, x2


def extreme_rank_two_term(a: Matrix, b1: Matrix, c1: Matrix,
                          b2: Matrix, c2: Matrix) -> ExtremeRankResult:
    """Extreme ranks of A - B1 X1 C1 - B2 X2 C2 over X1, X2, with witnesses.

    Values come from the general closed forms; when the ranges are nested
    (R(B1) inside R(B2), row range of C2 inside that of C1) the nested
    closed forms are computed as a cross-check.  Witnesses are built by
    corner-by-corner completion of a banded embedding, with seeded
    alternating refinement as a fallback, and verified by evaluation.
    """
    fld = a.field
    p1, q1 = b1.cols, c1.rows
    p2, q2 = b2.cols, c2.rows
    if p1 == 0 or q1 == 0:
        one = extreme_rank_bxc(a, b2, c2)
        zero1 = Matrix.zeros(fld, p1, q1)
        return ExtremeRankResult(one.max_value, one.min_value,
                                 (zero1, one.max_witness),
                                 (zero1, one.min_witness),
                                 one.rank_invariant)
    if p2 == 0 or q2 == 0:
        one = extreme_rank_bxc(a, b1, c1)
        zero2 = Matrix.zeros(fld, p2, q2)
        return ExtremeRankResult(one.max_value, one.min_value,
                                 (one.max_witness, zero2),
                                 (one.min_witness, zero2),
                                 one.rank_invariant)

    max_v, min_v = _two_term_values(a, b1, c1, b2, c2)
    if _is_nested(b1, c1, b2, c2):
        nmax, nmin = _nested_two_term_values(a, b1, c1, b2, c2)
        if (nmax, nmin) != (max_v, min_v):
            raise InternalInvariantError(
                f"nested and general closed forms disagree: "
                f"({nmax},{nmin}) vs ({max_v},{min_v})")

    min_w = _search_witness(a, b1, c1, b2, c2, min_v, maximize=False)
    max_w = _search_witness(a, b1, c1, b2, c2, max_v, maximize=True)
    return ExtremeRankResult(max_v, min_v, max_w, min_w, max_v == min_v)


def _search_witness(a, b1, c1, b2, c2, target, maximize):
    fld = a.field
    p1, q1 = b1.cols, c1.rows
    p2, q2 = b2.cols, c2.rows

    def done(x1, x2):
        return _value_at(a, b1, c1, b2, c2, x1, x2) == target

    candidates = []
    if maximize:
        for first in (True, False):
            x1 = Matrix.zeros(fld, p1, q1)
            x2 = Matrix.zeros(fld, p2, q2)
            for _ in range(3):
                if first:
                    x2 = _best_x2_given_x1(a, b1, c1, b2, c2, x1, True)
                    x1 = _best_x1_given_x2(a, b1, c1, b2, c2, x2, True)
                else:
                    x1 = _best_x1_given_x2(a, b1, c1, b2, c2, x2, True)
                    x2 = _best_x2_given_x1(a, b1, c1, b2, c2, x1, True)
                if done(x1, x2):
                    return x1, x2
            candidates.append((x1, x2))
    else:
        for order in (True, False):
            x1, x2 = _greedy_banded_min(a, b1, c1, b2, c2, x2_first=order)
            if done(x1, x2):
                return x1, x2
            candidates.append((x1, x2))

    # seeded alternating refinement from random starts
    rng = Rng(mix_key(0x7E57, a.rows, a.cols, target, int(maximize)))
    for _ in range(64):
        x1 = Matrix.random(fld, p1, q1, rng)
        x2 = _best_x2_given_x1(a, b1, c1, b2, c2, x1, maximize)
        for _ in range(4):
            x1 = _best_x1_given_x2(a, b1, c1, b2, c2, x2, maximize)
            x2 = _best_x2_given_x1(a, b1, c1, b2, c2, x1, maximize)
            if done(x1, x2):
                return x1, x2
    # exhaustive fallback over small enumerable fields
    if fld.enumerable:
        total = p1 * q1 + p2 * q2
        if fld.p ** total <= 1 << 20:
            elems = list(fld.elements())
            best = None
            import itertools
            for combo in itertools.product(elems, repeat=total):
                x1 = Matrix(fld, p1, q1, combo[:p1 * q1])
                x2 = Matrix(fld, p2, q2, combo[p1 * q1:])
                v = _value_at(a, b1, c1, b2, c2, x1, x2)
                if v == target:
                    return x1, x2
                if best is None or (v > best if maximize else v < best):
                    best = v
            raise InternalInvariantError(
                f"closed-form extreme {target} not attained; best {best}")
    raise InternalInvariantError(
        f"no witness found for extreme rank {target}")


# ---------------------------------------------------------------------------
# shared small helpers for the block formulas below


def _z(fld, r, c):
    return Matrix.zeros(fld, r, c)


def _id(fld, n):
    return Matrix.identity(fld, n)


def _joint_solve(eqs):
    """One X satisfying B_i X C_i = A_i for every i, or None.

    Vectorization oracle for common-solution verdicts: stacks the
    Kronecker systems of all equations and solves them at once.
    """
    rows = []
    rhs = []
    for a, b, c in eqs:
        rows.append(kron(c.transpose(), b))
        rhs.append(a.vec())
    sol = solve_right(vstack(*rows), vstack(*rhs))
    if sol is None:
        return None
    p, q = eqs[0][1].cols, eqs[0][2].rows
    return sol.unvec(p, q)


def _check_eq_shapes(eqs):
    p, q = eqs[0][1].cols, eqs[0][2].rows
    for a, b, c in eqs:
        if b.rows != a.rows or c.cols != a.cols:
            raise ShapeError(f"B {b.shape} X C {c.shape} = A {a.shape}")
        if b.cols != p or c.rows != q:
            raise ShapeError("equations do not share one unknown shape")
    return p, q


@dataclass(frozen=True)
class CoupledFamily:
    """Joint general solution of several unknowns sharing free matrices.

    slots records the shape of each free matrix; modes[j] expresses
    unknown j as particular[j] + sum of left @ U_slot @ right over its
    (slot, left, right) triples.  Distinct unknowns may reference the
    same slot, which is what SolutionFamily cannot express.
    """

    particular: tuple  # of Matrix, one per unknown
    slots: tuple       # of (rows, cols), one per free matrix
    modes: tuple       # per unknown: tuple of (slot, left, right)

    def instantiate(self, frees) -> tuple:
        if len(frees) != len(self.slots):
            raise ShapeError(f"expected {len(self.slots)} free matrices")
        for u, shape in zip(frees, self.slots):
            if u.shape != shape:
                raise ShapeError(f"free matrix must be {shape}, got {u.shape}")
        out = []
        for base, terms in zip(self.particular, self.modes):
            x = base
            for slot, left, right in terms:
                x = x + left @ frees[slot] @ right
            out.append(x)
        return tuple(out)

    def random_member(self, rng: Rng) -> tuple:
        f = self.particular[0].field
        frees = [Matrix.random(f, r, c, rng) for (r, c) in self.slots]
        return self.instantiate(frees)

    @property
    def unique(self) -> bool:
        return all(rank(left) == 0 or rank(right) == 0
                   for terms in self.modes for (_, left, right) in terms)


# ---------------------------------------------------------------------------
# shorted matrices


@dataclass(frozen=True)
class ShortedResult:
    """Best approximants of A inside {Z : R(Z) in R(B), row range in C's}.

    family parametrizes every Z minimizing r(A - Z); min_residual is
    that minimum and max_residual the corresponding maximum.  When the
    minimizer is unique, shorted holds it.
    """

    max_residual: int
    min_residual: int
    family: SolutionFamily
    unique: bool
    shorted: Matrix | None


def shorted_matrix(a: Matrix, b: Matrix, c: Matrix) -> ShortedResult:
    """Minimal-rank residual approximation of A by matrices B-reachable
    on the left and C-reachable on the right.

    max/min residual ranks are min{r[A,B], r[A;C]} and
    r[A,B] + r[A;C] - r[[A,B],[C,0]]; the minimizing family is read off
    an inner inverse of that block matrix.
    """
    if b.rows != a.rows or c.cols != a.cols:
        raise ShapeError(f"A {a.shape}, B {b.shape}, C {c.shape}")
    fld = a.field
    m, n = a.shape
    k, l = b.cols, c.rows
    m_blk = block([[a, b], [c, _z(fld, l, k)]])
    rm = rank(m_blk)
    max_v = min(rank(hstack(a, b)), rank(vstack(a, c)))
    min_v = rank(hstack(a, b)) + rank(vstack(a, c)) - rm

    m0, em, fm = _inner(m_blk)
    wide = hstack(_z(fld, m, n), b)         # m x (n+k)
    tall = vstack(_z(fld, m, n), c)         # (m+l) x n
    z0 = -(wide @ m0 @ tall)
    t1 = hstack(_z(fld, k, n), _id(fld, k)) @ fm   # k x (n+k)
    s1 = em @ vstack(_z(fld, m, l), _id(fld, l))   # (m+l) x l
    family = SolutionFamily(
        particular=z0,
        terms=((b @ t1, (n + k, l), c),
               (b, (k, m + l), s1 @ c)),
    )
    if rank(a - z0) != min_v:
        raise InternalInvariantError("shorted-matrix minimizer failed to verify")

    # The rank criterion is sufficient; the family itself decides
    # degenerate cases (e.g. B = 0) where the feasible set is a point.
    criterion = rm == rank(vstack(a, c)) + rank(b) == rank(hstack(a, b)) + rank(c)
    unique = family.unique
    if criterion and not unique:
        raise InternalInvariantError(
            "uniqueness criterion holds but the minimizing family has freedom")
    shorted = None
    if unique:
        m1 = second_inner_inverse(m_blk)
        z1 = -(wide @ m1 @ tall)
        if z1 != z0:
            raise InternalInvariantError(
                "shorted matrix declared unique but depends on the inner inverse")
        shorted = z0
    return ShortedResult(max_v, min_v, family, unique, shorted)


# ---------------------------------------------------------------------------
# extremes and common solutions under side constraints


def _big3(a1, b1, c1, a2, b2, c2):
    """[[A1,0,B1],[0,-A2,B2],[C1,C2,0]] for the constrained extremes."""
    fld = a1.field
    return block([
        [a1, _z(fld, a1.rows, a2.cols), b1],
        [_z(fld, a2.rows, a1.cols), -a2, b2],
        [c1, c2, _z(fld, c1.rows, b1.cols)],
    ])


def _consistent(a, b, c):
    return (rank(hstack(b, a)) == rank(b)
            and rank(vstack(c, a)) == rank(c))


def extreme_rank_constrained(a1: Matrix, b1: Matrix, c1: Matrix,
                             a2: Matrix, b2: Matrix, c2: Matrix
                             ) -> ExtremeRankResult:
    """Extreme ranks of A1 - B1 X C1 over the solutions of B2 X C2 = A2.

    Witnesses are solutions of the constraint equation achieving the
    extremes; both are verified against the constraint and the rank.
    """
    _check_eq_shapes([(a1, b1, c1), (a2, b2, c2)])
    fld = a1.field
    fam = solve_bxc(a2, b2, c2)
    if fam is None:
        raise PreconditionError("constraint equation is inconsistent")
    x0 = fam.particular
    _, _, fb2 = _inner(b2)
    _, ec2, _ = _inner(c2)

    big = _big3(a1, b1, c1, a2, b2, c2)
    max_v = min(rank(big) - rank(b2) - rank(c2),
                rank(vstack(a1, c1)), rank(hstack(a1, b1)))
    wide = rank(block([[a1, b1, _z(fld, a1.rows, a2.cols)],
                       [c1, _z(fld, c1.rows, b1.cols), c2]]))
    tall = rank(block([[a1, b1],
                       [c1, _z(fld, c1.rows, b1.cols)],
                       [_z(fld, a2.rows, a1.cols), b2]]))
    min_v = rank(hstack(a1, b1)) + rank(vstack(a1, c1)) - wide - tall + rank(big)

    inner_res = extreme_rank_two_term(a1 - b1 @ x0 @ c1,
                                      b1 @ fb2, c1, b1, ec2 @ c1)
    if (inner_res.max_value, inner_res.min_value) != (max_v, min_v):
        raise InternalInvariantError(
            f"constrained extremes disagree with the reduction: closed "
            f"({max_v},{min_v}) vs ({inner_res.max_value},{inner_res.min_value})")

    def lift(w):
        v, u = w
        x = x0 + fb2 @ v + u @ ec2
        if b2 @ x @ c2 != a2:
            raise InternalInvariantError("constrained witness violates constraint")
        return x

    x_max, x_min = lift(inner_res.max_witness), lift(inner_res.min_witness)
    if rank(a1 - b1 @ x_max @ c1) != max_v or rank(a1 - b1 @ x_min @ c1) != min_v:
        raise InternalInvariantError("constrained extreme witness failed to verify")
    return ExtremeRankResult(max_v, min_v, x_max, x_min, max_v == min_v)


def pair_common_solution(eq1, eq2):
    """Verdict and general family for one X solving both B_i X C_i = A_i.

    Verdict: both equations consistent and r of the coupled block matrix
    equals r[B1;B2] + r[C1,C2]; checked against the vectorization
    oracle.  The family stacks one free term per one-sided annihilator
    pair plus two cross terms.
    """
    a1, b1, c1 = eq1
    a2, b2, c2 = eq2
    p, q = _check_eq_shapes([eq1, eq2])
    fld = a1.field
    verdict = (_consistent(a1, b1, c1) and _consistent(a2, b2, c2)
               and rank(_big3(a1, b1, c1, a2, b2, c2))
               == rank(vstack(b1, b2)) + rank(hstack(c1, c2)))
    x0 = _joint_solve([eq1, eq2])
    if verdict != (x0 is not None):
        raise InternalInvariantError(
            "pair common-solution verdict disagrees with the vectorization oracle")
    if not verdict:
        return False, None
    _, _, fb = _inner(vstack(b1, b2))
    _, ec, _ = _inner(hstack(c1, c2))
    _, _, fb1 = _inner(b1)
    _, _, fb2 = _inner(b2)
    _, ec1, _ = _inner(c1)
    _, ec2, _ = _inner(c2)
    family = SolutionFamily(
        particular=x0,
        terms=((fb, (p, q), _id(fld, q)),
               (_id(fld, p), (p, q), ec),
               (fb1, (p, q), ec2),
               (fb2, (p, q), ec1)),
    )
    return True, family


def solution_set_distance(eq1, eq2) -> int:
    """Minimal rank of X1 - X2 over the two solution sets.

    Value r(coupled block) - r[B1;B2] - r[C1,C2]; zero exactly when the
    equations share a solution.
    """
    a1, b1, c1 = eq1
    a2, b2, c2 = eq2
    _check_eq_shapes([eq1, eq2])
    for (a, b, c) in (eq1, eq2):
        if not _consistent(a, b, c):
            raise PreconditionError("equation is inconsistent")
    return (rank(_big3(a1, b1, c1, a2, b2, c2))
            - rank(vstack(b1, b2)) - rank(hstack(c1, c2)))


# ---------------------------------------------------------------------------
# extremes over inner inverses: Schur complements and products


def schur_extremes(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> ExtremeRankResult:
    """Extreme ranks of D - C A- B over all inner inverses of A.

    Witnesses are inner inverses of A achieving the extremes.  The
    closed forms are cross-checked against the reduction to a two-term
    linear expression in the free parts of A-.
    """
    if c.cols != a.cols or b.rows != a.rows:
        raise ShapeError(f"A {a.shape}, B {b.shape}, C {c.shape}")
    if d.rows != c.rows or d.cols != b.cols:
        raise ShapeError(f"D {d.shape} must be {c.rows} x {b.cols}")
    fld = a.field
    m, n = a.shape
    s, t = d.shape
    r_cd = rank(hstack(c, d))
    r_bd = rank(vstack(b, d))
    r_full = rank(block([[a, b], [c, d]]))
    max_v = min(r_cd, r_bd, r_full - rank(a))
    min_v = (rank(a) + r_cd + r_bd + r_full
             - rank(block([[a, _z(fld, m, n), b],
                           [_z(fld, s, n), c, d]]))
             - rank(block([[a, _z(fld, m, t)],
                           [_z(fld, m, n), b],
                           [c, d]])))

    a0, ea, fa = _inner(a)
    res = extreme_rank_two_term(d - c @ a0 @ b, c @ fa, b, c, ea @ b)
    if (res.max_value, res.min_value) != (max_v, min_v):
        raise InternalInvariantError(
            f"Schur-complement extremes disagree with the reduction: "
            f"({max_v},{min_v}) vs ({res.max_value},{res.min_value})")

    def lift(w, target):
        v, u = w
        g = a0 + fa @ v + u @ ea
        if a @ g @ a != a or rank(d - c @ g @ b) != target:
            raise InternalInvariantError("Schur witness failed to verify")
        return g

    return ExtremeRankResult(max_v, min_v,
                             lift(res.max_witness, max_v),
                             lift(res.min_witness, min_v),
                             max_v == min_v)


def product_extremes(a: Matrix, b: Matrix, c: Matrix) -> ExtremeRankResult:
    """Extreme ranks of C A- B over all inner inverses of A.

    max = min{r(B), r(C), r[[A,B],[C,0]] - r(A)};
    min = r[[A,B],[C,0]] - r[A;C] - r[A,B] + r(A).
    """
    if c.cols != a.cols or b.rows != a.rows:
        raise ShapeError(f"A {a.shape}, B {b.shape}, C {c.shape}")
    fld = a.field
    r_corner = rank(block([[a, b], [c, _z(fld, c.rows, b.cols)]]))
    max_v = min(rank(b), rank(c), r_corner - rank(a))
    min_v = r_corner - rank(vstack(a, c)) - rank(hstack(a, b)) + rank(a)

    res = schur_extremes(a, b, c, _z(fld, c.rows, b.cols))
    if (res.max_value, res.min_value) != (max_v, min_v):
        raise InternalInvariantError(
            f"product extremes disagree with the Schur reduction: "
            f"({max_v},{min_v}) vs ({res.max_value},{res.min_value})")
    return ExtremeRankResult(max_v, min_v, res.max_witness, res.min_witness,
                             max_v == min_v)


def common_inner_inverse(mats) -> bool:
    """Whether all given matrices (same shape) share one inner inverse.

    Pairs: r(A-B) = r[A;B] + r[A,B] - r(A) - r(B).  Triples add the two
    block equalities coupling the three differences.  The verdict is
    checked against a joint vectorized solve of the defining equations.
    """
    mats = list(mats)
    if not 1 <= len(mats) <= 3:
        raise UsageError("common_inner_inverse takes one to three matrices")
    m, n = mats[0].shape
    for x in mats:
        if x.shape != (m, n):
            raise ShapeError("matrices must share one shape")
    fld = mats[0].field

    def pair_ok(x, y):
        return (rank(x - y)
                == rank(vstack(x, y)) + rank(hstack(x, y)) - rank(x) - rank(y))

    if len(mats) == 1:
        verdict = True
    elif len(mats) == 2:
        verdict = pair_ok(*mats)
    else:
        x, y, w = mats
        rsum = rank(x) + rank(y) + rank(w)
        verdict = (pair_ok(x, y) and pair_ok(x, w) and pair_ok(y, w)
                   and rank(hstack(x - y, x - w))
                   == rank(block([[x, x],
                                  [y, _z(fld, m, n)],
                                  [_z(fld, m, n), w]]))
                   + rank(hstack(x, y, w)) - rsum
                   and rank(vstack(x - y, x - w))
                   == rank(vstack(x, y, w))
                   + rank(block([[x, y, _z(fld, m, n)],
                                 [x, _z(fld, m, n), w]])) - rsum)
    oracle = _joint_solve([(x, x, x) for x in mats]) is not None
    if verdict != oracle:
        raise InternalInvariantError(
            "common inner inverse verdict disagrees with the vectorization oracle")
    return verdict


def inner_vs_product_min(a: Matrix, p: Matrix, n: Matrix, q: Matrix) -> int:
    """min over inner inverses of A and N of r(A- - P N- Q).

    Reached by absorbing the A- freedom first (min over A- of
    r(A- - K) is r(A - A K A)) and then minimizing the remaining
    two-term expression in the free parts of N-.
    """
    if p.rows != a.cols or q.cols != a.rows:
        raise ShapeError("P N- Q must have the shape of inner inverses of A")
    if p.cols != n.cols or q.rows != n.rows:
        raise ShapeError("N- must fit between P and Q")
    n0, en, fn = _inner(n)
    res = extreme_rank_two_term(a - (a @ p) @ n0 @ (q @ a),
                                (a @ p) @ fn, q @ a, a @ p, en @ (q @ a))
    return res.min_value


# ---------------------------------------------------------------------------
# parallel sums


def parallel_sum(a: Matrix, b: Matrix):
    """Parallel sum A (A+B)- B, or None when the pair is not summable.

    Summable iff R(B) lies in R(A+B) and the row range of A lies in that
    of A+B; then the product does not depend on the inner inverse
    (asserted with a second one) and r = r(A) + r(B) - r(A+B).
    """
    if a.shape != b.shape:
        raise ShapeError(f"parallel sum of {a.shape} and {b.shape}")
    s = a + b
    if rank(hstack(s, b)) != rank(s) or rank(vstack(s, a)) != rank(s):
        return None
    s0 = _inner(s)[0]
    p = a @ s0 @ b
    if a @ second_inner_inverse(s) @ b != p:
        raise InternalInvariantError("parallel sum depends on the inner inverse")
    if rank(p) != rank(a) + rank(b) - rank(s):
        raise InternalInvariantError("parallel-sum rank law failed")
    return p


def parallel_sum_k(mats):
    """Parallel sum of k same-shaped matrices, or None when not summable.

    Uses the bordered block matrix W = [[diag(A_1..A_k), col(I)],
    [row(I), 0]]: summable iff r(W) = r[N;P] + m = r[N,Q] + n, and the
    value is the (2,2) block of -W- (inner-inverse invariant, asserted).
    """
    mats = list(mats)
    if not mats:
        raise UsageError("parallel_sum_k needs at least one matrix")
    m, n = mats[0].shape
    for x in mats:
        if x.shape != (m, n):
            raise ShapeError("matrices must share one shape")
    fld = mats[0].field
    k = len(mats)
    nn = block_diag(fld, mats)
    q = vstack(*[_id(fld, m) for _ in mats])
    p = hstack(*[_id(fld, n) for _ in mats])
    w = block([[nn, q], [p, _z(fld, n, m)]])
    if not (rank(w) == rank(vstack(nn, p)) + m == rank(hstack(nn, q)) + n):
        return None
    left = hstack(_z(fld, m, k * n), _id(fld, m))
    right = vstack(_z(fld, k * m, n), _id(fld, n))
    w0 = _inner(w)[0]
    val = -(left @ w0 @ right)
    if -(left @ second_inner_inverse(w) @ right) != val:
        raise InternalInvariantError("k-ary parallel sum depends on the inner inverse")
    return val


# ---------------------------------------------------------------------------
# two-term equations B1 X C1 + B2 Y C2 = A


@dataclass(frozen=True)
class TwoTermSolveResult:
    """Verdict and structure for B1 X C1 + B2 Y C2 = A.

    family couples X and Y through one shared free block; x_extremes and
    y_extremes are (min, max) ranks of X and Y over the solution set;
    independent reports whether X and Y may be picked separately.
    """

    consistent: bool
    family: CoupledFamily | None
    x_extremes: tuple | None
    y_extremes: tuple | None
    independent: bool


def two_term_consistent(a, b1, c1, b2, c2) -> bool:
    """Four-rank-equality verdict for B1 X C1 + B2 Y C2 = A."""
    fld = a.field
    return (rank(hstack(a, b1, b2)) == rank(hstack(b1, b2))
            and rank(vstack(a, c1, c2)) == rank(vstack(c1, c2))
            and rank(block([[a, b1], [c2, _z(fld, c2.rows, b1.cols)]]))
            == rank(b1) + rank(c2)
            and rank(block([[a, b2], [c1, _z(fld, c1.rows, b2.cols)]]))
            == rank(b2) + rank(c1))


def solve_two_term(a: Matrix, b1: Matrix, c1: Matrix,
                   b2: Matrix, c2: Matrix) -> TwoTermSolveResult:
    """General solution of B1 X C1 + B2 Y C2 = A with rank extremes.

    The homogeneous part couples X and Y through one shared free block
    flanked by the annihilators of [B1,B2] and [C1;-C2]; the remaining
    freedom is per-unknown.  Consistency is checked against the
    vectorization oracle.
    """
    for b, c in ((b1, c1), (b2, c2)):
        if b.rows != a.rows or c.cols != a.cols:
            raise ShapeError(f"B {b.shape} X C {c.shape} = A {a.shape}")
    fld = a.field
    p, q = b1.cols, c1.rows
    s, t = b2.cols, c2.rows
    verdict = two_term_consistent(a, b1, c1, b2, c2)
    oracle = linear_matrix_solve(((b1, c1), (b2, c2)), a)
    if verdict != (oracle is not None):
        raise InternalInvariantError(
            "two-term consistency verdict disagrees with the vectorization oracle")
    independent = (subspace_intersection_dim([b1, b2]) == 0
                   or subspace_intersection_dim(
                       [c1.transpose(), c2.transpose()]) == 0)
    if not verdict:
        return TwoTermSolveResult(False, None, None, None, independent)
    x0, y0 = oracle

    g = hstack(b1, b2)
    h = vstack(c1, -c2)
    _, _, fg = _inner(g)
    _, eh, _ = _inner(h)
    _, _, fb1 = _inner(b1)
    _, _, fb2 = _inner(b2)
    _, ec1, _ = _inner(c1)
    _, ec2, _ = _inner(c2)
    s1 = hstack(_id(fld, p), _z(fld, p, s))
    s2 = hstack(_z(fld, s, p), _id(fld, s))
    t1 = vstack(_id(fld, q), _z(fld, t, q))
    t2 = vstack(_z(fld, q, t), _id(fld, t))
    family = CoupledFamily(
        particular=(x0, y0),
        slots=((p + s, q + t), (p, q), (p, q), (s, t), (s, t)),
        modes=(
            ((0, s1 @ fg, eh @ t1), (1, fb1, _id(fld, q)), (2, _id(fld, p), ec1)),
            ((0, s2 @ fg, eh @ t2), (3, fb2, _id(fld, t)), (4, _id(fld, s), ec2)),
        ),
    )

    x_max = min(p, q,
                p + q + rank(hstack(a, b2)) - rank(hstack(b1, b2)) - rank(c1),
                p + q + rank(vstack(a, c2)) - rank(vstack(c1, c2)) - rank(b1))
    x_min = (rank(hstack(a, b2)) + rank(vstack(a, c2))
             - rank(block([[a, b2], [c2, _z(fld, t, s)]])))
    y_max = min(s, t,
                s + t + rank(hstack(a, b1)) - rank(hstack(b1, b2)) - rank(c2),
                s + t + rank(vstack(a, c1)) - rank(vstack(c1, c2)) - rank(b2))
    y_min = (rank(hstack(a, b1)) + rank(vstack(a, c1))
             - rank(block([[a, b1], [c1, _z(fld, q, p)]])))
    return TwoTermSolveResult(True, family, (x_min, x_max), (y_min, y_max),
                              independent)


# ---------------------------------------------------------------------------
# higher-arity consistency verdicts


def three_term_expression_consistent(a, b1, c1, b2, c2, b3, c3) -> bool:
    """Nine-rank-equality verdict for B1 X1 C1 + B2 X2 C2 + B3 X3 C3 = A."""
    fld = a.field
    m, n = a.shape

    def cornered(bs, cs):
        zs = [[_z(fld, c.rows, b.cols) for b in bs] for c in cs]
        return block([[a] + list(bs)] + [[c] + zrow for c, zrow in zip(cs, zs)])

    pairs = ((b1, (c2, c3)), (b2, (c1, c3)), (b3, (c1, c2)))
    for b, cs in pairs:
        if rank(cornered((b,), cs)) != rank(vstack(*cs)) + rank(b):
            return False
    trios = (((b1, b2), c3), ((b1, b3), c2), ((b2, b3), c1))
    for bs, c in trios:
        if rank(cornered(bs, (c,))) != rank(hstack(*bs)) + rank(c):
            return False
    if rank(hstack(a, b1, b2, b3)) != rank(hstack(b1, b2, b3)):
        return False
    if rank(vstack(a, c1, c2, c3)) != rank(vstack(c1, c2, c3)):
        return False
    zm = _z(fld, m, n)
    big = block([
        [a, zm, b1, _z(fld, m, b2.cols), b3],
        [zm, -a, _z(fld, m, b1.cols), b2, b3],
        [c2, _z(fld, c2.rows, n), _z(fld, c2.rows, b1.cols),
         _z(fld, c2.rows, b2.cols), _z(fld, c2.rows, b3.cols)],
        [_z(fld, c1.rows, n), c1, _z(fld, c1.rows, b1.cols),
         _z(fld, c1.rows, b2.cols), _z(fld, c1.rows, b3.cols)],
        [c3, c3, _z(fld, c3.rows, b1.cols),
         _z(fld, c3.rows, b2.cols), _z(fld, c3.rows, b3.cols)],
    ])
    rows_c = block([[c2, _z(fld, c2.rows, n)],
                    [_z(fld, c1.rows, n), c1],
                    [c3, c3]])
    cols_b = block([[b1, _z(fld, m, b2.cols), b3],
                    [_z(fld, m, b1.cols), b2, b3]])
    return rank(big) == rank(rows_c) + rank(cols_b)


def triple_common_solution(eqs) -> bool:
    """Whether three equations B_i X C_i = A_i share one solution.

    Requires each pair to have a common solution plus two block-rank
    equalities coupling all three; checked against the joint
    vectorization oracle.
    """
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = eqs
    p, q = _check_eq_shapes(eqs)
    fld = a1.field

    def pair_ok(e1, e2):
        x1, y1, z1 = e1
        x2, y2, z2 = e2
        return (_consistent(x1, y1, z1) and _consistent(x2, y2, z2)
                and rank(_big3(x1, y1, z1, x2, y2, z2))
                == rank(vstack(y1, y2)) + rank(hstack(z1, z2)))

    n1, n2, n3 = a1.cols, a2.cols, a3.cols
    m1, m2, m3 = a1.rows, a2.rows, a3.rows
    m_one = block([
        [a1, _z(fld, m1, n2), _z(fld, m1, n3), b1],
        [_z(fld, m2, n1), -a2, _z(fld, m2, n3), b2],
        [_z(fld, m3, n1), _z(fld, m3, n2), -a3, b3],
        [c1, c2, _z(fld, q, n3), _z(fld, q, p)],
        [c1, _z(fld, q, n2), c3, _z(fld, q, p)],
    ])
    m_two = block([
        [a1, _z(fld, m1, n2), _z(fld, m1, n3), b1, b1],
        [_z(fld, m2, n1), -a2, _z(fld, m2, n3), b2, _z(fld, m2, p)],
        [_z(fld, m3, n1), _z(fld, m3, n2), -a3, _z(fld, m3, p), b3],
        [c1, c2, c3, _z(fld, q, p), _z(fld, q, p)],
    ])
    verdict = (pair_ok(eqs[0], eqs[1]) and pair_ok(eqs[0], eqs[2])
               and pair_ok(eqs[1], eqs[2])
               and rank(m_two) == rank(block([[b1, b1],
                                              [b2, _z(fld, m2, p)],
                                              [_z(fld, m3, p), b3]]))
               + rank(hstack(c1, c2, c3))
               and rank(m_one) == rank(block([[c1, c2, _z(fld, q, n3)],
                                              [c1, _z(fld, q, n2), c3]]))
               + rank(vstack(b1, b2, b3)))
    if verdict != (_joint_solve(eqs) is not None):
        raise InternalInvariantError(
            "triple common-solution verdict disagrees with the vectorization oracle")
    return verdict


def quadruple_common_solution(eqs) -> bool:
    """Whether four equations B_i X C_i = A_i share one solution.

    Supported only when the column ranges nest pairwise: rows of B1
    inside rows of B2, range of C2 inside range of C1, and likewise for
    (B3, B4, C3, C4); fourteen rank equalities decide, checked against
    the joint vectorization oracle.
    """
    if len(eqs) != 4:
        raise UsageError("quadruple verdict takes exactly four equations")
    _check_eq_shapes(eqs)
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3), (a4, b4, c4) = eqs
    nested = (rank(vstack(b2, b1)) == rank(b2)
              and rank(hstack(c1, c2)) == rank(c1)
              and rank(vstack(b4, b3)) == rank(b4)
              and rank(hstack(c3, c4)) == rank(c3))
    if not nested:
        raise UnsupportedStructureError(
            "quadruple verdict needs nested row ranges of B1 in B2, B3 in B4 "
            "and column ranges of C2 in C1, C4 in C3")

    def pair_eq(e1, e2):
        x1, y1, z1 = e1
        x2, y2, z2 = e2
        return (rank(_big3(x1, y1, z1, x2, y2, z2))
                == rank(vstack(y1, y2)) + rank(hstack(z1, z2)))

    verdict = all(_consistent(*e) for e in eqs)
    verdict = verdict and pair_eq(eqs[0], eqs[1]) and pair_eq(eqs[2], eqs[3])
    for i in (0, 1):
        for j in (2, 3):
            verdict = verdict and pair_eq(eqs[i], eqs[j])
    if verdict != (_joint_solve(eqs) is not None):
        raise InternalInvariantError(
            "quadruple common-solution verdict disagrees with the vectorization oracle")
    return verdict


def multi_term_consistency(*, expression=None, equations=None) -> bool:
    """Consistency verdict for one multi-term equation or several
    equations sharing one unknown.

    expression = (A, ((B1,C1), ..., (Bk,Ck))) asks whether
    sum of B_i X_i C_i = A is solvable (k up to 3); equations =
    [(A_i, B_i, C_i), ...] asks for a common X (two to four equations).
    """
    if (expression is None) == (equations is None):
        raise UsageError("pass exactly one of expression= or equations=")
    if expression is not None:
        a, terms = expression
        terms = [(b, c) for (b, c) in terms
                 if b.cols != 0 and c.rows != 0]
        if len(terms) == 0:
            return a.is_zero()
        if len(terms) == 1:
            verdict = _consistent(a, terms[0][0], terms[0][1])
        elif len(terms) == 2:
            verdict = two_term_consistent(a, terms[0][0], terms[0][1],
                                          terms[1][0], terms[1][1])
        elif len(terms) == 3:
            verdict = three_term_expression_consistent(
                a, terms[0][0], terms[0][1], terms[1][0], terms[1][1],
                terms[2][0], terms[2][1])
        else:
            raise UsageError("expressions support at most three terms")
        if verdict != (linear_matrix_solve(terms, a) is not None):
            raise InternalInvariantError(
                "multi-term verdict disagrees with the vectorization oracle")
        return verdict
    eqs = list(equations)
    if len(eqs) == 1:
        a, b, c = eqs[0]
        return _consistent(a, b, c)
    if len(eqs) == 2:
        return pair_common_solution(eqs[0], eqs[1])[0]
    if len(eqs) == 3:
        return triple_common_solution(eqs)
    if len(eqs) == 4:
        return quadruple_common_solution(eqs)
    raise UsageError("common-solution verdicts support two to four equations")


# ---------------------------------------------------------------------------
# extremes of A1 - B1 X C1 over common solutions of two constraints


def constrained_extreme_values(a1, b1, c1, constraints):
    """(max, min) rank of A1 - B1 X C1 over the common solutions of
    B2 X C2 = A2 and B3 X C3 = A3.

    Values only; the underlying block formulas come with no witness
    recipe.  The constraint pair must have a common solution.
    """
    (a2, b2, c2), (a3, b3, c3) = constraints
    _check_eq_shapes([(a1, b1, c1), (a2, b2, c2), (a3, b3, c3)])
    if not pair_common_solution((a2, b2, c2), (a3, b3, c3))[0]:
        raise PreconditionError("constraint pair has no common solution")
    fld = a1.field
    p, q = b1.cols, c1.rows
    m1, n1 = a1.shape
    m2, n2 = a2.shape
    m3, n3 = a3.shape

    m_one = block([
        [a1, _z(fld, m1, n2), _z(fld, m1, n3), b1],
        [_z(fld, m2, n1), -a2, _z(fld, m2, n3), b2],
        [_z(fld, m3, n1), _z(fld, m3, n2), -a3, b3],
        [c1, c2, _z(fld, q, n3), _z(fld, q, p)],
        [c1, _z(fld, q, n2), c3, _z(fld, q, p)],
    ])
    m_two = block([
        [a1, _z(fld, m1, n2), _z(fld, m1, n3), b1, b1],
        [_z(fld, m2, n1), -a2, _z(fld, m2, n3), b2, _z(fld, m2, p)],
        [_z(fld, m3, n1), _z(fld, m3, n2), -a3, _z(fld, m3, p), b3],
        [c1, c2, c3, _z(fld, q, p), _z(fld, q, p)],
    ])
    m_12 = _big3(a1, b1, c1, a2, b2, c2)
    m_13 = _big3(a1, b1, c1, a3, b3, c3)
    max_v = min(
        rank(hstack(a1, b1)), rank(vstack(a1, c1)),
        rank(m_one) - rank(vstack(b2, b3)) - rank(c2) - rank(c3),
        rank(m_two) - rank(hstack(c2, c3)) - rank(b2) - rank(b3),
        rank(m_12) - rank(b2) - rank(c2),
        rank(m_13) - rank(b3) - rank(c3),
    )

    def branch(mx, ay, by, cy, other_b, other_c, ny, my):
        lead = block([
            [a1, _z(fld, m1, ny), b1, b1],
            [_z(fld, my, n1), -ay, by, _z(fld, my, p)],
            [c1, cy, _z(fld, q, p), _z(fld, q, p)],
            [_z(fld, other_b.rows, n1), _z(fld, other_b.rows, ny),
             _z(fld, other_b.rows, p), other_b],
        ])
        tail = block([
            [a1, _z(fld, m1, ny), b1, _z(fld, m1, other_c.cols)],
            [_z(fld, my, n1), -ay, by, _z(fld, my, other_c.cols)],
            [c1, cy, _z(fld, q, p), _z(fld, q, other_c.cols)],
            [c1, _z(fld, q, ny), _z(fld, q, p), other_c],
        ])
        return rank(mx) - rank(lead) - rank(tail)

    min_v = (rank(m_one) + rank(m_two)
             - rank(block([[a1, b1],
                           [c1, _z(fld, q, p)],
                           [_z(fld, m2, n1), b2],
                           [_z(fld, m3, n1), b3]]))
             - rank(block([[a1, b1, _z(fld, m1, n2), _z(fld, m1, n3)],
                           [c1, _z(fld, q, p), c2, c3]]))
             + rank(vstack(a1, c1)) + rank(hstack(a1, b1))
             + max(branch(m_12, a2, b2, c2, b3, c3, n2, m2),
                   branch(m_13, a3, b3, c3, b2, c2, n3, m3)))
    return max_v, min_v


# ---------------------------------------------------------------------------
# A - BX - XC under the constraint BXC = D


@dataclass(frozen=True)
class BxXcResult:
    """Extremes of A - BX - XC over solutions of BXC = D, plus the
    verdict and family for the pair {BX + XC = A, BXC = D}."""

    extremes: ExtremeRankResult
    common: bool
    family: CoupledFamily | None


def bx_xc_toolkit(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> BxXcResult:
    """Extreme ranks of A - BX - XC subject to BXC = D, with witnesses.

    B and C are square; the constraint must be consistent.  The common
    solutions of BX + XC = A and BXC = D (when any) form a family with
    one shared free block.
    """
    m, n = a.shape
    if not (b.shape == (m, m) and c.shape == (n, n) and d.shape == (m, n)):
        raise ShapeError("need A, D m x n with B m x m and C n x n")
    fld = a.field
    fam = solve_bxc(d, b, c)
    if fam is None:
        raise PreconditionError("constraint equation BXC = D is inconsistent")
    x0 = fam.particular
    _, _, fb = _inner(b)
    _, ec, _ = _inner(c)
    a1 = a - b @ x0 - x0 @ c
    res = extreme_rank_two_term(a1, fb, c, b, ec)

    ba_d = hstack(b @ a - d, b @ b)
    ac_d = vstack(a @ c - d, c @ c)
    corner = rank(block([[a, b], [c, _z(fld, n, m)]]))
    bac = b @ a @ c - b @ d - d @ c
    max_v = min(m + rank(ba_d) - rank(b),
                n + rank(ac_d) - rank(c),
                corner,
                m + n + rank(bac) - rank(b) - rank(c))
    s1 = (corner
          - rank(block([[c, _z(fld, n, m)], [b @ a, b @ b]]))
          - rank(block([[b, a @ c], [_z(fld, n, m), c @ c]])))
    s2 = (rank(bac)
          - rank(hstack(b @ a @ c - d @ c, b @ b))
          - rank(vstack(b @ a @ c - b @ d, c @ c)))
    min_v = rank(ba_d) + rank(ac_d) + max(s1, s2)
    if (res.max_value, res.min_value) != (max_v, min_v):
        raise InternalInvariantError(
            f"constrained Sylvester extremes disagree with the reduction: "
            f"({max_v},{min_v}) vs ({res.max_value},{res.min_value})")

    def lift(w, target):
        v1, v2 = w
        x = x0 + fb @ v1 + v2 @ ec
        if b @ x @ c != d or rank(a - b @ x - x @ c) != target:
            raise InternalInvariantError("constrained Sylvester witness failed")
        return x

    extremes = ExtremeRankResult(max_v, min_v,
                                 lift(res.max_witness, max_v),
                                 lift(res.min_witness, min_v),
                                 max_v == min_v)

    common = (rank(hstack(b @ b, b @ a - d)) == rank(b @ b)
              and rank(vstack(c @ c, a @ c - d)) == rank(c @ c)
              and b @ d + d @ c == b @ a @ c)
    if common != (min_v == 0):
        raise InternalInvariantError(
            "common-solution criterion disagrees with the minimal rank")
    family = None
    if common:
        x0c = lift(res.min_witness, 0)
        g = hstack(fb, -b)
        h = vstack(c, ec)
        _, _, fg = _inner(g)
        _, eh, _ = _inner(h)
        left1 = hstack(fb, _z(fld, m, m)) @ fg
        right1 = eh @ vstack(_id(fld, n), _z(fld, n, n))
        left2 = hstack(_z(fld, m, m), _id(fld, m)) @ fg
        right2 = eh @ vstack(_z(fld, n, n), ec)
        family = CoupledFamily(
            particular=(x0c,),
            slots=((2 * m, 2 * n), (m, n)),
            modes=(((0, left1, right1), (0, left2, right2),
                    (1, fb, ec)),),
        )
    return BxXcResult(extremes, common, family)


def idempotent_min(a: Matrix, b: Matrix, c: Matrix) -> tuple:
    """(min over X of r(A - BX + XC), min over X of r(A - X + BXC))
    for idempotent B and C.

    The first is max{r(BAC), r((I-B)A(I-C))}; the second r(BAC).  Zero
    values characterize solvability of the matching equations.
    """
    m, n = a.shape
    if b.shape != (m, m) or c.shape != (n, n):
        raise ShapeError("need B m x m and C n x n for A m x n")
    if b @ b != b or c @ c != c:
        raise PreconditionError("B and C must be idempotent")
    fld = a.field
    bac = rank(b @ a @ c)
    comp = rank((_id(fld, m) - b) @ a @ (_id(fld, n) - c))
    return max(bac, comp), bac


def imaginary_shift_min(a: Matrix) -> int:
    """min over X of r(A + iX) for a matrix A over the rationals,
    with X ranging over real matrices of the same shape."""
    return (rank(a) + 1) // 2
