"""Block-rank reduction laws and Schur-complement rank formulas."""

from ..inverses import moore_penrose as mp
from ..matrices import Matrix, block, hstack, rank, vstack
from . import gen
from ._util import enc, eye, ib, le, rf, zz
from .core import AUDIT, GOLD, IdentityCase, register


def _gen_ab(rng, bound, fld):
    m, n, k = gen.dim(rng, bound), gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng), "B": gen.mat(fld, m, k, rng)}


def _gen_ac(rng, bound, fld):
    m, n, l = gen.dim(rng, bound), gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng), "C": gen.mat(fld, l, n, rng)}


def _gen_abc(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    k, l = gen.dim(rng, bound), gen.dim(rng, bound)
    return {
        "A": gen.mat(fld, m, n, rng),
        "B": gen.mat(fld, m, k, rng),
        "C": gen.mat(fld, l, n, rng),
    }


def _gen_abcd(rng, bound, fld):
    d = _gen_abc(rng, bound, fld)
    d["D"] = gen.mat(fld, d["C"].rows, d["B"].cols, rng)
    return d


register(IdentityCase(
    id="1.2", tier=GOLD,
    summary="column augmentation: r[A,B] = r(A) + r(B - A A^- B)",
    slots=("A", "B"),
    generate=_gen_ab,
    constraints=(("A and B have equal row counts",
                  lambda d: d["A"].rows == d["B"].rows),),
    evaluate=lambda d: (
        rank(hstack(d["A"], d["B"])),
        rank(d["A"]) + rank(d["B"] - d["A"] @ ib(d["A"]) @ d["B"])),
))

register(IdentityCase(
    id="1.3", tier=GOLD,
    summary="row augmentation: r[A;C] = r(A) + r(C - C A^- A)",
    slots=("A", "C"),
    generate=_gen_ac,
    constraints=(("A and C have equal column counts",
                  lambda d: d["A"].cols == d["C"].cols),),
    evaluate=lambda d: (
        rank(vstack(d["A"], d["C"])),
        rank(d["A"]) + rank(d["C"] - d["C"] @ ib(d["A"]) @ d["A"])),
))

register(IdentityCase(
    id="1.4", tier=GOLD,
    summary="bordered rank: r[[A,B],[C,0]] = r(B) + r(C) + r(E_B A F_C)",
    slots=("A", "B", "C"),
    generate=_gen_abc,
    evaluate=lambda d: (
        rank(block([[d["A"], d["B"]],
                    [d["C"], zz(d["A"].field, d["C"].rows, d["B"].cols)]])),
        rank(d["B"]) + rank(d["C"])
        + rank(le(d["B"]) @ d["A"] @ rf(d["C"]))),
))


def _eval_15(d):
    a, b, c, dd = d["A"], d["B"], d["C"], d["D"]
    g = ib(a)
    s = dd - c @ g @ b
    lhs = rank(block([[a, b], [c, dd]]))
    rhs = rank(a) + rank(block([[zz(a.field, a.rows, a.cols), le(a) @ b],
                                [c @ rf(a), s]]))
    return lhs, rhs


register(IdentityCase(
    id="1.5", tier=GOLD,
    summary="2x2 block rank via the generalized Schur complement",
    slots=("A", "B", "C", "D"),
    generate=_gen_abcd,
    evaluate=_eval_15,
))


def _eval_16(d):
    a, b, c, dd = d["A"], d["B"], d["C"], d["D"]
    g = ib(a)
    s = dd - c @ g @ b
    cf = c @ rf(a)
    eb = le(a) @ b
    j = ((eye(a.field, c.rows) - cf @ ib(cf)) @ s
         @ (eye(a.field, b.cols) - ib(eb) @ eb))
    lhs = rank(block([[a, b], [c, dd]]))
    rhs = (rank(vstack(a, c)) + rank(hstack(a, b)) - rank(a) + rank(j))
    return lhs, rhs


register(IdentityCase(
    id="1.6", tier=GOLD,
    summary="2x2 block rank split into row part, column part, and remainder",
    slots=("A", "B", "C", "D"),
    generate=_gen_abcd,
    evaluate=_eval_16,
))


def _gen_17(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    k, l = gen.dim(rng, bound), gen.dim(rng, bound)
    a = gen.mat(fld, m, n, rng)
    b = a @ gen.mat(fld, n, k, rng)
    c = gen.mat(fld, l, m, rng) @ a
    d = gen.mat(fld, l, k, rng)
    return {"A": a, "B": b, "C": c, "D": d}


register(IdentityCase(
    id="1.7", tier=GOLD,
    summary="2x2 block rank when B, C lie in the ranges of A: "
            "r(M) = r(A) + r(D - C A^- B)",
    slots=("A", "B", "C", "D"),
    generate=_gen_17,
    constraints=(
        ("columns of B lie in the column space of A",
         lambda d: rank(hstack(d["A"], d["B"])) == rank(d["A"])),
        ("rows of C lie in the row space of A",
         lambda d: rank(vstack(d["A"], d["C"])) == rank(d["A"])),
    ),
    evaluate=lambda d: (
        rank(block([[d["A"], d["B"]], [d["C"], d["D"]]])),
        rank(d["A"]) + rank(d["D"] - d["C"] @ ib(d["A"]) @ d["B"])),
))


def _gen_square_pair(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng), "B": gen.mat(fld, n, m, rng)}


register(IdentityCase(
    id="1.10", tier=GOLD,
    summary="r(A - ABA) = r(A) + r(I - BA) - n",
    slots=("A", "B"),
    generate=_gen_square_pair,
    constraints=(("B has the transposed shape of A",
                  lambda d: (d["B"].rows, d["B"].cols)
                  == (d["A"].cols, d["A"].rows)),),
    evaluate=lambda d: (
        rank(d["A"] - d["A"] @ d["B"] @ d["A"]),
        rank(d["A"]) + rank(eye(d["A"].field, d["A"].cols)
                            - d["B"] @ d["A"]) - d["A"].cols),
))


def _gen_square(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, m, rng)}


register(IdentityCase(
    id="1.11", tier=GOLD,
    summary="r(N - N^3) = r(N) + r(I - N^2) - m",
    slots=("A",),
    generate=_gen_square,
    constraints=(("A is square", lambda d: d["A"].is_square()),),
    evaluate=lambda d: (
        rank(d["A"] - d["A"] ** 3),
        rank(d["A"]) + rank(eye(d["A"].field, d["A"].rows) - d["A"] ** 2)
        - d["A"].rows),
))

register(IdentityCase(
    id="1.12", tier=GOLD, char_not_2=True,
    summary="r(I - N^2) = r(I + N) + r(I - N) - m",
    slots=("A",),
    generate=_gen_square,
    constraints=(("A is square", lambda d: d["A"].is_square()),),
    evaluate=lambda d: (
        rank(eye(d["A"].field, d["A"].rows) - d["A"] ** 2),
        rank(eye(d["A"].field, d["A"].rows) + d["A"])
        + rank(eye(d["A"].field, d["A"].rows) - d["A"]) - d["A"].rows),
))


def _gen_same_shape(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng), "B": gen.mat(fld, m, n, rng)}


register(IdentityCase(
    id="1.13", tier=GOLD, char_not_2=True,
    summary="r[[A,B],[B,A]] = r(A+B) + r(A-B)",
    slots=("A", "B"),
    generate=_gen_same_shape,
    constraints=(("A and B have the same shape",
                  lambda d: d["A"].shape == d["B"].shape),),
    evaluate=lambda d: (
        rank(block([[d["A"], d["B"]], [d["B"], d["A"]]])),
        rank(d["A"] + d["B"]) + rank(d["A"] - d["B"])),
))


def _eval_114(d):
    a = d["A"]
    k = 2
    lhs = rank(a - a ** (2 * k - 1))
    rhs = rank(a + a ** k) + rank(a - a ** k) - rank(a)
    m = a.rows
    rhs2 = (rank(a) + rank(eye(a.field, m) + a ** (k - 1))
            + rank(eye(a.field, m) - a ** (k - 1)) - 2 * m)
    return enc(lhs, lhs), enc(rhs, rhs2)


register(IdentityCase(
    id="1.14", tier=GOLD, char_not_2=True,
    summary="r(A - A^3) via splitting along A +- A^2 and I +- A",
    slots=("A",),
    generate=_gen_square,
    constraints=(("A is square", lambda d: d["A"].is_square()),),
    evaluate=_eval_114,
))


def _eval_115(d):
    a = d["A"]
    k = 3
    lhs = rank(a - a ** (2 * k - 1))
    rhs = rank(a + a ** k) + rank(a - a ** k) - rank(a)
    return lhs, rhs


register(IdentityCase(
    id="1.15", tier=GOLD, char_not_2=True,
    summary="r(A - A^5) = r(A + A^3) + r(A - A^3) - r(A)",
    slots=("A",),
    generate=_gen_square,
    constraints=(("A is square", lambda d: d["A"].is_square()),),
    evaluate=_eval_115,
))


def _gen_116(rng, bound, fld):
    m = gen.dim(rng, bound)
    lams = gen.distinct_scalars(fld, 2, rng)
    return {"A": gen.mat(fld, m, m, rng),
            "L": Matrix(fld, 1, 2, lams)}


def _shifted(a, lam):
    return Matrix.identity(a.field, a.rows).scale(lam) - a


def _eval_116(d):
    a, lams = d["A"], d["L"]
    p = _shifted(a, lams.get(0, 0)) ** 2
    q = _shifted(a, lams.get(0, 1))
    return rank(p @ q), rank(p) + rank(q) - a.rows


register(IdentityCase(
    id="1.16", tier=GOLD,
    summary="rank of a product of coprime characteristic factors "
            "(lam1 I - A)^2 (lam2 I - A)",
    slots=("A", "L"),
    generate=_gen_116,
    constraints=(
        ("A is square", lambda d: d["A"].is_square()),
        ("the two shift scalars are distinct",
         lambda d: d["L"].get(0, 0) != d["L"].get(0, 1)),
    ),
    evaluate=_eval_116,
))


def _eval_117(d):
    a, lams = d["A"], d["L"]
    # p(x) = (x - a0)^2 and q(x) = x - a1 are coprime when a0 != a1
    p = _shifted(a, lams.get(0, 0)) ** 2
    q = _shifted(a, lams.get(0, 1))
    return rank(p @ q), rank(p) + rank(q) - a.rows


register(IdentityCase(
    id="1.17", tier=GOLD,
    summary="r(p(A) q(A)) = r(p(A)) + r(q(A)) - m for coprime polynomials",
    slots=("A", "L"),
    generate=_gen_116,
    constraints=(
        ("A is square", lambda d: d["A"].is_square()),
        ("the polynomial roots are distinct",
         lambda d: d["L"].get(0, 0) != d["L"].get(0, 1)),
    ),
    evaluate=_eval_117,
))


# --- Schur-complement ranks expressed through starred block matrices ---


def _gen_schur(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    k, l = gen.dim(rng, bound), gen.dim(rng, bound)
    return {
        "A": gen.mat(fld, m, n, rng),
        "B": gen.mat(fld, m, k, rng),
        "C": gen.mat(fld, l, n, rng),
        "D": gen.mat(fld, l, k, rng),
    }


def _eval_21(d):
    a, b, c, dd = d["A"], d["B"], d["C"], d["D"]
    st = a.conj_transpose()
    lhs = rank(dd - c @ mp(a) @ b)
    rhs = rank(block([[st @ a @ st, st @ b], [c @ st, dd]])) - rank(a)
    return lhs, rhs


register(IdentityCase(
    id="2.1", tier=GOLD, needs_mp=True,
    summary="r(D - C A^+ B) through a starred bordered matrix",
    slots=("A", "B", "C", "D"),
    generate=_gen_schur,
    evaluate=_eval_21,
))


def _gen_22(rng, bound, fld):
    l, k = gen.dim(rng, bound), gen.dim(rng, bound)
    m1, n1 = gen.dim(rng, bound), gen.dim(rng, bound)
    m2, n2 = gen.dim(rng, bound), gen.dim(rng, bound)
    return {
        "A1": gen.mat(fld, m1, n1, rng), "B1": gen.mat(fld, m1, k, rng),
        "C1": gen.mat(fld, l, n1, rng),
        "A2": gen.mat(fld, m2, n2, rng), "B2": gen.mat(fld, m2, k, rng),
        "C2": gen.mat(fld, l, n2, rng),
        "D": gen.mat(fld, l, k, rng),
    }


def _eval_22(d):
    a1, b1, c1 = d["A1"], d["B1"], d["C1"]
    a2, b2, c2 = d["A2"], d["B2"], d["C2"]
    dd = d["D"]
    s1, s2 = a1.conj_transpose(), a2.conj_transpose()
    f = a1.field
    lhs = rank(dd - c1 @ mp(a1) @ b1 - c2 @ mp(a2) @ b2)
    rhs = rank(block([
        [s1 @ a1 @ s1, zz(f, s1.rows, s2.cols), s1 @ b1],
        [zz(f, s2.rows, s1.cols), s2 @ a2 @ s2, s2 @ b2],
        [c1 @ s1, c2 @ s2, dd],
    ])) - rank(a1) - rank(a2)
    return lhs, rhs


register(IdentityCase(
    id="2.2", tier=GOLD, needs_mp=True,
    summary="rank of D minus two Moore-Penrose sandwich terms",
    slots=("A1", "B1", "C1", "A2", "B2", "C2", "D"),
    generate=_gen_22,
    evaluate=_eval_22,
))


def _gen_28(rng, bound, fld):
    p1, p2 = gen.dim(rng, bound), gen.dim(rng, bound)
    q1, q2 = gen.dim(rng, bound), gen.dim(rng, bound)
    x, y = gen.dim(rng, bound), gen.dim(rng, bound)
    return {
        "P": gen.mat(fld, p1, p2, rng),
        "A": gen.mat(fld, p1, q1, rng),
        "Q": gen.mat(fld, q2, q1, rng),
        "B": gen.mat(fld, q2, y, rng),
        "C": gen.mat(fld, x, p2, rng),
        "D": gen.mat(fld, x, y, rng),
    }


def _eval_28(d):
    p, a, q, b, c, dd = d["P"], d["A"], d["Q"], d["B"], d["C"], d["D"]
    ps, qs = p.conj_transpose(), q.conj_transpose()
    f = a.field
    lhs = rank(dd - c @ mp(p) @ a @ mp(q) @ b)
    rhs = rank(block([
        [ps @ a @ qs, ps @ p @ ps, zz(f, ps.rows, b.cols)],
        [qs @ q @ qs, zz(f, qs.rows, ps.cols), qs @ b],
        [zz(f, c.rows, qs.cols), c @ ps, -dd],
    ])) - rank(p) - rank(q)
    return lhs, rhs


register(IdentityCase(
    id="2.8", tier=GOLD, needs_mp=True,
    summary="rank of D - C P^+ A Q^+ B through one bordered matrix",
    slots=("P", "A", "Q", "B", "C", "D"),
    generate=_gen_28,
    evaluate=_eval_28,
))


def _gen_210(rng, bound, fld):
    x, y = gen.dim(rng, bound), gen.dim(rng, bound)
    out = {"D": gen.mat(fld, x, y, rng)}
    for i in ("1", "2"):
        p1, p2 = gen.dim(rng, bound), gen.dim(rng, bound)
        q1, q2 = gen.dim(rng, bound), gen.dim(rng, bound)
        out["P" + i] = gen.mat(fld, p1, p2, rng)
        out["A" + i] = gen.mat(fld, p1, q1, rng)
        out["Q" + i] = gen.mat(fld, q2, q1, rng)
        out["B" + i] = gen.mat(fld, q2, y, rng)
        out["C" + i] = gen.mat(fld, x, p2, rng)
    return out


def _eval_210(d):
    f = d["D"].field

    def star(m):
        return m.conj_transpose()

    p1, a1, q1, b1, c1 = d["P1"], d["A1"], d["Q1"], d["B1"], d["C1"]
    p2, a2, q2, b2, c2 = d["P2"], d["A2"], d["Q2"], d["B2"], d["C2"]
    dd = d["D"]
    lhs = rank(dd - c1 @ mp(p1) @ a1 @ mp(q1) @ b1
               - c2 @ mp(p2) @ a2 @ mp(q2) @ b2)
    rows = [
        [star(p1) @ a1 @ star(q1), None, star(p1) @ p1 @ star(p1), None, None],
        [None, star(p2) @ a2 @ star(q2), None, star(p2) @ p2 @ star(p2), None],
        [star(q1) @ q1 @ star(q1), None, None, None, star(q1) @ b1],
        [None, star(q2) @ q2 @ star(q2), None, None, star(q2) @ b2],
        [None, None, c1 @ star(p1), c2 @ star(p2), -dd],
    ]
    widths = [star(q1).cols, star(q2).cols, star(p1).cols, star(p2).cols,
              dd.cols]
    heights = [star(p1).rows, star(p2).rows, star(q1).rows, star(q2).rows,
               dd.rows]
    grid = [[cell if cell is not None else zz(f, heights[i], widths[j])
             for j, cell in enumerate(row)] for i, row in enumerate(rows)]
    rhs = (rank(block(grid))
           - rank(p1) - rank(p2) - rank(q1) - rank(q2))
    return lhs, rhs


register(IdentityCase(
    id="2.10", tier=GOLD, needs_mp=True,
    summary="rank of D minus two double Moore-Penrose sandwich terms",
    slots=("P1", "A1", "Q1", "B1", "C1", "P2", "A2", "Q2", "B2", "C2", "D"),
    generate=_gen_210,
    evaluate=_eval_210,
))


def _gen_212(rng, bound, fld):
    d = _gen_28(rng, bound, fld)
    # D^+ must have the shape of C P^+ A Q^+ B, so D is y x x here
    d["D"] = gen.mat(fld, d["B"].cols, d["C"].rows, rng)
    return d


def _eval_212(d):
    p, a, q, b, c, dd = d["P"], d["A"], d["Q"], d["B"], d["C"], d["D"]
    ps, qs, ds = p.conj_transpose(), q.conj_transpose(), dd.conj_transpose()
    f = a.field
    x, y = ds.rows, ds.cols
    p1, p2 = p.rows, p.cols
    q1, q2 = q.cols, q.rows
    lhs = rank(mp(dd) - c @ mp(p) @ a @ mp(q) @ b)
    rhs = rank(block([
        [ds @ dd @ ds, zz(f, x, q2), zz(f, x, p1), ds],
        [zz(f, p2, y), ps @ a @ qs, ps @ p @ ps, zz(f, p2, y)],
        [zz(f, q1, y), qs @ q @ qs, zz(f, q1, p1), qs @ b],
        [ds, zz(f, x, q2), c @ ps, zz(f, x, y)],
    ])) - rank(p) - rank(q) - rank(dd)
    return lhs, rhs


register(IdentityCase(
    id="2.12", tier=GOLD, needs_mp=True,
    summary="rank of D^+ - C P^+ A Q^+ B through one bordered matrix",
    slots=("P", "A", "Q", "B", "C", "D"),
    generate=_gen_212,
    evaluate=_eval_212,
))
