"""Rank identities for Moore-Penrose inverses and reverse order laws."""

from ..inverses import moore_penrose as mp
from ..matrices import block, hstack, rank, vstack
from . import gen
from ._util import enc, eye, zz
from .core import GOLD, IdentityCase, register


def _gen_square(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, m, rng)}


def _sq_case(case_id, summary, evaluate, **kw):
    kw.setdefault("needs_mp", True)
    register(IdentityCase(
        id=case_id, tier=GOLD, summary=summary, slots=("A",),
        generate=_gen_square,
        constraints=(("A is square", lambda d: d["A"].is_square()),),
        evaluate=evaluate, **kw))


def _eval_61(d):
    a = d["A"]
    x = mp(a)
    st = a.conj_transpose()
    lhs = rank(a @ x - x @ a)
    rhs = 2 * rank(hstack(a, st)) - 2 * rank(a)
    lhs2 = 2 * rank(a - a @ a @ x)
    lhs3 = 2 * rank(a - x @ a @ a)
    return enc(lhs, lhs2, lhs3), enc(rhs, rhs, rhs)


_sq_case(
    "6.1", "EP defect: r(A A^+ - A^+ A) = 2 r[A, A*] - 2 r(A)",
    _eval_61)


def _eval_64(d):
    a = d["A"]
    x = mp(a)
    lhs = rank(a @ x - (x @ a).conj())
    rhs = 2 * rank(hstack(a, a.transpose())) - 2 * rank(a)
    return lhs, rhs


_sq_case(
    "6.4", "conjugate-EP defect: r(A A^+ - conj(A^+ A)) = 2 r[A, A^T] - 2 r(A)",
    _eval_64, gaussian_only=True)


def _eval_65(d):
    a = d["A"]
    x = mp(a)
    st = a.conj_transpose()
    parts = []
    for k in (2, 3):
        ak = a ** k
        parts.append((rank(ak @ x - x @ ak),
                      rank(vstack(ak, st)) + rank(hstack(ak, st))
                      - 2 * rank(a)))
    return (enc(*(p[0] for p in parts)), enc(*(p[1] for p in parts)))


_sq_case(
    "6.5", "power commutation defect: "
    "r(A^k A^+ - A^+ A^k) = r[A^k;A*] + r[A^k,A*] - 2r(A) for k = 2, 3",
    _eval_65)


def _eval_613a(d):
    a = d["A"]
    x = mp(a)
    st = a.conj_transpose()
    lhs = rank((a @ x) @ (x @ a) - (x @ a) @ (a @ x))
    rhs = 2 * rank(hstack(a, st)) + 2 * rank(a @ a) - 4 * rank(a)
    return lhs, rhs


_sq_case(
    "6.13a", "bi-EP defect: r((AA^+)(A^+A) - (A^+A)(AA^+)) "
    "= 2r[A,A*] + 2r(A^2) - 4r(A)",
    _eval_613a)


def _eval_613b(d):
    a = d["A"]
    x = mp(a)
    st = a.conj_transpose()
    a2 = a @ a
    lhs = rank(a2 - a2 @ x @ x @ a2)
    rhs = rank(hstack(a, st)) + rank(a2) - 2 * rank(a)
    return lhs, rhs


_sq_case(
    "6.13b", "r(A^2 - A^2 (A^+)^2 A^2) = r[A,A*] + r(A^2) - 2r(A)",
    _eval_613b)


# --- Chapter 7: expressions in several Moore-Penrose inverses ---


def _gen_a_b_same(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng), "B": gen.mat(fld, m, n, rng)}


register(IdentityCase(
    id="7.1", tier=GOLD, needs_mp=True,
    summary="r(AA^+B - BA^+A) = r[A; A*B] + r[A, BA*] - 2r(A)",
    slots=("A", "B"),
    generate=_gen_a_b_same,
    constraints=(("A and B have the same shape",
                  lambda d: d["A"].shape == d["B"].shape),),
    evaluate=lambda d: (
        rank(d["A"] @ mp(d["A"]) @ d["B"] - d["B"] @ mp(d["A"]) @ d["A"]),
        rank(vstack(d["A"], d["A"].conj_transpose() @ d["B"]))
        + rank(hstack(d["A"], d["B"] @ d["A"].conj_transpose()))
        - 2 * rank(d["A"])),
))


def _gen_ab_cols(rng, bound, fld):
    m = gen.dim(rng, bound)
    n, k = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng), "B": gen.mat(fld, m, k, rng)}


def _gen_ac_rows(rng, bound, fld):
    n = gen.dim(rng, bound)
    m, l = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng), "C": gen.mat(fld, l, n, rng)}


register(IdentityCase(
    id="7.2a", tier=GOLD, needs_mp=True,
    summary="r(AA^+ - BB^+) = 2r[A,B] - r(A) - r(B)",
    slots=("A", "B"),
    generate=_gen_ab_cols,
    constraints=(("A and B have equal row counts",
                  lambda d: d["A"].rows == d["B"].rows),),
    evaluate=lambda d: (
        rank(d["A"] @ mp(d["A"]) - d["B"] @ mp(d["B"])),
        2 * rank(hstack(d["A"], d["B"])) - rank(d["A"]) - rank(d["B"])),
))

register(IdentityCase(
    id="7.2b", tier=GOLD, needs_mp=True,
    summary="r(A^+A - C^+C) = 2r[A;C] - r(A) - r(C)",
    slots=("A", "C"),
    generate=_gen_ac_rows,
    constraints=(("A and C have equal column counts",
                  lambda d: d["A"].cols == d["C"].cols),),
    evaluate=lambda d: (
        rank(mp(d["A"]) @ d["A"] - mp(d["C"]) @ d["C"]),
        2 * rank(vstack(d["A"], d["C"])) - rank(d["A"]) - rank(d["C"])),
))

register(IdentityCase(
    id="7.2c", tier=GOLD, needs_mp=True,
    summary="r(AA^+ + BB^+) = r[A,B]",
    slots=("A", "B"),
    generate=_gen_ab_cols,
    constraints=(("A and B have equal row counts",
                  lambda d: d["A"].rows == d["B"].rows),),
    evaluate=lambda d: (
        rank(d["A"] @ mp(d["A"]) + d["B"] @ mp(d["B"])),
        rank(hstack(d["A"], d["B"]))),
))

register(IdentityCase(
    id="7.2d", tier=GOLD, needs_mp=True,
    summary="r(A^+A + C^+C) = r[A;C]",
    slots=("A", "C"),
    generate=_gen_ac_rows,
    constraints=(("A and C have equal column counts",
                  lambda d: d["A"].cols == d["C"].cols),),
    evaluate=lambda d: (
        rank(mp(d["A"]) @ d["A"] + mp(d["C"]) @ d["C"]),
        rank(vstack(d["A"], d["C"]))),
))


def _gen_abc(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    k, l = gen.dim(rng, bound), gen.dim(rng, bound)
    return {
        "A": gen.mat(fld, m, n, rng),
        "B": gen.mat(fld, m, k, rng),
        "C": gen.mat(fld, l, n, rng),
    }


def _eval_75(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    lhs = rank(a - b @ mp(b) @ a @ mp(c) @ c)
    rhs = rank(block([
        [a, a @ c.conj_transpose(), b],
        [b.conj_transpose() @ a, zz(f, b.cols, c.rows), zz(f, b.cols, b.cols)],
        [c, zz(f, c.rows, c.rows), zz(f, c.rows, b.cols)],
    ])) - rank(b) - rank(c)
    return lhs, rhs


register(IdentityCase(
    id="7.5", tier=GOLD, needs_mp=True,
    summary="r(A - BB^+ A C^+C) through one bordered matrix",
    slots=("A", "B", "C"),
    generate=_gen_abc,
    evaluate=_eval_75,
))


def _bordered(a, b, c):
    return block([[a, b], [c, zz(a.field, c.rows, b.cols)]])


def _eval_78(d):
    a, b, c = d["A"], d["B"], d["C"]
    lhs = rank(a - b @ mp(b) @ a - a @ mp(c) @ c)
    rhs = (rank(_bordered(a, b, c))
           + rank(c @ a.conj_transpose() @ b) - rank(b) - rank(c))
    return lhs, rhs


register(IdentityCase(
    id="7.8", tier=GOLD, needs_mp=True,
    summary="r(A - BB^+A - AC^+C) = r[[A,B],[C,0]] + r(CA*B) - r(B) - r(C)",
    slots=("A", "B", "C"),
    generate=_gen_abc,
    evaluate=_eval_78,
))


def _eval_710(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    eb = eye(f, a.rows) - b @ mp(b)
    fc = eye(f, a.cols) - mp(c) @ c
    lhs = rank(a - a @ mp(eb @ a @ fc) @ a)
    rhs = rank(a) + rank(b) + rank(c) - rank(_bordered(a, b, c))
    return lhs, rhs


register(IdentityCase(
    id="7.10", tier=GOLD, needs_mp=True,
    summary="r(A - A (E_B A F_C)^+ A) = r(A) + r(B) + r(C) - r[[A,B],[C,0]]",
    slots=("A", "B", "C"),
    generate=_gen_abc,
    evaluate=_eval_710,
))


def _gen_row_pair(rng, bound, fld):
    m = gen.dim(rng, bound)
    n1, n2 = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A1": gen.mat(fld, m, n1, rng), "A2": gen.mat(fld, m, n2, rng)}


def _eval_717(d):
    a1, a2 = d["A1"], d["A2"]
    f = a1.field
    a = hstack(a1, a2)
    lhs = rank(a @ mp(a) - a1 @ mp(a1) - a2 @ mp(a2))
    gram = block([
        [zz(f, a1.cols, a1.cols), a1.conj_transpose() @ a2],
        [a2.conj_transpose() @ a1, zz(f, a2.cols, a2.cols)],
    ])
    rhs = rank(gram) + rank(a) - rank(a1) - rank(a2)
    return lhs, rhs


register(IdentityCase(
    id="7.17", tier=GOLD, needs_mp=True,
    summary="defect of column-block projector additivity for A = [A1, A2]",
    slots=("A1", "A2"),
    generate=_gen_row_pair,
    constraints=(("A1 and A2 have equal row counts",
                  lambda d: d["A1"].rows == d["A2"].rows),),
    evaluate=_eval_717,
))


def _eval_721(d):
    a1, a2 = d["A1"], d["A2"]
    f = a1.field
    a = hstack(a1, a2)
    dd = block([
        [mp(a1) @ a1, zz(f, a1.cols, a2.cols)],
        [zz(f, a2.cols, a1.cols), mp(a2) @ a2],
    ])
    lhs = rank(mp(a) @ a - dd)
    rhs = rank(a1) + rank(a2) - rank(a)
    return lhs, rhs


register(IdentityCase(
    id="7.21", tier=GOLD, needs_mp=True,
    summary="r(A^+A - diag(A1^+A1, A2^+A2)) = r(A1) + r(A2) - r(A) "
    "for A = [A1, A2]",
    slots=("A1", "A2"),
    generate=_gen_row_pair,
    constraints=(("A1 and A2 have equal row counts",
                  lambda d: d["A1"].rows == d["A2"].rows),),
    evaluate=_eval_721,
))


# --- Chapter 8: reverse order laws ---


def _gen_chain2(rng, bound, fld):
    m, n, p = gen.dim(rng, bound), gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng), "B": gen.mat(fld, n, p, rng)}


_CHAIN2 = (("A B is conformable", lambda d: d["A"].cols == d["B"].rows),)


def _eval_81(d):
    a, b = d["A"], d["B"]
    ab = a @ b
    x = mp(b) @ mp(a)
    lhs = rank(ab - ab @ x @ ab)
    lhs2 = rank(x - x @ ab @ x)
    rhs = (rank(hstack(a.conj_transpose(), b)) + rank(ab)
           - rank(a) - rank(b))
    return enc(lhs, lhs2), enc(rhs, rhs)


register(IdentityCase(
    id="8.1", tier=GOLD, needs_mp=True,
    summary="defect of B^+A^+ from being a reflexive inner inverse of AB",
    slots=("A", "B"),
    generate=_gen_chain2, constraints=_CHAIN2,
    evaluate=_eval_81,
))

register(IdentityCase(
    id="8.2a", tier=GOLD, needs_mp=True,
    summary="r((AB)(AB)^+ - (AB)(B^+A^+)) = r[B, A*AB] - r(B)",
    slots=("A", "B"),
    generate=_gen_chain2, constraints=_CHAIN2,
    evaluate=lambda d: (
        rank(d["A"] @ d["B"] @ mp(d["A"] @ d["B"])
             - d["A"] @ d["B"] @ mp(d["B"]) @ mp(d["A"])),
        rank(hstack(d["B"], d["A"].conj_transpose() @ d["A"] @ d["B"]))
        - rank(d["B"])),
))

register(IdentityCase(
    id="8.2b", tier=GOLD, needs_mp=True,
    summary="r((AB)^+(AB) - (B^+A^+)(AB)) = r[A; ABB*] - r(A)",
    slots=("A", "B"),
    generate=_gen_chain2, constraints=_CHAIN2,
    evaluate=lambda d: (
        rank(mp(d["A"] @ d["B"]) @ (d["A"] @ d["B"])
             - mp(d["B"]) @ mp(d["A"]) @ d["A"] @ d["B"]),
        rank(vstack(d["A"],
                    d["A"] @ d["B"] @ d["B"].conj_transpose()))
        - rank(d["A"])),
))


def _gen_chain3(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    p, q = gen.dim(rng, bound), gen.dim(rng, bound)
    return {
        "A": gen.mat(fld, m, n, rng),
        "B": gen.mat(fld, n, p, rng),
        "C": gen.mat(fld, p, q, rng),
    }


_CHAIN3 = (("A B C is conformable",
            lambda d: d["A"].cols == d["B"].rows
            and d["B"].cols == d["C"].rows),)


def _eval_84(d):
    a, b, c = d["A"], d["B"], d["C"]
    m = a @ b @ c
    lhs = rank(mp(m) - mp(b @ c) @ b @ mp(a @ b))
    core = (vstack((b @ c).conj_transpose(), m.conj_transpose() @ a)
            @ b
            @ hstack((a @ b).conj_transpose(), c @ m.conj_transpose()))
    rhs = rank(core) - rank(m)
    return lhs, rhs


register(IdentityCase(
    id="8.4", tier=GOLD, needs_mp=True,
    summary="three-factor reverse order defect "
    "r((ABC)^+ - (BC)^+ B (AB)^+)",
    slots=("A", "B", "C"),
    generate=_gen_chain3, constraints=_CHAIN3,
    evaluate=_eval_84,
))


def _eval_86(d):
    a, b, c = d["A"], d["B"], d["C"]
    m = a @ b @ c
    ab, bc = a @ b, b @ c
    lhs = rank(mp(b) - mp(ab) @ m @ mp(bc))
    rhs = rank(block([
        [m, ab @ ab.conj_transpose()],
        [bc.conj_transpose() @ bc,
         bc.conj_transpose() @ b @ ab.conj_transpose()],
    ])) + rank(b) - rank(ab) - rank(bc)
    return lhs, rhs


register(IdentityCase(
    id="8.6", tier=GOLD, needs_mp=True,
    summary="r(B^+ - (AB)^+ (ABC) (BC)^+) through one block matrix",
    slots=("A", "B", "C"),
    generate=_gen_chain3, constraints=_CHAIN3,
    evaluate=_eval_86,
))


def _eval_811(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    m = a @ b @ c
    x = mp(c) @ mp(b) @ mp(a)
    lhs = rank(m - m @ x @ m)
    rhs = rank(block([
        [-m.conj_transpose(), zz(f, m.cols, b.cols),
         c.conj_transpose() @ c],
        [zz(f, b.rows, m.rows), b @ b.conj_transpose() @ b, b @ c],
        [a @ a.conj_transpose(), a @ b, zz(f, a.rows, c.cols)],
    ])) - rank(a) - rank(b) - rank(c) + rank(m)
    return lhs, rhs


register(IdentityCase(
    id="8.11", tier=GOLD, needs_mp=True,
    summary="defect of C^+B^+A^+ from being an inner inverse of ABC",
    slots=("A", "B", "C"),
    generate=_gen_chain3, constraints=_CHAIN3,
    evaluate=_eval_811,
))


def _eval_813(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    m = a @ b @ c
    lhs = rank(mp(m) - mp(c) @ mp(b) @ mp(a))
    rhs = rank(block([
        [-m @ m.conj_transpose() @ m, zz(f, m.rows, b.cols),
         m @ c.conj_transpose() @ c],
        [zz(f, b.rows, m.cols), b @ b.conj_transpose() @ b, b @ c],
        [a @ a.conj_transpose() @ m, a @ b, zz(f, a.rows, c.cols)],
    ])) - rank(b) - rank(m)
    return lhs, rhs


register(IdentityCase(
    id="8.13", tier=GOLD, needs_mp=True,
    summary="three-factor reverse order defect r((ABC)^+ - C^+B^+A^+)",
    slots=("A", "B", "C"),
    generate=_gen_chain3, constraints=_CHAIN3,
    evaluate=_eval_813,
))
