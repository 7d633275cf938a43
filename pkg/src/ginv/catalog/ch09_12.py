"""Rank identities for Moore-Penrose inverses of block matrices and sums."""

from ..inverses import moore_penrose as mp
from ..inverses import sum_mp_via_circulant
from ..matrices import block, hstack, inverse, rank, vstack
from . import gen
from ._util import enc, eye, zz
from .core import GOLD, IdentityCase, register


def _gen_bordered(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    k, l = gen.dim(rng, bound), gen.dim(rng, bound)
    return {
        "A": gen.mat(fld, m, n, rng),
        "B": gen.mat(fld, m, k, rng),
        "C": gen.mat(fld, l, n, rng),
    }


def _gen_block4(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    k, l = gen.dim(rng, bound), gen.dim(rng, bound)
    return {
        "A": gen.mat(fld, m, n, rng),
        "B": gen.mat(fld, m, k, rng),
        "C": gen.mat(fld, l, n, rng),
        "D": gen.mat(fld, l, k, rng),
    }


_BORDERED = (
    ("A and B have equal row counts", lambda d: d["A"].rows == d["B"].rows),
    ("A and C have equal column counts", lambda d: d["A"].cols == d["C"].cols),
)

_BLOCK4 = _BORDERED + (
    ("C and D have equal row counts", lambda d: d["C"].rows == d["D"].rows),
    ("B and D have equal column counts", lambda d: d["B"].cols == d["D"].cols),
)


def _eval_92(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    m_ = block([[a, b], [c, zz(f, c.rows, b.cols)]])
    eb = eye(f, a.rows) - b @ mp(b)
    fc = eye(f, a.cols) - mp(c) @ c
    p = block([[eye(f, a.rows), eb @ a @ mp(c)],
               [zz(f, c.rows, a.rows), eye(f, c.rows)]])
    n = block([[eb @ a @ fc, b], [c, zz(f, c.rows, b.cols)]])
    q = block([[eye(f, a.cols), zz(f, a.cols, b.cols)],
               [mp(b) @ a, eye(f, b.cols)]])
    lhs = rank(mp(m_) - inverse(q) @ mp(n) @ inverse(p))
    rhs = (rank(vstack(a, c)) + rank(hstack(a, b))
           + rank(b) + rank(c) - 2 * rank(m_))
    return lhs, rhs


register(IdentityCase(
    id="9.2", tier=GOLD, needs_mp=True,
    summary="factored Moore-Penrose defect of a bordered matrix: "
    "r(M^+ - Q^-1 N^+ P^-1) = r[A;C] + r[A,B] + r(B) + r(C) - 2r(M)",
    slots=("A", "B", "C"),
    generate=_gen_bordered, constraints=_BORDERED,
    evaluate=_eval_92,
))


def _schur_factors(a, b, c, d):
    f = a.field
    p = block([[eye(f, a.rows), zz(f, a.rows, c.rows)],
               [c @ mp(a), eye(f, c.rows)]])
    ea = eye(f, a.rows) - a @ mp(a)
    fa = eye(f, a.cols) - mp(a) @ a
    n = block([[a, ea @ b], [c @ fa, d - c @ mp(a) @ b]])
    q = block([[eye(f, a.cols), mp(a) @ b],
               [zz(f, b.cols, a.cols), eye(f, b.cols)]])
    return p, n, q


def _eval_913(d):
    a, b, c, dd = d["A"], d["B"], d["C"], d["D"]
    f = a.field
    m_ = block([[a, b], [c, dd]])
    p, n, q = _schur_factors(a, b, c, dd)
    lhs = rank(mp(m_) - inverse(q) @ mp(n) @ inverse(p))
    rhs = (rank(block([[a, zz(f, a.rows, b.cols)],
                       [zz(f, a.rows, a.cols), b],
                       [c, dd]]))
           + rank(block([[a, zz(f, a.rows, a.cols), b],
                         [zz(f, c.rows, a.cols), c, dd]]))
           - 2 * rank(m_))
    return lhs, rhs


register(IdentityCase(
    id="9.13", tier=GOLD, needs_mp=True,
    summary="Schur-factored Moore-Penrose defect of a 2x2 block matrix",
    slots=("A", "B", "C", "D"),
    generate=_gen_block4, constraints=_BLOCK4,
    evaluate=_eval_913,
))


def _eval_917(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    m_ = block([[a, b], [c, zz(f, c.rows, b.cols)]])
    p, n, q = _schur_factors(a, b, c, zz(f, c.rows, b.cols))
    lhs = rank(mp(m_) - inverse(q) @ mp(n) @ inverse(p))
    rhs = (rank(vstack(a, c)) + rank(hstack(a, b))
           + rank(b) + rank(c) - 2 * rank(m_))
    return lhs, rhs


register(IdentityCase(
    id="9.17", tier=GOLD, needs_mp=True,
    summary="Schur-factored Moore-Penrose defect of a bordered matrix",
    slots=("A", "B", "C"),
    generate=_gen_bordered, constraints=_BORDERED,
    evaluate=_eval_917,
))


# --- Chapter 10: Moore-Penrose inverses of sums ---


def _gen_same_shape(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng), "B": gen.mat(fld, m, n, rng)}


_SAME = (("A and B have the same shape",
          lambda d: d["A"].shape == d["B"].shape),)


def _eval_101(d):
    a, b = d["A"], d["B"]
    n = a + b
    st, bt = a.conj_transpose(), b.conj_transpose()
    lhs = rank(n - n @ (mp(a) + mp(b)) @ n)
    rhs = rank(block([
        [a @ bt @ a, a @ st @ b + a @ bt @ b],
        [b @ st @ a + b @ bt @ a, b @ st @ b],
    ])) + rank(n) - rank(a) - rank(b)
    return lhs, rhs


register(IdentityCase(
    id="10.1", tier=GOLD, needs_mp=True,
    summary="defect of A^+ + B^+ from being an inner inverse of A + B",
    slots=("A", "B"),
    generate=_gen_same_shape, constraints=_SAME,
    evaluate=_eval_101,
))

register(IdentityCase(
    id="10.7", tier=GOLD, needs_mp=True,
    summary="r(A + B - A(A^+ + B^+)B) = r[A;B] + r[A,B] - r(A) - r(B)",
    slots=("A", "B"),
    generate=_gen_same_shape, constraints=_SAME,
    evaluate=lambda d: (
        rank(d["A"] + d["B"]
             - d["A"] @ (mp(d["A"]) + mp(d["B"])) @ d["B"]),
        rank(vstack(d["A"], d["B"])) + rank(hstack(d["A"], d["B"]))
        - rank(d["A"]) - rank(d["B"])),
))

register(IdentityCase(
    id="10.8a", tier=GOLD, needs_mp=True,
    summary="r(A(A+B)^+B) = r((A+B)A*) + r(B*(A+B)) - r(A+B)",
    slots=("A", "B"),
    generate=_gen_same_shape, constraints=_SAME,
    evaluate=lambda d: (
        rank(d["A"] @ mp(d["A"] + d["B"]) @ d["B"]),
        rank((d["A"] + d["B"]) @ d["A"].conj_transpose())
        + rank(d["B"].conj_transpose() @ (d["A"] + d["B"]))
        - rank(d["A"] + d["B"])),
))


def _eval_108c(d):
    a, b = d["A"], d["B"]
    n = a + b
    lhs = rank(a @ mp(n) @ b - b @ mp(n) @ a)
    rhs = (rank(vstack(n, n.conj_transpose() @ a))
           + rank(hstack(a @ n.conj_transpose(), n)) - 2 * rank(n))
    return lhs, rhs


register(IdentityCase(
    id="10.8c", tier=GOLD, needs_mp=True,
    summary="r(A(A+B)^+B - B(A+B)^+A) = r[N;N*A] + r[AN*,N] - 2r(N), N = A+B",
    slots=("A", "B"),
    generate=_gen_same_shape, constraints=_SAME,
    evaluate=_eval_108c,
))


def _eval_1012(d):
    a, b = d["A"], d["B"]
    f = a.field
    n = a + b
    dg = block([[a, zz(f, a.rows, a.cols)], [zz(f, a.rows, a.cols), b]])
    lhs = rank(dg - vstack(a, b) @ mp(n) @ hstack(a, b))
    rhs = rank(a) + rank(b) - rank(n)
    return lhs, rhs


register(IdentityCase(
    id="10.12", tier=GOLD, needs_mp=True,
    summary="r(diag(A,B) - [A;B](A+B)^+[A,B]) = r(A) + r(B) - r(A+B)",
    slots=("A", "B"),
    generate=_gen_same_shape, constraints=_SAME,
    evaluate=_eval_1012,
))


# --- Chapter 11: sums through block circulants ---


def _gen_k_terms(k):
    def g(rng, bound, fld):
        m, n = gen.dim(rng, bound), gen.dim(rng, bound)
        return {"A%d" % (i + 1): gen.mat(fld, m, n, rng) for i in range(k)}
    return g


def _k_terms_constraints(k):
    names = ["A%d" % (i + 1) for i in range(k)]
    return (("all terms have the same shape",
             lambda d: len({d[s].shape for s in names}) == 1),)


def _eval_circ(k):
    def ev(d):
        mats = [d["A%d" % (i + 1)] for i in range(k)]
        total = mats[0]
        for t in mats[1:]:
            total = total + t
        lhs = rank(mp(total) - sum_mp_via_circulant(mats))
        return lhs, 0
    return ev


for _k in (2, 3):
    register(IdentityCase(
        id="11.13-k%d" % _k, tier=GOLD, needs_mp=True,
        summary="(A1 + ... + A%d)^+ equals the block-circulant "
        "averaging formula" % _k,
        slots=tuple("A%d" % (i + 1) for i in range(_k)),
        generate=_gen_k_terms(_k),
        constraints=_k_terms_constraints(_k),
        evaluate=_eval_circ(_k),
    ))


# --- Chapter 12: ranks of the blocks of M^+ ---


def _mp_blocks(a, b, c, dd):
    m_ = block([[a, b], [c, dd]])
    g = mp(m_)
    n, k = a.cols, b.cols
    m, l = a.rows, c.rows
    g1 = g.extract((0, n), (0, m))
    g2 = g.extract((0, n), (m, m + l))
    g3 = g.extract((n, n + k), (0, m))
    g4 = g.extract((n, n + k), (m, m + l))
    return m_, g1, g2, g3, g4


def _corner_rhs(core, v, w, m_):
    f = core.field
    return rank(block([[core, v], [w, zz(f, w.rows, v.cols)]])) - rank(m_)


def _eval_12(which):
    def ev(d):
        a, b, c, dd = d["A"], d["B"], d["C"], d["D"]
        m_, g1, g2, g3, g4 = _mp_blocks(a, b, c, dd)
        v1, v2 = vstack(a, c), vstack(b, dd)
        w1, w2 = hstack(a, b), hstack(c, dd)
        if which == 1:
            return rank(g1), _corner_rhs(
                v2 @ dd.conj_transpose() @ w2, v1, w1, m_)
        if which == 2:
            return rank(g2), _corner_rhs(
                v2 @ b.conj_transpose() @ w1, v1, w2, m_)
        if which == 3:
            return rank(g3), _corner_rhs(
                v1 @ c.conj_transpose() @ w2, v2, w1, m_)
        return rank(g4), _corner_rhs(
            v1 @ a.conj_transpose() @ w1, v2, w2, m_)
    return ev


for _cid, _which, _desc in (
    ("12.4a", 1, "r(G1) = r[[V2 D* W2, V1],[W1, 0]] - r(M)"),
    ("12.4b", 2, "r(G2) = r[[V2 B* W1, V1],[W2, 0]] - r(M)"),
    ("12.5a", 3, "r(G3) = r[[V1 C* W2, V2],[W1, 0]] - r(M)"),
    ("12.5b", 4, "r(G4) = r[[V1 A* W1, V2],[W2, 0]] - r(M)"),
):
    register(IdentityCase(
        id=_cid, tier=GOLD, needs_mp=True,
        summary="block of M^+ for M = [[A,B],[C,D]]: " + _desc,
        slots=("A", "B", "C", "D"),
        generate=_gen_block4, constraints=_BLOCK4,
        evaluate=_eval_12(_which),
    ))


def _eval_1235(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    m_, g1, g2, g3, _ = _mp_blocks(a, b, c, zz(f, c.rows, b.cols))
    lhs = enc(rank(g1), rank(g2), rank(g3))
    rhs = enc(rank(vstack(a, c)) + rank(hstack(a, b)) - rank(m_),
              rank(c), rank(b))
    return lhs, rhs


register(IdentityCase(
    id="12.35", tier=GOLD, needs_mp=True,
    summary="blocks of the Moore-Penrose inverse of a bordered matrix: "
    "r(G1) = r[A;C] + r[A,B] - r(M), r(G2) = r(C), r(G3) = r(B)",
    slots=("A", "B", "C"),
    generate=_gen_bordered, constraints=_BORDERED,
    evaluate=_eval_1235,
))


def _eval_1236(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    m_, _, _, _, g4 = _mp_blocks(a, b, c, zz(f, c.rows, b.cols))
    st = a.conj_transpose()
    rhs = rank(block([
        [a @ st @ a, a @ st @ b, b],
        [c @ st @ a, c @ st @ b, zz(f, c.rows, b.cols)],
        [c, zz(f, c.rows, b.cols), zz(f, c.rows, b.cols)],
    ])) - rank(m_)
    return rank(g4), rhs


register(IdentityCase(
    id="12.36", tier=GOLD, needs_mp=True,
    summary="trailing block of the Moore-Penrose inverse "
    "of a bordered matrix",
    slots=("A", "B", "C"),
    generate=_gen_bordered, constraints=_BORDERED,
    evaluate=_eval_1236,
))
