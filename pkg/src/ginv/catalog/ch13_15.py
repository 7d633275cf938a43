"""Rank identities for Drazin inverses, their block structure, and
reverse order laws for Drazin inverses of products."""

from ..inverses import drazin, group_inverse, index
from ..inverses import moore_penrose as mp
from ..matrices import Matrix, block, hstack, rank, vstack
from . import gen
from ._util import enc, eye, ind, zz
from .core import AUDIT, GOLD, IdentityCase, register


def _gen_square(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"A": gen.mixed_index(fld, m, rng)}


def _dz_case(case_id, summary, evaluate, tier=GOLD, **kw):
    register(IdentityCase(
        id=case_id, tier=tier, summary=summary, slots=("A",),
        generate=_gen_square,
        constraints=(("A is square", lambda d: d["A"].is_square()),),
        evaluate=evaluate, **kw))


def _eval_131a(d):
    a = d["A"]
    x = drazin(a)
    i = eye(a.field, a.rows)
    return (enc(rank(i + x), rank(i - x)),
            enc(rank(i + a), rank(i - a)))


_dz_case("13.1a", "r(I +/- A^d) = r(I +/- A)", _eval_131a)


def _eval_131b(d):
    a = d["A"]
    x = drazin(a)
    i = eye(a.field, a.rows)
    return rank(i - x @ x), rank(i - a @ a)


_dz_case("13.1b", "r(I - (A^d)^2) = r(I - A^2)", _eval_131b)


def _eval_132a(d):
    a = d["A"]
    x = drazin(a)
    rr = rank(a - a @ a)
    return (enc(rank(a - a @ x), rank(a - x @ a)), enc(rr, rr))


_dz_case("13.2a", "r(A - A A^d) = r(A - A^d A) = r(A - A^2)", _eval_132a)


def _eval_132b(d):
    a = d["A"]
    x = drazin(a)
    k = index(a)
    return rank(a - a @ x @ a), rank(a) - rank(a ** k)


_dz_case("13.2b", "r(A - A A^d A) = r(A) - r(A^k), k = Ind(A)", _eval_132b)


def _eval_133a(d):
    a = d["A"]
    x = drazin(a)
    k = index(a)
    ak = a ** k
    lhs = rank(a - x)
    return (enc(lhs, lhs),
            enc(rank(a ** (k + 2) - ak) + rank(a) - rank(ak),
                rank(a - a ** 3)))


_dz_case(
    "13.3a",
    "r(A - A^d) = r(A^{k+2} - A^k) + r(A) - r(A^k) = r(A - A^3)",
    _eval_133a)


def _eval_137a(d):
    a = d["A"]
    x = drazin(a)
    k = index(a)
    ak, ak1 = a ** k, a ** (k + 1)
    return (enc(rank(x + x @ x), rank(x - x @ x)),
            enc(rank(ak1 + ak), rank(ak1 - ak)))


_dz_case("13.7a", "r(A^d +/- (A^d)^2) = r(A^{k+1} +/- A^k)", _eval_137a)


def _eval_139(which):
    def ev(d):
        a = d["A"]
        p = a @ drazin(a)
        ps = p.conj_transpose()
        ak = a ** index(a)
        rhs = 2 * rank(hstack(ak, ak.conj_transpose())) - 2 * rank(ak)
        lhs = rank(p - ps) if which == "a" else rank(p @ ps - ps @ p)
        return lhs, rhs
    return ev


_dz_case("13.9a", "r(AA^d - (AA^d)*) = 2r[A^k, (A^k)*] - 2r(A^k)",
         _eval_139("a"), needs_mp=True)
_dz_case("13.9b",
         "r((AA^d)(AA^d)* - (AA^d)*(AA^d)) = 2r[A^k, (A^k)*] - 2r(A^k)",
         _eval_139("b"), needs_mp=True)


def _power_star_rhs(a):
    ak = a ** index(a)
    st = a.conj_transpose()
    return (rank(vstack(ak, st)), rank(hstack(ak, st)),
            rank(ak), rank(a))


def _eval_1310a(d):
    a = d["A"]
    col, row, rk, ra = _power_star_rhs(a)
    return rank(mp(a) - drazin(a)), col + row - rk - ra


_dz_case("13.10a", "r(A^+ - A^d) = r[A^k;A*] + r[A^k,A*] - r(A^k) - r(A)",
         _eval_1310a, needs_mp=True)


def _eval_1311(which):
    def ev(d):
        a = d["A"]
        x, g = mp(a), drazin(a)
        col, row, rk, _ = _power_star_rhs(a)
        if which == "a":
            return rank(a @ x - a @ g), col - rk
        return rank(x @ a - g @ a), row - rk
    return ev


_dz_case("13.11a", "r(AA^+ - AA^d) = r[A^k; A*] - r(A^k)",
         _eval_1311("a"), needs_mp=True)
_dz_case("13.11b", "r(A^+A - A^dA) = r[A^k, A*] - r(A^k)",
         _eval_1311("b"), needs_mp=True)


def _eval_1312a(d):
    a = d["A"]
    x, g = mp(a), drazin(a)
    ak = a ** index(a)
    col, row, _, ra = _power_star_rhs(a)
    rhs = col + row - 2 * ra
    return (enc(rank(x @ g - g @ x), rank(x @ ak - ak @ x)),
            enc(rhs, rhs))


_dz_case("13.12a",
         "r(A^+A^d - A^dA^+) = r(A^+A^k - A^kA^+) "
         "= r[A^k;A*] + r[A^k,A*] - 2r(A)",
         _eval_1312a, needs_mp=True)


def _gen_square_pair(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"A": gen.mixed_index(fld, m, rng),
            "B": gen.mixed_index(fld, m, rng)}


_SQ_PAIR = (("A and B are square of the same size",
             lambda d: d["A"].is_square()
             and d["A"].shape == d["B"].shape),)


def _eval_1322a(d):
    a, b = d["A"], d["B"]
    ak, bl = a ** index(a), b ** index(b)
    lhs = rank(a @ drazin(a) - b @ drazin(b))
    rhs = (rank(vstack(ak, bl)) + rank(hstack(ak, bl))
           - rank(ak) - rank(bl))
    return lhs, rhs


register(IdentityCase(
    id="13.22a", tier=GOLD,
    summary="r(AA^d - BB^d) = r[A^k;B^l] + r[A^k,B^l] - r(A^k) - r(B^l)",
    slots=("A", "B"),
    generate=_gen_square_pair, constraints=_SQ_PAIR,
    evaluate=_eval_1322a,
))


def _gen_index_one_pair(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"A": gen.index_one(fld, m, rng), "B": gen.index_one(fld, m, rng)}


register(IdentityCase(
    id="13.22b", tier=GOLD,
    summary="r(AA^# - BB^#) = r[A;B] + r[A,B] - r(A) - r(B) "
    "for group-invertible A, B",
    slots=("A", "B"),
    generate=_gen_index_one_pair,
    constraints=_SQ_PAIR + (
        ("A has index at most 1",
         lambda d: rank(d["A"] @ d["A"]) == rank(d["A"])),
        ("B has index at most 1",
         lambda d: rank(d["B"] @ d["B"]) == rank(d["B"])),
    ),
    evaluate=lambda d: (
        rank(d["A"] @ group_inverse(d["A"]) - d["B"] @ group_inverse(d["B"])),
        rank(vstack(d["A"], d["B"])) + rank(hstack(d["A"], d["B"]))
        - rank(d["A"]) - rank(d["B"])),
))


# --- Chapter 14: block structure of the Drazin inverse ---


def _gen_block_singular(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    big = gen.singular(fld, m + n, rng)
    return _split_square(big, m)


def _split_square(big, m):
    n = big.rows - m
    return {
        "A": big.extract((0, m), (0, m)),
        "B": big.extract((0, m), (m, m + n)),
        "C": big.extract((m, m + n), (0, m)),
        "D": big.extract((m, m + n), (m, m + n)),
    }


_SQ_BLOCKS = (
    ("A and D are square", lambda d: d["A"].is_square()
     and d["D"].is_square()),
    ("B joins A-rows to D-columns",
     lambda d: d["B"].shape == (d["A"].rows, d["D"].cols)),
    ("C joins D-rows to A-columns",
     lambda d: d["C"].shape == (d["D"].rows, d["A"].cols)),
)


def _assemble(d):
    m_ = block([[d["A"], d["B"]], [d["C"], d["D"]]])
    m = d["A"].rows
    v1 = vstack(d["A"], d["C"])
    v2 = vstack(d["B"], d["D"])
    w1 = hstack(d["A"], d["B"])
    w2 = hstack(d["C"], d["D"])
    return m_, m, v1, v2, w1, w2


def _drazin_blocks(m_, m):
    g = drazin(m_)
    n = m_.rows - m
    return (g.extract((0, m), (0, m)), g.extract((0, m), (m, m + n)),
            g.extract((m, m + n), (0, m)), g.extract((m, m + n), (m, m + n)))


def _eval_14x(which):
    def ev(d):
        a, b, c, dd = d["A"], d["B"], d["C"], d["D"]
        f = a.field
        m_, m, v1, v2, w1, w2 = _assemble(d)
        gs = _drazin_blocks(m_, m)
        k = index(m_)
        mk, mk1 = m_ ** k, m_ ** (k - 1)
        js = {
            1: block([[-a, zz(f, a.rows, dd.cols)],
                      [zz(f, dd.rows, a.cols), dd]]),
            2: block([[zz(f, a.rows, a.cols), b],
                      [-c, zz(f, dd.rows, dd.cols)]]),
            3: block([[zz(f, a.rows, a.cols), -b],
                      [c, zz(f, dd.rows, dd.cols)]]),
            4: block([[a, zz(f, a.rows, dd.cols)],
                      [zz(f, dd.rows, a.cols), -dd]]),
        }
        v = {1: v1, 2: v2, 3: v1, 4: v2}[which]
        w = {1: w1, 2: w1, 3: w2, 4: w2}[which]
        core = mk @ js[which] @ mk
        rhs = rank(block([
            [core, mk1 @ v],
            [w @ mk1, zz(f, w.rows, v.cols)],
        ])) - rank(mk)
        return rank(gs[which - 1]), rhs
    return ev


for _cid, _which in (("14.4", 1), ("14.5", 2), ("14.6", 3), ("14.7", 4)):
    register(IdentityCase(
        id=_cid, tier=AUDIT,
        summary="rank of block %d of the Drazin inverse of a singular "
        "2x2 block matrix" % _which,
        slots=("A", "B", "C", "D"),
        generate=_gen_block_singular,
        constraints=_SQ_BLOCKS + (
            ("the assembled block matrix is singular",
             lambda d: rank(block([[d["A"], d["B"]], [d["C"], d["D"]]]))
             < d["A"].rows + d["D"].rows),
        ),
        evaluate=_eval_14x(_which),
    ))


def _gen_block_index_one(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    return _split_square(gen.index_one(fld, m + n, rng), m)


_INDEX_ONE_BLOCKS = _SQ_BLOCKS + (
    ("the assembled block matrix has index at most 1",
     lambda d: rank(block([[d["A"], d["B"]], [d["C"], d["D"]]]) ** 2)
     == rank(block([[d["A"], d["B"]], [d["C"], d["D"]]]))),
)


def _group_corner_rhs(core, v, w, m_):
    f = core.field
    return rank(block([[core, v], [w, zz(f, w.rows, v.cols)]])) - rank(m_)


def _eval_1413(d):
    a, b = d["A"], d["B"]
    m_, m, v1, v2, w1, w2 = _assemble(d)
    g1, g2, _, _ = _drazin_blocks(m_, m)
    return (enc(rank(g1), rank(g2)),
            enc(_group_corner_rhs(v2 @ d["D"] @ w2, v1, w1, m_),
                _group_corner_rhs(v1 @ b @ w2, v2, w1, m_)))


def _eval_1414(d):
    a, c = d["A"], d["C"]
    m_, m, v1, v2, w1, w2 = _assemble(d)
    _, _, g3, g4 = _drazin_blocks(m_, m)
    return (enc(rank(g3), rank(g4)),
            enc(_group_corner_rhs(v2 @ c @ w1, v1, w2, m_),
                _group_corner_rhs(v1 @ a @ w1, v2, w2, m_)))


register(IdentityCase(
    id="14.13", tier=GOLD,
    summary="leading blocks of the group inverse of a 2x2 block matrix: "
    "r(G1) = r[[V2 D W2, V1],[W1,0]] - r(M), "
    "r(G2) = r[[V1 B W2, V2],[W1,0]] - r(M)",
    slots=("A", "B", "C", "D"),
    generate=_gen_block_index_one, constraints=_INDEX_ONE_BLOCKS,
    evaluate=_eval_1413,
))

register(IdentityCase(
    id="14.14", tier=GOLD,
    summary="trailing blocks of the group inverse of a 2x2 block matrix: "
    "r(G3) = r[[V2 C W1, V1],[W2,0]] - r(M), "
    "r(G4) = r[[V1 A W1, V2],[W2,0]] - r(M)",
    slots=("A", "B", "C", "D"),
    generate=_gen_block_index_one, constraints=_INDEX_ONE_BLOCKS,
    evaluate=_eval_1414,
))


# --- Chapter 15: reverse order law for Drazin inverses ---


def _gen_triple_square(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"A": gen.mixed_index(fld, m, rng),
            "B": gen.mixed_index(fld, m, rng),
            "C": gen.mixed_index(fld, m, rng)}


def _gen_triple_mixed(rng, bound, fld):
    # odd trials commute by construction, so both branches of the
    # reverse order law are exercised
    m = gen.dim(rng, bound)
    if rng.below(2):
        s = gen.mixed_index(fld, m, rng)
        i = Matrix.identity(fld, m)
        pick = lambda: (s ** rng.randint(1, 2)
                        + i.scale(fld.from_int(rng.randint(0, 1))))
        return {"A": pick(), "B": pick(), "C": pick()}
    return _gen_triple_square(rng, bound, fld)


_TRIPLE = (("A, B, C are square of the same size",
            lambda d: d["A"].is_square()
            and d["A"].shape == d["B"].shape == d["C"].shape),)


def _rol_parts(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    m = a.rows
    k1, k2, k3 = index(a), index(b), index(c)
    ak, bk, ck = a ** k1, b ** k2, c ** k3
    z = zz(f, m, m)
    n = block([
        [z, z, a ** (2 * k1 + 1)],
        [z, b ** (2 * k2 + 1), bk @ ak],
        [c ** (2 * k3 + 1), ck @ bk, z],
    ])
    p = hstack(ck, z, z)
    q = vstack(ak, z, z)
    x = drazin(c) @ drazin(b) @ drazin(a)
    m_ = a @ b @ c
    t = index(m_)
    return n, p, q, x, m_, t, ak, bk, ck


def _eval_155(d):
    n, p, q, x, m_, t, *_ = _rol_parts(d)
    f = n.field
    mt = m_ ** t
    lhs = rank(mt - m_ ** (t + 1) @ x)
    rhs = rank(block([[n, q], [m_ ** (t + 1) @ p, mt]])) - rank(n)
    return lhs, rhs


def _eval_156(d):
    n, p, q, x, m_, t, *_ = _rol_parts(d)
    mt = m_ ** t
    lhs = rank(mt - x @ m_ ** (t + 1))
    rhs = rank(block([[n, q @ m_ ** (t + 1)], [p, mt]])) - rank(n)
    return lhs, rhs


def _eval_157(d):
    n, p, q, x, m_, t, ak, bk, ck = _rol_parts(d)
    f = n.field
    b = d["B"]
    k2 = index(b)
    lhs = rank(x)
    rhs = rank(block([
        [b ** (2 * k2 + 1), bk @ ak],
        [ck @ bk, zz(f, ck.rows, ak.cols)],
    ])) - rank(bk)
    return lhs, rhs


def _eval_158(d):
    n, p, q, x, m_, t, ak, bk, ck = _rol_parts(d)
    f = n.field
    mt = m_ ** t
    law = ind(drazin(m_) == x)
    c1 = rank(block([[n, q], [m_ ** (t + 1) @ p, mt]])) == rank(n)
    c2 = rank(block([[n, q @ m_ ** (t + 1)], [p, mt]])) == rank(n)
    b = d["B"]
    k2 = index(b)
    c3 = rank(block([
        [b ** (2 * k2 + 1), bk @ ak],
        [ck @ bk, zz(f, ck.rows, ak.cols)],
    ])) == rank(bk) + rank(mt)
    return law, ind(c1 and c2 and c3)


def _eval_159(d):
    n, p, q, x, m_, t, ak, bk, ck = _rol_parts(d)
    f = n.field
    m = m_.rows
    mt = m_ ** t
    lhs = rank(drazin(m_) - x)
    big = block([
        [n, zz(f, 3 * m, m), q],
        [zz(f, m, 3 * m), -(m_ ** (2 * t + 1)), mt],
        [p, mt, zz(f, m, m)],
    ])
    rhs = rank(big) - rank(n) - rank(mt)
    return lhs, rhs


for _cid, _ev, _desc in (
    ("15.5", _eval_155,
     "left defect of the Drazin reverse order product: "
     "r(M^t - M^{t+1} C^dB^dA^d) via a bordered block matrix"),
    ("15.6", _eval_156,
     "right defect of the Drazin reverse order product: "
     "r(M^t - C^dB^dA^d M^{t+1}) via a bordered block matrix"),
    ("15.7", _eval_157,
     "r(C^dB^dA^d) = r[[B^{2k+1}, B^kA^j],[C^lB^k, 0]] - r(B^k)"),
    ("15.9", _eval_159,
     "r((ABC)^d - C^dB^dA^d) via one 5x5 block matrix"),
):
    register(IdentityCase(
        id=_cid, tier=AUDIT, summary=_desc,
        slots=("A", "B", "C"),
        generate=_gen_triple_square, constraints=_TRIPLE,
        evaluate=_ev,
    ))

register(IdentityCase(
    id="15.8", tier=AUDIT,
    summary="(ABC)^d = C^dB^dA^d iff three bordered rank equalities hold",
    slots=("A", "B", "C"),
    generate=_gen_triple_mixed, constraints=_TRIPLE,
    evaluate=_eval_158,
))
