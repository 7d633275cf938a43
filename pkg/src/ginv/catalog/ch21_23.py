"""Extreme ranks of expressions in inner inverses: products, sums, chains.

Every inner inverse of X is base + F_X V + W E_X with free V, W, so any
expression that is affine in each inverse reduces to a two-term problem
A - B1 X1 C1 - B2 X2 C2, solved exactly by the equation toolkit.  Entries
compare the toolkit extremes against independent closed forms.
"""

from ..equations import extreme_rank_two_term
from ..inverses import inner_inverse, second_inner_inverse
from ..matrices import Matrix, block, hstack, rank, vstack
from . import gen
from ._util import enc, eye, ind, zz
from .core import AUDIT, GOLD, IdentityCase, register


def _sandwich(m1, k, x, l):
    """Extreme ranks of M1 - K X^- L over all inner inverses X^- of X.

    Returns the toolkit result plus family members attaining the max
    and the min.
    """
    fam = inner_inverse(x)
    res = extreme_rank_two_term(m1 - k @ fam.base @ l,
                                k @ fam.f_a, l, k, fam.e_a @ l)
    gmax = fam.member(*res.max_witness)
    gmin = fam.member(*res.min_witness)
    return res, gmax, gmin


def _gen_pair(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng), "B": gen.mat(fld, m, n, rng)}


def _gen_square(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, m, rng)}


_PAIR = (("A and B have the same shape",
          lambda d: d["A"].shape == d["B"].shape),)
_SQ = (("A is square", lambda d: d["A"].is_square()),)


# -- products with a single inverse -----------------------------------------

def _eval_2128(d):
    a, b = d["A"], d["B"]
    res, _, _ = _sandwich(a, a, b, a)
    return enc(res.max_value), enc(min(rank(a), rank(b - a) - rank(b) + rank(a)))


register(IdentityCase(
    id="21.28", tier=GOLD,
    summary="max over B^- of r(A - A B^- A) = min{r(A), r(B-A) - r(B) + r(A)}",
    slots=("A", "B"), generate=_gen_pair, constraints=_PAIR,
    evaluate=_eval_2128,
))


def _eval_2129(d):
    a, b = d["A"], d["B"]
    f = a.field
    m, n = a.shape
    res, _, _ = _sandwich(a, a, b, a)
    fa, fb = inner_inverse(a), inner_inverse(b)
    # A^- - B^- over both families, the V and W blocks stacked side by side
    pair = extreme_rank_two_term(
        fa.base - fb.base,
        hstack(fa.f_a, fb.f_a), eye(f, m),
        eye(f, n), vstack(fa.e_a, fb.e_a))
    cf = (rank(a - b) + rank(a) + rank(b)
          - rank(hstack(a, b)) - rank(vstack(a, b)))
    return enc(res.min_value, pair.min_value), enc(cf, cf)


register(IdentityCase(
    id="21.29", tier=GOLD,
    summary="min over B^- of r(A - A B^- A) = min over A^-, B^- of "
            "r(A^- - B^-) = r(A-B) + r(A) + r(B) - r[A,B] - r[A;B]",
    slots=("A", "B"), generate=_gen_pair, constraints=_PAIR,
    evaluate=_eval_2129,
))


def _eval_2149(d):
    a, b = d["A"], d["B"]
    f = a.field
    s = a + b
    res, _, _ = _sandwich(zz(f, a.rows, a.cols), a, s, b)
    return (enc(res.max_value),
            enc(min(rank(a), rank(b), rank(a) + rank(b) - rank(s))))


register(IdentityCase(
    id="21.49", tier=GOLD,
    summary="max over (A+B)^- of r(A (A+B)^- B) = "
            "min{r(A), r(B), r(A) + r(B) - r(A+B)}",
    slots=("A", "B"), generate=_gen_pair, constraints=_PAIR,
    evaluate=_eval_2149,
))


def _eval_2150(d):
    a, b = d["A"], d["B"]
    f = a.field
    s = a + b
    res, _, _ = _sandwich(zz(f, a.rows, a.cols), a, s, b)
    cf = (rank(s) + rank(a) + rank(b)
          - rank(hstack(a, b)) - rank(vstack(a, b)))
    return enc(res.min_value), enc(cf)


register(IdentityCase(
    id="21.50", tier=GOLD,
    summary="min over (A+B)^- of r(A (A+B)^- B) = "
            "r(A+B) + r(A) + r(B) - r[A,B] - r[A;B]",
    slots=("A", "B"), generate=_gen_pair, constraints=_PAIR,
    evaluate=_eval_2150,
))


def _bilinear_sum_extreme(a, b, maximize):
    # optimize r(A^- (A+B) B^-) one inverse at a time; each stage is an
    # exact two-term problem and the stages separate
    f = a.field
    m, n = a.shape
    s = a + b
    res_b, gmax, gmin = _sandwich(zz(f, m, m), s, b, eye(f, m))
    g = gmax if maximize else gmin
    res_a, _, _ = _sandwich(zz(f, n, m), eye(f, n), a, s @ g)
    return res_a.max_value if maximize else res_a.min_value


register(IdentityCase(
    id="21.51", tier=GOLD,
    summary="max over A^-, B^- of r(A^- (A+B) B^-) = r(A+B)",
    slots=("A", "B"), generate=_gen_pair, constraints=_PAIR,
    evaluate=lambda d: (
        enc(_bilinear_sum_extreme(d["A"], d["B"], True)),
        enc(rank(d["A"] + d["B"]))),
))

register(IdentityCase(
    id="21.52", tier=GOLD,
    summary="min over A^-, B^- of r(A^- (A+B) B^-) = "
            "r(A+B) + r(A) + r(B) - r[A,B] - r[A;B]",
    slots=("A", "B"), generate=_gen_pair, constraints=_PAIR,
    evaluate=lambda d: (
        enc(_bilinear_sum_extreme(d["A"], d["B"], False)),
        enc(rank(d["A"] + d["B"]) + rank(d["A"]) + rank(d["B"])
            - rank(hstack(d["A"], d["B"])) - rank(vstack(d["A"], d["B"])))),
))


# -- commutator of a matrix with its inner inverse --------------------------

def _commutator_extremes(a):
    # A A^- - A^- A = (A base - base A) + A W E_A - F_A V A, and the two
    # free blocks are independent
    fam = inner_inverse(a)
    return extreme_rank_two_term(a @ fam.base - fam.base @ a,
                                 fam.f_a, a, a, fam.e_a)


register(IdentityCase(
    id="21.69", tier=AUDIT,
    summary="max over A^- of r(A A^- - A^- A) = min{2m - 2r(A), 2r(A)}",
    slots=("A",), generate=_gen_square, constraints=_SQ,
    evaluate=lambda d: (
        enc(_commutator_extremes(d["A"]).max_value),
        enc(min(2 * d["A"].rows - 2 * rank(d["A"]), 2 * rank(d["A"])))),
))

register(IdentityCase(
    id="21.70", tier=AUDIT,
    summary="min over A^- of r(A A^- - A^- A) = 2r(A) - 2r(A^2)",
    slots=("A",), generate=_gen_square, constraints=_SQ,
    evaluate=lambda d: (
        enc(_commutator_extremes(d["A"]).min_value),
        enc(2 * rank(d["A"]) - 2 * rank(d["A"] @ d["A"]))),
))


# -- complements of two idempotent projectors --------------------------------

def _proj_sum_mins(p, q):
    """min r(I - P P^- - Q Q^-) and min r(I - P^- P - Q^- Q)."""
    f = p.field
    i_m = eye(f, p.rows)
    famp, famq = inner_inverse(p), inner_inverse(q)
    right = extreme_rank_two_term(
        i_m - p @ famp.base - q @ famq.base,
        p, famp.e_a, q, famq.e_a)
    left = extreme_rank_two_term(
        i_m - famp.base @ p - famq.base @ q,
        famp.f_a, p, famq.f_a, q)
    return right.min_value, left.min_value


def _eval_2193(d):
    a = d["A"]
    i_m = eye(a.field, a.rows)
    r, l = _proj_sum_mins(a, i_m - a)
    t = rank(a - a @ a)
    return enc(r, l), enc(t, t)


register(IdentityCase(
    id="21.93", tier=GOLD,
    summary="min over A^-, (I-A)^- of r(I - A A^- - (I-A)(I-A)^-) = r(A - A^2)",
    slots=("A",), generate=_gen_square, constraints=_SQ,
    evaluate=_eval_2193,
))


def _eval_2194(d):
    a = d["A"]
    i_m = eye(a.field, a.rows)
    r, l = _proj_sum_mins(i_m + a, i_m - a)
    t = rank(i_m - a @ a)
    return enc(r, l), enc(t, t)


register(IdentityCase(
    id="21.94", tier=GOLD, char_not_2=True,
    summary="min over (I+A)^-, (I-A)^- of "
            "r(I - (I+A)(I+A)^- - (I-A)(I-A)^-) = r(I - A^2)",
    slots=("A",), generate=_gen_square, constraints=_SQ,
    evaluate=_eval_2194,
))


def _gen_shifted(rng, bound, fld):
    m = gen.dim(rng, bound)
    l1, l2 = gen.distinct_scalars(fld, 2, rng)
    return {"A": gen.mat(fld, m, m, rng), "L": Matrix(fld, 1, 2, [l1, l2])}


def _eval_2195(d):
    a, lam = d["A"], d["L"]
    i_m = eye(a.field, a.rows)
    p = a - i_m.scale(lam.get(0, 0))
    q = a - i_m.scale(lam.get(0, 1))
    r, l = _proj_sum_mins(p, q)
    t = rank(p @ q)
    return enc(r, l), enc(t, t)


register(IdentityCase(
    id="21.95", tier=GOLD,
    summary="for distinct shifts s, t: min over (A-sI)^-, (A-tI)^- of "
            "r(I - (A-sI)(A-sI)^- - (A-tI)(A-tI)^-) = r((A-sI)(A-tI))",
    slots=("A", "L"), generate=_gen_shifted,
    constraints=_SQ + (
        ("L is a 1 x 2 row of two distinct shifts",
         lambda d: d["L"].shape == (1, 2)
         and d["L"].get(0, 0) != d["L"].get(0, 1)),),
    evaluate=_eval_2195,
))


# -- triple products and reverse-order inner inverses ------------------------

def _gen_chain(rng, bound, fld):
    m, n, p, q = (gen.dim(rng, bound) for _ in range(4))
    return {"A": gen.mat(fld, m, n, rng),
            "B": gen.mat(fld, n, p, rng),
            "C": gen.mat(fld, p, q, rng)}


_CHAIN = (
    ("A and B are conformable", lambda d: d["A"].cols == d["B"].rows),
    ("B and C are conformable", lambda d: d["B"].cols == d["C"].rows),
)


def _eval_227(d):
    a, b, c = d["A"], d["B"], d["C"]
    ab, bc = a @ b, b @ c
    m_ = a @ bc
    vals = []
    for g in (inner_inverse(bc).base, second_inner_inverse(bc)):
        res, _, _ = _sandwich(m_, m_ @ g @ b, ab, m_)
        vals.append(res.min_value)
    for h in (inner_inverse(ab).base, second_inner_inverse(ab)):
        res, _, _ = _sandwich(m_, m_, bc, b @ h @ m_)
        vals.append(res.min_value)
    return enc(*vals), enc(0, 0, 0, 0)


register(IdentityCase(
    id="22.7", tier=GOLD,
    summary="with M = ABC and either of (AB)^-, (BC)^- held fixed, the other "
            "can always be chosen with M (BC)^- B (AB)^- an inner inverse of M",
    slots=("A", "B", "C"), generate=_gen_chain, constraints=_CHAIN,
    evaluate=_eval_227,
))


def _eval_228(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    m = a.rows
    ab, bc = a @ b, b @ c
    m_ = a @ bc
    fam = inner_inverse(bc)
    # maximize r[AB; M G B] over the (BC)^- family first, then the rest
    res = extreme_rank_two_term(
        vstack(ab, m_ @ fam.base @ b),
        vstack(zz(f, m, bc.cols), m_ @ fam.f_a), b,
        vstack(zz(f, m, bc.cols), m_), fam.e_a @ b)
    x1, x2 = res.max_witness
    g = fam.member(-x1, -x2)
    res2, _, _ = _sandwich(m_, m_ @ g @ b, ab, m_)
    cf = min(rank(m_), rank(m_) - rank(ab) - rank(bc) + rank(b))
    return enc(res2.max_value), enc(cf)


register(IdentityCase(
    id="22.8", tier=GOLD,
    summary="max over (AB)^-, (BC)^- of r(M - M (BC)^- B (AB)^- M) = "
            "min{r(M), r(M) - r(AB) - r(BC) + r(B)}, M = ABC",
    slots=("A", "B", "C"), generate=_gen_chain, constraints=_CHAIN,
    evaluate=_eval_228,
))


def _gen_2217(rng, bound, fld):
    style = rng.below(4)
    if style == 0:
        # BC = 0, so the reverse-order products are always inner inverses
        m, n, p, q = (gen.dim(rng, bound) for _ in range(4))
        b = gen.mat(fld, n, p, rng)
        fam = inner_inverse(b)
        c = fam.f_a @ gen.mat(fld, p, q, rng)
        return {"A": gen.mat(fld, m, n, rng), "B": b, "C": c}
    if style == 1:
        # invertible chain, the rank-additivity branch
        n = gen.dim(rng, bound)
        return {"A": gen.invertible(fld, n, rng),
                "B": gen.invertible(fld, n, rng),
                "C": gen.invertible(fld, n, rng)}
    return _gen_chain(rng, bound, fld)


def _eval_2217(d):
    a, b, c = d["A"], d["B"], d["C"]
    m_ = a @ b @ c
    n_, p_ = a.cols, b.cols
    starts = [(inner_inverse(a).base, inner_inverse(b).base,
               inner_inverse(c).base),
              (second_inner_inverse(a), second_inner_inverse(b),
               second_inner_inverse(c))]
    best = 0
    for ga, gb, gc in starts:
        for _ in range(2):
            res, gc, _ = _sandwich(m_, m_, c, gb @ ga @ m_)
            best = max(best, res.max_value)
            res, gb, _ = _sandwich(m_, m_ @ gc, b, ga @ m_)
            best = max(best, res.max_value)
            res, ga, _ = _sandwich(m_, m_ @ gc @ gb, a, m_)
            best = max(best, res.max_value)
            if best:
                break
        if best:
            break
    rhs = m_.is_zero() or rank(m_) == rank(a) + rank(b) + rank(c) - n_ - p_
    return ind(best == 0), ind(rhs)


register(IdentityCase(
    id="22.17", tier=GOLD,
    summary="every C^- B^- A^- is an inner inverse of ABC iff ABC = 0 or "
            "r(ABC) = r(A) + r(B) + r(C) - n - p (A m x n, B n x p)",
    slots=("A", "B", "C"), generate=_gen_2217, constraints=_CHAIN,
    evaluate=_eval_2217,
))


# -- sums of two inner inverses ----------------------------------------------

def _pair_sum_extremes(a, b, w):
    """Extreme ranks of W - W (A^- + B^-) W over both families."""
    fa, fb = inner_inverse(a), inner_inverse(b)
    return extreme_rank_two_term(
        w - w @ (fa.base + fb.base) @ w,
        w @ hstack(fa.f_a, fb.f_a), w,
        w, vstack(fa.e_a, fb.e_a) @ w)


def _eval_233(d):
    a, b = d["A"], d["B"]
    s = a + b
    res = _pair_sum_extremes(a, b, s)
    cf = min(rank(s),
             rank(block([[s, a], [b, s]])) + rank(s) - rank(a) - rank(b))
    return enc(res.max_value), enc(cf)


register(IdentityCase(
    id="23.3", tier=GOLD,
    summary="max over A^-, B^- of r(M - M (A^- + B^-) M), M = A + B, "
            "= min{r(M), r[[M,A],[B,M]] + r(M) - r(A) - r(B)}",
    slots=("A", "B"), generate=_gen_pair, constraints=_PAIR,
    evaluate=_eval_233,
))


def _eval_234(d):
    a, b = d["A"], d["B"]
    f = a.field
    z = zz(f, a.rows, a.cols)
    s = a + b
    res = _pair_sum_extremes(a, b, s)
    cf = (rank(a) + rank(b) + rank(s) + rank(block([[s, a], [b, s]]))
          - rank(block([[a, z, b], [z, b, a]]))
          - rank(block([[a, z], [z, b], [b, a]])))
    return enc(res.min_value), enc(cf)


register(IdentityCase(
    id="23.4", tier=GOLD,
    summary="min over A^-, B^- of r(M - M (A^- + B^-) M), M = A + B, in "
            "terms of r(A), r(B), r(M) and three block ranks",
    slots=("A", "B"), generate=_gen_pair, constraints=_PAIR,
    evaluate=_eval_234,
))


def _gen_triple_same(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng),
            "B": gen.mat(fld, m, n, rng),
            "C": gen.mat(fld, m, n, rng)}


_TRIPLE = (("A, B and C have the same shape",
            lambda d: d["A"].shape == d["B"].shape == d["C"].shape),)


def _eval_2321(d):
    a, b, c = d["A"], d["B"], d["C"]
    res = _pair_sum_extremes(a, b, c)
    cf = min(rank(c),
             rank(block([[a - c, c], [c, b - c]]))
             + rank(c) - rank(a) - rank(b))
    return enc(res.max_value), enc(cf)


register(IdentityCase(
    id="23.21", tier=GOLD,
    summary="max over A^-, B^- of r(C - C (A^- + B^-) C) = "
            "min{r(C), r[[A-C,C],[C,B-C]] + r(C) - r(A) - r(B)}",
    slots=("A", "B", "C"), generate=_gen_triple_same, constraints=_TRIPLE,
    evaluate=_eval_2321,
))


def _eval_2322(d):
    a, b, c = d["A"], d["B"], d["C"]
    f = a.field
    z = zz(f, a.rows, a.cols)
    res = _pair_sum_extremes(a, b, c)
    cf = (rank(a) + rank(b) + rank(c)
          + rank(block([[a - c, c], [c, b - c]]))
          - rank(block([[a, z, c], [z, b, c]]))
          - rank(block([[a, z], [z, b], [c, c]])))
    return enc(res.min_value), enc(cf)


register(IdentityCase(
    id="23.22", tier=GOLD,
    summary="min over A^-, B^- of r(C - C (A^- + B^-) C) in terms of "
            "r(A), r(B), r(C) and three block ranks",
    slots=("A", "B", "C"), generate=_gen_triple_same, constraints=_TRIPLE,
    evaluate=_eval_2322,
))


def _gen_summable(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    s = gen.mat(fld, m, n, rng)
    a = s @ gen.mat(fld, n, m, rng) @ s
    return {"A": a, "B": s - a}


def _eval_2334(d):
    a, b = d["A"], d["B"]
    s = a + b
    g1 = inner_inverse(s).base
    g2 = second_inner_inverse(s)
    t = rank(a) + rank(b) - rank(s)
    return enc(rank(a @ g1 @ b), rank(a @ g2 @ b)), enc(t, t)


register(IdentityCase(
    id="23.34", tier=GOLD,
    summary="when the ranges of B and of the rows of A lie in those of "
            "A + B, r(A (A+B)^- B) = r(A) + r(B) - r(A+B) for every (A+B)^-",
    slots=("A", "B"), generate=_gen_summable,
    constraints=_PAIR + (
        ("the column space of B lies in that of A + B",
         lambda d: rank(hstack(d["A"] + d["B"], d["B"]))
         == rank(d["A"] + d["B"])),
        ("the row space of B lies in that of A + B",
         lambda d: rank(vstack(d["A"] + d["B"], d["B"]))
         == rank(d["A"] + d["B"])),),
    evaluate=_eval_2334,
))
