"""Rank identities for weighted Moore-Penrose inverses."""

from ..inverses import moore_penrose as mp
from ..inverses import weighted_mp
from ..matrices import Matrix, block, hstack, inverse, rank, vstack
from . import gen
from ._util import ind, zz
from .core import AUDIT, GOLD, IdentityCase, register


def _gen_weighted(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng),
            "M": gen.pd_weight(fld, m, rng),
            "N": gen.pd_weight(fld, n, rng)}


def _pd(name):
    return ("%s is Hermitian positive definite" % name,
            lambda d, _n=name: d[_n].is_square()
            and _is_pd(d[_n]))


def _is_pd(w):
    from ..inverses import is_positive_definite
    return is_positive_definite(w)


_WEIGHTED = (
    ("M matches the rows of A", lambda d: d["M"].rows == d["A"].rows),
    ("N matches the columns of A", lambda d: d["N"].rows == d["A"].cols),
    _pd("M"), _pd("N"),
)


def _eval_161a(d):
    a, m, n = d["A"], d["M"], d["N"]
    lhs = rank(mp(a) - weighted_mp(a, m, n))
    rhs = (rank(vstack(a, a @ n)) + rank(hstack(a, m @ a))
           - 2 * rank(a))
    return lhs, rhs


register(IdentityCase(
    id="16.1a", tier=GOLD, needs_mp=True,
    summary="r(A^+ - A^+_{M,N}) = r[A; AN] + r[A, MA] - 2r(A)",
    slots=("A", "M", "N"),
    generate=_gen_weighted, constraints=_WEIGHTED,
    evaluate=_eval_161a,
))

register(IdentityCase(
    id="16.2a", tier=GOLD, needs_mp=True,
    summary="r(A A^+_{M,N} - A A^+) = r[A, MA] - r(A)",
    slots=("A", "M", "N"),
    generate=_gen_weighted, constraints=_WEIGHTED,
    evaluate=lambda d: (
        rank(d["A"] @ weighted_mp(d["A"], d["M"], d["N"])
             - d["A"] @ mp(d["A"])),
        rank(hstack(d["A"], d["M"] @ d["A"])) - rank(d["A"])),
))

register(IdentityCase(
    id="16.2b", tier=GOLD, needs_mp=True,
    summary="r(A^+_{M,N} A - A^+ A) = r[A; AN] - r(A)",
    slots=("A", "M", "N"),
    generate=_gen_weighted, constraints=_WEIGHTED,
    evaluate=lambda d: (
        rank(weighted_mp(d["A"], d["M"], d["N"]) @ d["A"]
             - mp(d["A"]) @ d["A"]),
        rank(vstack(d["A"], d["A"] @ d["N"])) - rank(d["A"])),
))


def _gen_weighted_square(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, m, rng),
            "M": gen.pd_weight(fld, m, rng),
            "N": gen.pd_weight(fld, m, rng)}


_WEIGHTED_SQ = (("A is square", lambda d: d["A"].is_square()),) + _WEIGHTED


def _eval_163a(d):
    a, m, n = d["A"], d["M"], d["N"]
    x = weighted_mp(a, m, n)
    st = a.conj_transpose()
    lhs = rank(a @ x - x @ a)
    rhs = (rank(hstack(st, m @ a)) + rank(hstack(st, n @ a))
           - 2 * rank(a))
    return lhs, rhs


register(IdentityCase(
    id="16.3a", tier=GOLD, needs_mp=True,
    summary="r(A A^+_{M,N} - A^+_{M,N} A) = r[A*, MA] + r[A*, NA] - 2r(A)",
    slots=("A", "M", "N"),
    generate=_gen_weighted_square, constraints=_WEIGHTED_SQ,
    evaluate=_eval_163a,
))


def _eval_169a(d):
    a, m, n = d["A"], d["M"], d["N"]
    x = weighted_mp(a, m, n)
    ak = a @ a
    st = a.conj_transpose()
    lhs = rank(x @ ak - ak @ x)
    rhs = (rank(vstack(ak, st @ m)) + rank(hstack(ak, inverse(n) @ st))
           - 2 * rank(a))
    return lhs, rhs


register(IdentityCase(
    id="16.9a", tier=GOLD, needs_mp=True,
    summary="r(A^+_{M,N} A^2 - A^2 A^+_{M,N}) "
    "= r[A^2; A*M] + r[A^2, N^-1 A*] - 2r(A)",
    slots=("A", "M", "N"),
    generate=_gen_weighted_square, constraints=_WEIGHTED_SQ,
    evaluate=_eval_169a,
))


def _gen_two_pairs(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    return {"A": gen.mat(fld, m, n, rng),
            "M": gen.pd_weight(fld, m, rng),
            "N": gen.pd_weight(fld, n, rng),
            "S": gen.pd_weight(fld, m, rng),
            "T": gen.pd_weight(fld, n, rng)}


def _eval_1611a(d):
    a = d["A"]
    lhs = rank(weighted_mp(a, d["M"], d["N"])
               - weighted_mp(a, d["S"], d["T"]))
    rhs = (rank(vstack(a @ inverse(d["N"]), a @ inverse(d["T"])))
           + rank(hstack(d["M"] @ a, d["S"] @ a)) - 2 * rank(a))
    return lhs, rhs


register(IdentityCase(
    id="16.11a", tier=GOLD, needs_mp=True,
    summary="r(A^+_{M,N} - A^+_{S,T}) = r[AN^-1; AT^-1] + r[MA, SA] - 2r(A)",
    slots=("A", "M", "N", "S", "T"),
    generate=_gen_two_pairs,
    constraints=_WEIGHTED + (
        ("S matches the rows of A", lambda d: d["S"].rows == d["A"].rows),
        ("T matches the columns of A", lambda d: d["T"].rows == d["A"].cols),
        _pd("S"), _pd("T"),
    ),
    evaluate=_eval_1611a,
))


# --- Chapter 17: weighted reverse order law for a triple product ---


def _gen_triple_weighted(rng, bound, fld):
    if rng.below(2):
        # invertible factors make the reverse order law hold exactly
        m = gen.dim(rng, bound)
        n = k = l = m
        a = gen.invertible(fld, m, rng)
        b = gen.invertible(fld, m, rng)
        c = gen.invertible(fld, m, rng)
    else:
        m, n = gen.dim(rng, bound), gen.dim(rng, bound)
        k, l = gen.dim(rng, bound), gen.dim(rng, bound)
        a = gen.mat(fld, m, n, rng)
        b = gen.mat(fld, n, k, rng)
        c = gen.mat(fld, k, l, rng)
    return {"A": a, "B": b, "C": c,
            "M": gen.pd_weight(fld, a.rows, rng),
            "P": gen.pd_weight(fld, a.cols, rng),
            "Q": gen.pd_weight(fld, b.cols, rng),
            "N": gen.pd_weight(fld, c.cols, rng)}


def _eval_171c(d):
    a, b, c = d["A"], d["B"], d["C"]
    m, p, q, n = d["M"], d["P"], d["Q"], d["N"]
    f = a.field
    j = a @ b @ c
    law = ind(weighted_mp(j, m, n)
              == weighted_mp(c, q, n) @ weighted_mp(b, p, q)
              @ weighted_mp(a, m, p))
    js, bs = j.conj_transpose(), b.conj_transpose()
    big = block([
        [b @ inverse(q) @ bs @ p @ b, zz(f, a.cols, c.cols), b @ c],
        [zz(f, a.rows, b.cols), -(j @ inverse(n) @ js @ m @ j),
         j @ inverse(n) @ c.conj_transpose() @ q @ c],
        [a @ b, a @ inverse(p) @ a.conj_transpose() @ m @ j,
         zz(f, a.rows, c.cols)],
    ])
    return law, ind(rank(big) == rank(b) + rank(j))


register(IdentityCase(
    id="17.1c", tier=AUDIT, needs_mp=True,
    summary="(ABC)^+_{M,N} = C^+_{Q,N} B^+_{P,Q} A^+_{M,P} iff one "
    "bordered rank equality holds",
    slots=("A", "B", "C", "M", "P", "Q", "N"),
    generate=_gen_triple_weighted,
    constraints=(
        ("A B C is conformable",
         lambda d: d["A"].cols == d["B"].rows
         and d["B"].cols == d["C"].rows),
        _pd("M"), _pd("P"), _pd("Q"), _pd("N"),
        ("M matches the rows of A", lambda d: d["M"].rows == d["A"].rows),
        ("P matches the columns of A", lambda d: d["P"].rows == d["A"].cols),
        ("Q matches the columns of B", lambda d: d["Q"].rows == d["B"].cols),
        ("N matches the columns of C", lambda d: d["N"].rows == d["C"].cols),
    ),
    evaluate=_eval_171c,
))
