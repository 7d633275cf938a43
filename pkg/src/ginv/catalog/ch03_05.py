"""Rank laws for idempotent, involutory, and outer-inverse families."""

from ..matrices import block, hstack, rank, vstack
from . import gen
from ._util import enc, eye, ind, zz
from .core import GOLD, IdentityCase, register


def _gen_pq(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"P": gen.idempotent(fld, m, rng), "Q": gen.idempotent(fld, m, rng)}


_PQ_CONSTRAINTS = (
    ("P is idempotent", lambda d: d["P"] @ d["P"] == d["P"]),
    ("Q is idempotent", lambda d: d["Q"] @ d["Q"] == d["Q"]),
    ("P and Q have the same square shape",
     lambda d: d["P"].shape == d["Q"].shape and d["P"].is_square()),
)


def _pq_case(case_id, summary, evaluate, **kw):
    register(IdentityCase(
        id=case_id, tier=GOLD, summary=summary, slots=("P", "Q"),
        generate=_gen_pq, constraints=_PQ_CONSTRAINTS, evaluate=evaluate,
        **kw))


_pq_case(
    "3.1", "difference of idempotents: "
    "r(P-Q) = r[P;Q] + r[P,Q] - r(P) - r(Q)",
    lambda d: (
        rank(d["P"] - d["Q"]),
        rank(vstack(d["P"], d["Q"])) + rank(hstack(d["P"], d["Q"]))
        - rank(d["P"]) - rank(d["Q"])))

_pq_case(
    "3.2", "r(P-Q) = r(P - PQ) + r(PQ - Q) for idempotents",
    lambda d: (
        rank(d["P"] - d["Q"]),
        rank(d["P"] - d["P"] @ d["Q"]) + rank(d["P"] @ d["Q"] - d["Q"])))

_pq_case(
    "3.3", "r(P-Q) = r(P - QP) + r(QP - Q) for idempotents",
    lambda d: (
        rank(d["P"] - d["Q"]),
        rank(d["P"] - d["Q"] @ d["P"]) + rank(d["Q"] @ d["P"] - d["Q"])))

_pq_case(
    "3.8", "r(I-P-Q) = r(PQ) + r(QP) - r(P) - r(Q) + m for idempotents",
    lambda d: (
        rank(eye(d["P"].field, d["P"].rows) - d["P"] - d["Q"]),
        rank(d["P"] @ d["Q"]) + rank(d["Q"] @ d["P"])
        - rank(d["P"]) - rank(d["Q"]) + d["P"].rows))

_pq_case(
    "3.12", "sum of idempotents: r(P+Q) = r[[P,Q],[Q,0]] - r(Q)",
    lambda d: (
        rank(d["P"] + d["Q"]),
        rank(block([[d["P"], d["Q"]],
                    [d["Q"], zz(d["P"].field, d["Q"].rows, d["Q"].cols)]]))
        - rank(d["Q"])), char_not_2=True)

_pq_case(
    "3.19", "r(I+P-Q) = r(QPQ) - r(Q) + m for idempotents",
    lambda d: (
        rank(eye(d["P"].field, d["P"].rows) + d["P"] - d["Q"]),
        rank(d["Q"] @ d["P"] @ d["Q"]) - rank(d["Q"]) + d["P"].rows),
    char_not_2=True)

_pq_case(
    "3.20", "r(2I-P-Q) = r(Q - QPQ) - r(Q) + m for idempotents",
    lambda d: (
        rank(eye(d["P"].field, d["P"].rows).scale(d["P"].field.from_int(2))
             - d["P"] - d["Q"]),
        rank(d["Q"] - d["Q"] @ d["P"] @ d["Q"]) - rank(d["Q"]) + d["P"].rows),
    char_not_2=True)

_pq_case(
    "3.21", "r(2I-P-Q) = r(P - PQP) - r(P) + m for idempotents",
    lambda d: (
        rank(eye(d["P"].field, d["P"].rows).scale(d["P"].field.from_int(2))
             - d["P"] - d["Q"]),
        rank(d["P"] - d["P"] @ d["Q"] @ d["P"]) - rank(d["P"]) + d["P"].rows),
    char_not_2=True)

_pq_case(
    "3.24", "commutator of idempotents: r(PQ-QP) = r(P-Q) + r(I-P-Q) - m",
    lambda d: (
        rank(d["P"] @ d["Q"] - d["Q"] @ d["P"]),
        rank(d["P"] - d["Q"])
        + rank(eye(d["P"].field, d["P"].rows) - d["P"] - d["Q"])
        - d["P"].rows))

_pq_case(
    "3.31", "anticommutator of idempotents: "
    "r(PQ+QP) = r(P+Q) + r(I-P-Q) - m",
    lambda d: (
        rank(d["P"] @ d["Q"] + d["Q"] @ d["P"]),
        rank(d["P"] + d["Q"])
        + rank(eye(d["P"].field, d["P"].rows) - d["P"] - d["Q"])
        - d["P"].rows))

_pq_case(
    "3.35", "r(P+Q) + r(PQ-QP) = r(P-Q) + r(PQ+QP) for idempotents",
    lambda d: (
        rank(d["P"] + d["Q"]) + rank(d["P"] @ d["Q"] - d["Q"] @ d["P"]),
        rank(d["P"] - d["Q"]) + rank(d["P"] @ d["Q"] + d["Q"] @ d["P"])))

_pq_case(
    "3.38", "r(I-PQ) = r(2I-P-Q) for idempotents",
    lambda d: (
        rank(eye(d["P"].field, d["P"].rows) - d["P"] @ d["Q"]),
        rank(eye(d["P"].field, d["P"].rows).scale(d["P"].field.from_int(2))
             - d["P"] - d["Q"])), char_not_2=True)

_pq_case(
    "3.43", "r(PQ - (PQ)^2) = r(I-PQ) + r(PQ) - m for idempotents",
    lambda d: (
        rank(d["P"] @ d["Q"] - (d["P"] @ d["Q"]) ** 2),
        rank(eye(d["P"].field, d["P"].rows) - d["P"] @ d["Q"])
        + rank(d["P"] @ d["Q"]) - d["P"].rows))


# --- Chapter 4: idempotents mixed with general matrices; involutory pairs ---


def _gen_pqa(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    return {
        "A": gen.mat(fld, m, n, rng),
        "P": gen.idempotent(fld, m, rng),
        "Q": gen.idempotent(fld, n, rng),
    }


_PQA_CONSTRAINTS = (
    ("P is idempotent", lambda d: d["P"] @ d["P"] == d["P"]),
    ("Q is idempotent", lambda d: d["Q"] @ d["Q"] == d["Q"]),
    ("P acts on the left of A and Q on the right",
     lambda d: d["P"].cols == d["A"].rows and d["A"].cols == d["Q"].rows),
)


register(IdentityCase(
    id="4.1", tier=GOLD,
    summary="r(PA - AQ) = r[PA;Q] + r[AQ,P] - r(P) - r(Q)",
    slots=("A", "P", "Q"),
    generate=_gen_pqa, constraints=_PQA_CONSTRAINTS,
    evaluate=lambda d: (
        rank(d["P"] @ d["A"] - d["A"] @ d["Q"]),
        rank(vstack(d["P"] @ d["A"], d["Q"]))
        + rank(hstack(d["A"] @ d["Q"], d["P"]))
        - rank(d["P"]) - rank(d["Q"])),
))

register(IdentityCase(
    id="4.8", tier=GOLD,
    summary="r(PA + AQ) = r[[PA,AQ],[Q,0]] - r(Q)",
    slots=("A", "P", "Q"),
    generate=_gen_pqa, constraints=_PQA_CONSTRAINTS,
    evaluate=lambda d: (
        rank(d["P"] @ d["A"] + d["A"] @ d["Q"]),
        rank(block([[d["P"] @ d["A"], d["A"] @ d["Q"]],
                    [d["Q"], zz(d["A"].field, d["Q"].rows, d["Q"].rows)]]))
        - rank(d["Q"])),
    char_not_2=True,
))


def _eval_411(d):
    a, p, q = d["A"], d["P"], d["Q"]
    f = a.field
    lhs = rank(a - p @ a @ q)
    rhs = rank(block([
        [a, a @ q, p],
        [p @ a, zz(f, p.rows, q.rows), zz(f, p.rows, p.cols)],
        [q, zz(f, q.rows, q.rows), zz(f, q.rows, p.cols)],
    ])) - rank(p) - rank(q)
    eye_p = eye(f, p.rows)
    eye_q = eye(f, q.rows)
    rhs2 = rank(block([
        [(eye_p - p) @ a @ (eye_q - q), (eye_p - p) @ a @ q],
        [p @ a @ (eye_q - q), zz(f, p.rows, q.rows)],
    ]))
    return enc(lhs, lhs), enc(rhs, rhs2)


register(IdentityCase(
    id="4.11", tier=GOLD,
    summary="two expressions for r(A - PAQ) with idempotent P, Q",
    slots=("A", "P", "Q"),
    generate=_gen_pqa, constraints=_PQA_CONSTRAINTS,
    evaluate=_eval_411,
))


def _gen_pq_square(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"P": gen.idempotent(fld, m, rng), "Q": gen.idempotent(fld, m, rng)}


register(IdentityCase(
    id="4.12", tier=GOLD,
    summary="cube of a difference of idempotents: "
    "r((P-Q)^3) = r[P-PQP;Q] + r[Q-QPQ,P] - r(P) - r(Q)",
    slots=("P", "Q"),
    generate=_gen_pq_square, constraints=_PQ_CONSTRAINTS,
    evaluate=lambda d: (
        rank((d["P"] - d["Q"]) ** 3),
        rank(vstack(d["P"] - d["P"] @ d["Q"] @ d["P"], d["Q"]))
        + rank(hstack(d["Q"] - d["Q"] @ d["P"] @ d["Q"], d["P"]))
        - rank(d["P"]) - rank(d["Q"])),
))

register(IdentityCase(
    id="4.18", tier=GOLD,
    summary="r((P-Q)^3 - (P-Q)) = r[PQP;Q] + r[QPQ,P] - r(P) - r(Q)",
    slots=("P", "Q"),
    generate=_gen_pq_square, constraints=_PQ_CONSTRAINTS,
    evaluate=lambda d: (
        rank((d["P"] - d["Q"]) ** 3 - (d["P"] - d["Q"])),
        rank(vstack(d["P"] @ d["Q"] @ d["P"], d["Q"]))
        + rank(hstack(d["Q"] @ d["P"] @ d["Q"], d["P"]))
        - rank(d["P"]) - rank(d["Q"])),
))


def _gen_invol(rng, bound, fld):
    m = gen.dim(rng, bound)
    return {"A": gen.involutory(fld, m, rng), "B": gen.involutory(fld, m, rng)}


_INVOL_CONSTRAINTS = (
    ("A is involutory",
     lambda d: d["A"] @ d["A"] == eye(d["A"].field, d["A"].rows)),
    ("B is involutory",
     lambda d: d["B"] @ d["B"] == eye(d["B"].field, d["B"].rows)),
    ("A and B have the same square shape",
     lambda d: d["A"].shape == d["B"].shape and d["A"].is_square()),
)


def _invol_case(case_id, summary, evaluate):
    register(IdentityCase(
        id=case_id, tier=GOLD, summary=summary, slots=("A", "B"),
        generate=_gen_invol, constraints=_INVOL_CONSTRAINTS,
        evaluate=evaluate, char_not_2=True))


def _ipm(d, name, sign):
    a = d[name]
    i = eye(a.field, a.rows)
    return i + a if sign > 0 else i - a


_invol_case(
    "4.26", "sum of involutory matrices: "
    "r(A+B) = r[I+A;I-B] + r[I+A,I-B] - r(I+A) - r(I-B)",
    lambda d: (
        rank(d["A"] + d["B"]),
        rank(vstack(_ipm(d, "A", 1), _ipm(d, "B", -1)))
        + rank(hstack(_ipm(d, "A", 1), _ipm(d, "B", -1)))
        - rank(_ipm(d, "A", 1)) - rank(_ipm(d, "B", -1))))

_invol_case(
    "4.27", "r(A+B) = r((I+A)(I+B)) + r((I-A)(I-B)) for involutory A, B",
    lambda d: (
        rank(d["A"] + d["B"]),
        rank(_ipm(d, "A", 1) @ _ipm(d, "B", 1))
        + rank(_ipm(d, "A", -1) @ _ipm(d, "B", -1))))

_invol_case(
    "4.28", "difference of involutory matrices: "
    "r(A-B) = r[I+A;I+B] + r[I+A,I+B] - r(I+A) - r(I+B)",
    lambda d: (
        rank(d["A"] - d["B"]),
        rank(vstack(_ipm(d, "A", 1), _ipm(d, "B", 1)))
        + rank(hstack(_ipm(d, "A", 1), _ipm(d, "B", 1)))
        - rank(_ipm(d, "A", 1)) - rank(_ipm(d, "B", 1))))

_invol_case(
    "4.29", "r(A-B) = r((I+A)(I-B)) + r((I-A)(I+B)) for involutory A, B",
    lambda d: (
        rank(d["A"] - d["B"]),
        rank(_ipm(d, "A", 1) @ _ipm(d, "B", -1))
        + rank(_ipm(d, "A", -1) @ _ipm(d, "B", 1))))

_invol_case(
    "4.35", "commutator of involutory matrices: "
    "r(AB-BA) = r(A+B) + r(A-B) - m",
    lambda d: (
        rank(d["A"] @ d["B"] - d["B"] @ d["A"]),
        rank(d["A"] + d["B"]) + rank(d["A"] - d["B"]) - d["A"].rows))


# --- Chapter 5: pairs of outer inverses of one matrix ---


def _gen_outer_pair(rng, bound, fld):
    m, n = gen.dim(rng, bound), gen.dim(rng, bound)
    a = gen.mat(fld, m, n, rng)
    return {"A": a, "X1": gen.outer_of(a, rng), "X2": gen.outer_of(a, rng)}


_OUTER_CONSTRAINTS = (
    ("X1 is an outer inverse of A",
     lambda d: d["X1"] @ d["A"] @ d["X1"] == d["X1"]),
    ("X2 is an outer inverse of A",
     lambda d: d["X2"] @ d["A"] @ d["X2"] == d["X2"]),
)


def _outer_case(case_id, summary, evaluate, tier=GOLD):
    register(IdentityCase(
        id=case_id, tier=tier, summary=summary, slots=("A", "X1", "X2"),
        generate=_gen_outer_pair, constraints=_OUTER_CONSTRAINTS,
        evaluate=evaluate))


_outer_case(
    "5.1", "difference of outer inverses: "
    "r(X1-X2) = r[X1;X2] + r[X1,X2] - r(X1) - r(X2)",
    lambda d: (
        rank(d["X1"] - d["X2"]),
        rank(vstack(d["X1"], d["X2"])) + rank(hstack(d["X1"], d["X2"]))
        - rank(d["X1"]) - rank(d["X2"])))

_outer_case(
    "5.2", "r(X1-X2) = r(X1 - X1 A X2) + r(X1 A X2 - X2) for outer inverses",
    lambda d: (
        rank(d["X1"] - d["X2"]),
        rank(d["X1"] - d["X1"] @ d["A"] @ d["X2"])
        + rank(d["X1"] @ d["A"] @ d["X2"] - d["X2"])))

_outer_case(
    "5.3", "r(X1-X2) = r(X1 - X2 A X1) + r(X2 A X1 - X2) for outer inverses",
    lambda d: (
        rank(d["X1"] - d["X2"]),
        rank(d["X1"] - d["X2"] @ d["A"] @ d["X1"])
        + rank(d["X2"] @ d["A"] @ d["X1"] - d["X2"])))

_outer_case(
    "5.11a", "A X1 A = A X2 A holds exactly when X1 and X2 absorb "
    "through each other",
    lambda d: (
        ind(d["A"] @ d["X1"] @ d["A"] == d["A"] @ d["X2"] @ d["A"]),
        ind(d["X1"] @ d["A"] @ d["X2"] @ d["A"] @ d["X1"] == d["X1"]
            and d["X2"] @ d["A"] @ d["X1"] @ d["A"] @ d["X2"] == d["X2"])))

_outer_case(
    "5.11b", "sum of outer inverses: r(X1+X2) = r[[X1,X2],[X2,0]] - r(X2)",
    lambda d: (
        rank(d["X1"] + d["X2"]),
        rank(block([[d["X1"], d["X2"]],
                    [d["X2"], zz(d["A"].field, d["X2"].rows, d["X2"].cols)]]))
        - rank(d["X2"])))

_outer_case(
    "5.17", "defect of the difference from being an outer inverse: "
    "r((X1-X2)A(X1-X2) - (X1-X2)) = r(I - AX1 + AX2) + r(X1-X2) - m",
    lambda d: (
        rank((d["X1"] - d["X2"]) @ d["A"] @ (d["X1"] - d["X2"])
             - (d["X1"] - d["X2"])),
        rank(eye(d["A"].field, d["A"].rows)
             - d["A"] @ d["X1"] + d["A"] @ d["X2"])
        + rank(d["X1"] - d["X2"]) - d["A"].rows))

_outer_case(
    "5.21", "defect of the sum from being an outer inverse: "
    "r((X1+X2)A(X1+X2) - (X1+X2)) = r(I - AX1 - AX2) + r(X1+X2) - m",
    lambda d: (
        rank((d["X1"] + d["X2"]) @ d["A"] @ (d["X1"] + d["X2"])
             - (d["X1"] + d["X2"])),
        rank(eye(d["A"].field, d["A"].rows)
             - d["A"] @ d["X1"] - d["A"] @ d["X2"])
        + rank(d["X1"] + d["X2"]) - d["A"].rows))
