"""Registry of machine-checkable rank identities with a deterministic fuzzer."""

import json
from dataclasses import dataclass, field

from ..errors import (
    FieldCapabilityError,
    InternalInvariantError,
    PreconditionError,
    UsageError,
)
from ..fields import Field
from ..inverses import drazin, index, moore_penrose
from ..io import format_matrix, parse_matrix
from ..matrices import Matrix, hstack, rank, vstack
from ..rng import trial_rng

GOLD = "gold"
AUDIT = "audit"


@dataclass(frozen=True)
class IdentityCase:
    """One verifiable identity: named inputs, constraints, and two sides."""

    id: str
    tier: str
    summary: str
    slots: tuple
    generate: object
    evaluate: object
    constraints: tuple = ()
    needs_mp: bool = False
    char_not_2: bool = False
    gaussian_only: bool = False

    @property
    def chapter(self):
        return int(self.id.split(".", 1)[0])

    def field_ok(self, fld):
        if self.needs_mp and not fld.involution_positive:
            return False
        if self.char_not_2 and getattr(fld, "p", 0) == 2:
            return False
        if self.gaussian_only and fld.id != "gaussian":
            return False
        return True


@dataclass
class Failure:
    trial: int
    inputs: dict
    lhs: int
    rhs: int

    def to_json(self):
        return {
            "trial": self.trial,
            "inputs": dict(self.inputs),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass
class FuzzReport:
    id: str
    tier: str
    field: str
    trials: int
    passes: int
    seed: int
    dim_bound: int
    failures: list = field(default_factory=list)

    def to_json(self):
        return {
            "id": self.id,
            "tier": self.tier,
            "field": self.field,
            "trials": self.trials,
            "passes": self.passes,
            "failures": [f.to_json() for f in self.failures],
            "seed": self.seed,
            "dim_bound": self.dim_bound,
        }

    def to_json_text(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


_REGISTRY = {}


def _id_key(case_id):
    # natural ordering: numeric runs compare as integers, text runs as text
    parts = []
    num = ""
    for ch in case_id:
        if ch.isdigit():
            num += ch
        else:
            if num:
                parts.append((0, int(num), ""))
                num = ""
            parts.append((1, 0, ch))
    if num:
        parts.append((0, int(num), ""))
    return tuple(parts)


def register(case):
    if case.id in _REGISTRY:
        raise InternalInvariantError("duplicate catalog id %r" % case.id)
    if case.tier not in (GOLD, AUDIT):
        raise InternalInvariantError("bad tier %r for %r" % (case.tier, case.id))
    _REGISTRY[case.id] = case
    return case


_ALLOWED_FILTERS = {"chapter", "tier", "field"}


def catalog(**filters):
    """All registered cases in stable id order, optionally filtered."""
    unknown = set(filters) - _ALLOWED_FILTERS
    if unknown:
        raise UsageError("unknown catalog filter key(s): %s" % ", ".join(sorted(unknown)))
    cases = sorted(_REGISTRY.values(), key=lambda c: _id_key(c.id))
    if "chapter" in filters:
        want = int(filters["chapter"])
        cases = [c for c in cases if c.chapter == want]
    if "tier" in filters:
        tier = filters["tier"]
        if tier not in (GOLD, AUDIT):
            raise UsageError("unknown tier %r (expected gold or audit)" % tier)
        cases = [c for c in cases if c.tier == tier]
    if "field" in filters:
        fld = filters["field"]
        if not isinstance(fld, Field):
            raise UsageError("field filter expects a Field instance")
        cases = [c for c in cases if c.field_ok(fld)]
    return cases


def get_case(case_id):
    try:
        return _REGISTRY[case_id]
    except KeyError:
        raise UsageError("unknown catalog id %r" % case_id) from None


@dataclass(frozen=True)
class CaseResult:
    id: str
    lhs: int
    rhs: int

    @property
    def ok(self):
        return self.lhs == self.rhs


def check_case(case_id, inputs):
    """Evaluate both sides of one identity on explicitly supplied inputs."""
    case = get_case(case_id)
    missing = [s for s in case.slots if s not in inputs]
    extra = [s for s in inputs if s not in case.slots]
    if missing or extra:
        raise UsageError(
            "case %s expects inputs %s" % (case_id, ", ".join(case.slots)))
    for name, pred in case.constraints:
        if not pred(inputs):
            raise PreconditionError("case %s requires: %s" % (case_id, name))
    lhs, rhs = case.evaluate(inputs)
    return CaseResult(case_id, int(lhs), int(rhs))


def fuzz(case_id, trials, seed, dim_bound, fld):
    """Run deterministic random trials of one identity over a field."""
    case = get_case(case_id)
    if trials < 1:
        raise UsageError("trials must be positive")
    if dim_bound < 1:
        raise UsageError("dim-bound must be positive")
    if not case.field_ok(fld):
        raise FieldCapabilityError(
            "case %s is not available over field %s" % (case_id, fld.id))
    report = FuzzReport(
        id=case_id, tier=case.tier, field=fld.id, trials=trials,
        passes=0, seed=seed, dim_bound=dim_bound)
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        inputs = case.generate(rng, dim_bound, fld)
        lhs, rhs = case.evaluate(inputs)
        if lhs == rhs:
            report.passes += 1
        else:
            report.failures.append(Failure(
                trial=trial,
                inputs={k: format_matrix(v) for k, v in inputs.items()},
                lhs=int(lhs), rhs=int(rhs)))
    return report


def replay_failure(case_id, failure):
    """Re-check a recorded fuzz failure from its serialized inputs."""
    inputs = {k: parse_matrix(text) for k, text in failure.inputs.items()}
    return check_case(case_id, inputs)


def rank_subtract_le(b, a):
    """Rank-subtractivity partial order: r(A - B) == r(A) - r(B)."""
    if b.shape != a.shape:
        raise UsageError("rank-subtractivity needs equal shapes")
    return rank(a - b) == rank(a) - rank(b)


@dataclass(frozen=True)
class Classification:
    predicates: frozenset
    restricted: bool

    def __contains__(self, name):
        return name in self.predicates


def _check_pair(name, by_rank, by_equation):
    if by_rank != by_equation:
        raise InternalInvariantError(
            "predicate %r: rank characterization %s but defining equation %s"
            % (name, by_rank, by_equation))
    return by_rank


def classify(a):
    """Structural predicates of a square matrix.

    Each verdict is computed from a rank characterization and cross-checked
    against the defining equation.  Over fields without a positive involution
    the adjoint-based predicates are omitted and ``restricted`` is set.
    """
    if not a.is_square():
        raise UsageError("classify needs a square matrix")
    fld = a.field
    m = a.rows
    eye = Matrix.identity(fld, m)
    found = set()

    if _check_pair("idempotent", rank(a) + rank(eye - a) == m, a @ a == a):
        found.add("idempotent")

    a2 = a @ a
    trip_rank = rank(a + a2) + rank(a - a2) == rank(a)
    if getattr(fld, "p", 0) == 2:
        # the sum/difference split degenerates in characteristic 2
        trip_rank = rank(a - a @ a2) == 0
    if _check_pair("tripotent", trip_rank, a @ a2 == a):
        found.add("tripotent")

    inv_rank = rank(eye + a) + rank(eye - a) == m
    if getattr(fld, "p", 0) == 2:
        inv_rank = rank(a2 - eye) == 0
    if _check_pair("involutory", inv_rank, a2 == eye):
        found.add("involutory")

    if _check_pair("nilpotent", rank(a ** m) == 0, (a ** m).is_zero()):
        found.add("nilpotent")

    k = index(a)
    ad = drazin(a)
    quasi_rank = rank(ad - ad @ ad) == 0
    if _check_pair("quasi-idempotent", quasi_rank, a ** (k + 1) == a ** k):
        found.add("quasi-idempotent")

    restricted = not fld.involution_positive
    if not restricted:
        st = a.conj_transpose()
        mp = moore_penrose(a)
        if _check_pair("EP", rank(hstack(a, st)) == rank(a), a @ mp == mp @ a):
            found.add("EP")
        if _check_pair(
                "bi-EP",
                rank(hstack(a, st)) + rank(a2) == 2 * rank(a),
                (a @ mp) @ (mp @ a) == (mp @ a) @ (a @ mp)):
            found.add("bi-EP")
        if _check_pair(
                "star-dagger",
                rank(a @ st @ a2 - a2 @ st @ a) == 0,
                mp @ st == st @ mp):
            found.add("star-dagger")
        for kk in (2, 3):
            ak = a ** kk
            by_rank = (rank(vstack(ak, st)) + rank(hstack(ak, st))
                       == 2 * rank(a))
            if _check_pair("power-EP(%d)" % kk, by_rank, ak @ mp == mp @ ak):
                found.add("power-EP(%d)" % kk)
        if fld.id == "gaussian":
            at = a.transpose()
            if _check_pair(
                    "conjugate-EP",
                    rank(hstack(a, at)) == rank(a),
                    a @ mp == (mp @ a).conj()):
                found.add("conjugate-EP")

    return Classification(frozenset(found), restricted)
