"""Rejection-free random generators for structurally constrained inputs."""

from ..inverses import inner_inverse
from ..matrices import Matrix, block_diag, inverse, rank


def dim(rng, bound, lo=1):
    return rng.randint(lo, bound)


def mat(fld, m, n, rng):
    return Matrix.random(fld, m, n, rng)


def invertible(fld, n, rng):
    """L D U with unit-triangular L, U and nonzero diagonal D."""
    f = fld
    lo = [[f.one if i == j else (rng.randint(0, 1) and f.random(rng) or f.zero)
           if i > j else f.zero for j in range(n)] for i in range(n)]
    up = [[f.one if i == j else (rng.randint(0, 1) and f.random(rng) or f.zero)
           if i < j else f.zero for j in range(n)] for i in range(n)]
    dg = [[f.random_nonzero(rng) if i == j else f.zero for j in range(n)]
          for i in range(n)]
    return (Matrix.from_rows(f, lo) @ Matrix.from_rows(f, dg)
            @ Matrix.from_rows(f, up))


def _conjugated_diag(fld, m, core, rng):
    s = invertible(fld, m, rng)
    pad = Matrix.zeros(fld, m - core.rows, m - core.rows)
    d = block_diag(fld, [core, pad]) if core.rows < m else core
    return s @ d @ inverse(s)


def idempotent(fld, m, rng, r=None):
    if r is None:
        r = rng.randint(0, m)
    return _conjugated_diag(fld, m, Matrix.identity(fld, r), rng)


def hermitian_idempotent(fld, m, rng, r=None):
    """U (U*U)^-1 U* for a full-column-rank U; field must be involution positive."""
    if r is None:
        r = rng.randint(0, m)
    if r == 0:
        return Matrix.zeros(fld, m, m)
    u = invertible(fld, m, rng).extract(range(m), range(r))
    return u @ inverse(u.conj_transpose() @ u) @ u.conj_transpose()


def involutory(fld, m, rng):
    """2P - I for an idempotent P; requires characteristic != 2."""
    p = idempotent(fld, m, rng)
    return p + p - Matrix.identity(fld, m)


def index_one(fld, m, rng, r=None):
    if r is None:
        r = rng.randint(0, m)
    return _conjugated_diag(fld, m, invertible(fld, r, rng), rng)


def singular(fld, m, rng):
    """A square matrix of rank < m (so its index is at least 1)."""
    r = rng.randint(0, m - 1)
    return mat(fld, m, r, rng) @ mat(fld, r, m, rng)


def nilpotent(fld, m, rng):
    f = fld
    strict = [[f.random(rng) if j > i else f.zero for j in range(m)]
              for i in range(m)]
    return _conjugated_diag(fld, m, Matrix.from_rows(f, strict), rng)


def mixed_index(fld, m, rng):
    """Square matrix whose index varies: random, rank-deficient, or
    a conjugated invertible-plus-nilpotent block."""
    style = rng.below(3)
    if style == 0:
        return mat(fld, m, m, rng)
    if style == 1 or m == 1:
        return singular(fld, m, rng)
    r = rng.randint(0, m - 1)
    core = invertible(fld, r, rng) if r else Matrix.zeros(fld, 0, 0)
    tail = m - r
    strict = Matrix.from_rows(fld, [
        [fld.random(rng) if j > i else fld.zero for j in range(tail)]
        for i in range(tail)])
    s = invertible(fld, m, rng)
    return s @ block_diag(fld, [core, strict]) @ inverse(s)


def pd_weight(fld, m, rng):
    """R* R + I, Hermitian positive definite over involution-positive fields."""
    r = mat(fld, m, m, rng)
    return r.conj_transpose() @ r + Matrix.identity(fld, m)


def inner_member(a, rng):
    fam = inner_inverse(a)
    return fam.member(mat(a.field, a.cols, a.rows, rng),
                      mat(a.field, a.cols, a.rows, rng))


def outer_of(a, rng, t=None):
    """V (WAV)^(1,2) W, an outer inverse of A for any V, W."""
    if t is None:
        t = rng.randint(0, min(a.rows, a.cols))
    v = mat(a.field, a.cols, t, rng)
    w = mat(a.field, t, a.rows, rng)
    m = w @ a @ v
    y = inner_inverse(m).base
    return v @ (y @ m @ y) @ w


def distinct_scalars(fld, k, rng):
    """k pairwise distinct field elements (field must have at least k)."""
    p = getattr(fld, "p", 0)
    if p:
        if p < k:
            raise ValueError("field too small for %d distinct scalars" % k)
        pool = list(range(p))
        picks = []
        for _ in range(k):
            picks.append(pool.pop(rng.randint(0, len(pool) - 1)))
        return [fld.from_int(v) for v in picks]
    out = fld.from_int(rng.randint(-3, 3))
    found = [out]
    for _ in range(k - 1):
        out = fld.add(out, fld.from_int(rng.randint(1, 3)))
        found.append(out)
    return found
