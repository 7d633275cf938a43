"""Shared shorthands for catalog entry definitions."""

from ..inverses import inner_inverse
from ..matrices import Matrix, rank


def enc(*vals):
    """Pack several small nonnegative ints into one for multi-part checks."""
    out = 0
    for v in vals:
        if not 0 <= v < 1024:
            raise ValueError("component out of range")
        out = out * 1024 + v
    return out


def ib(a):
    """Canonical inner inverse (the family's base point)."""
    return inner_inverse(a).base


def le(a):
    """Left annihilator projector I - A A^- for the canonical inner inverse."""
    return Matrix.identity(a.field, a.rows) - a @ ib(a)


def rf(a):
    """Right annihilator projector I - A^- A for the canonical inner inverse."""
    return Matrix.identity(a.field, a.cols) - ib(a) @ a


def eye(fld, n):
    return Matrix.identity(fld, n)


def zz(fld, m, n):
    return Matrix.zeros(fld, m, n)


def ind(flag):
    return 1 if flag else 0
