"""Exact scalar fields with an involution.

Three ground fields are supported:

* rationals (values are ``gmpy2.mpq``),
* Gaussian rationals (values are ``(re, im)`` pairs of ``mpq``), with
  complex conjugation as the involution,
* prime fields GF(p) for p <= 2^31 - 1 (values are ints in [0, p)),
  with the identity involution.

A field object owns all arithmetic on its raw values; matrices store
raw values plus a field reference.  All values are immutable and in
canonical form, so equality is structural.
"""

from gmpy2 import mpq

from .errors import (
    DivisionByZeroError,
    FieldCapabilityError,
    MalformedScalarError,
)

MAX_PRIME = (1 << 31) - 1


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3,215,031,751."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Abstract scalar field; concrete fields implement raw-value ops."""

    id: str
    involution_positive: bool  # sum of x*conj(x) vanishes only at 0
    enumerable: bool  # all elements can be listed

    def __repr__(self):
        return f"<field {self.id}>"

    # -- arithmetic on raw values -------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def conj(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        raise NotImplementedError

    # -- text form ------------------------------------------------------
    def parse(self, token: str):
        raise NotImplementedError

    def render(self, a) -> str:
        raise NotImplementedError

    # -- sampling ---------------------------------------------------------
    def random(self, rng):
        """A small random element, biased toward simple values."""
        raise NotImplementedError

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if not self.is_zero(a):
                return a

    def elements(self):
        raise FieldCapabilityError(f"{self.id} is not enumerable")

    def require_involution_positive(self, what: str):
        if not self.involution_positive:
            raise FieldCapabilityError(
                f"{what} requires an involution-positive field, not {self.id}"
            )


def _render_rational(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_rational(token: str):
    try:
        if "/" in token:
            num, den = token.split("/")
            den_i = int(den)
            if den_i == 0:
                raise MalformedScalarError(f"zero denominator in {token!r}")
            return mpq(int(num), den_i)
        return mpq(int(token))
    except ValueError as exc:
        raise MalformedScalarError(f"bad rational literal {token!r}") from exc


class RationalField(Field):
    id = "rational"
    involution_positive = True
    enumerable = False
    zero = mpq(0)
    one = mpq(1)

    def make(self, num, den=1):
        if den == 0:
            raise MalformedScalarError("zero denominator")
        return mpq(num, den)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZeroError("1/0 over the rationals")
        return 1 / a

    def conj(self, a):
        return a

    def from_int(self, n):
        return mpq(n)

    def parse(self, token):
        return _parse_rational(token)

    def render(self, a):
        return _render_rational(a)

    def random(self, rng):
        num = rng.randint(-3, 3)
        # Occasional non-integer keeps denominators exercised.
        den = 2 if rng.below(8) == 0 else 1
        return mpq(num, den)


class GaussianRationalField(Field):
    """Rationals adjoined i; values are (re, im) pairs of mpq."""

    id = "gaussian"
    involution_positive = True
    enumerable = False
    zero = (mpq(0), mpq(0))
    one = (mpq(1), mpq(0))
    i = (mpq(0), mpq(1))

    def make(self, re, im=0):
        return (mpq(re), mpq(im))

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def mul(self, a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def neg(self, a):
        return (-a[0], -a[1])

    def inv(self, a):
        n = a[0] * a[0] + a[1] * a[1]
        if n == 0:
            raise DivisionByZeroError("1/0 over the Gaussian rationals")
        return (a[0] / n, -a[1] / n)

    def conj(self, a):
        return (a[0], -a[1])

    def from_int(self, n):
        return (mpq(n), mpq(0))

    def parse(self, token):
        if not (token.startswith("(") and token.endswith(")")):
            raise MalformedScalarError(f"bad gaussian literal {token!r}")
        body = token[1:-1]
        parts = body.split(",")
        if len(parts) != 2:
            raise MalformedScalarError(f"bad gaussian literal {token!r}")
        return (_parse_rational(parts[0]), _parse_rational(parts[1]))

    def render(self, a):
        return f"({_render_rational(a[0])},{_render_rational(a[1])})"

    def random(self, rng):
        re = rng.randint(-2, 2)
        im = rng.randint(-2, 2)
        return (mpq(re), mpq(im))


class PrimeField(Field):
    involution_positive = False
    enumerable = True

    def __init__(self, p: int):
        if not (2 <= p <= MAX_PRIME) or not _is_prime(p):
            raise MalformedScalarError(f"modulus {p} is not a prime <= 2^31-1")
        self.p = p
        self.id = f"gf({p})"
        self.zero = 0
        self.one = 1 % p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))

    def make(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZeroError(f"1/0 over GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def conj(self, a):
        return a

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def parse(self, token):
        try:
            return int(token) % self.p
        except ValueError as exc:
            raise MalformedScalarError(f"bad GF({self.p}) literal {token!r}") from exc

    def render(self, a):
        return str(a)

    def random(self, rng):
        return rng.below(self.p)

    def elements(self):
        return range(self.p)


QQ = RationalField()
QI = GaussianRationalField()
GF2 = PrimeField(2)
GF3 = PrimeField(3)
GF5 = PrimeField(5)


def field_by_name(name: str, p: int | None = None) -> Field:
    """Resolve a field from its CLI/text-format name."""
    if name == "rational":
        return QQ
    if name == "gaussian":
        return QI
    if name == "gf":
        if p is None:
            raise MalformedScalarError("gf field needs a modulus")
        return PrimeField(p)
    raise MalformedScalarError(f"unknown field {name!r}")
