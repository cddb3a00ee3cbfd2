"""Exact coefficient domains.

Three interchangeable scalar types are used throughout:

  * ``fractions.Fraction``  -- arbitrary-precision rationals,
  * ``PrimeScalar``         -- residues mod a fixed 61-bit prime,
  * ``Jet``                 -- order-2 jets a + b*h with h^2 = 0.

All three support +, -, *, /, ** with integer exponents, exact equality
and truthiness (falsy iff zero), so series and operator code never needs
to know which domain it is running in.  Integer operands are coerced.

The prime is fixed (not sampled) so that prime-field runs are
reproducible; identity checks mod p are probabilistic verification in
the usual polynomial-identity-testing sense.
"""

from __future__ import annotations

from fractions import Fraction

# Mersenne prime 2^61 - 1; comfortably above 2^60 so degree-bounded
# identity tests have negligible collision probability.
PRIME = 2305843009213693951


class PrimeScalar:
    """Element of GF(PRIME)."""

    __slots__ = ("r",)

    def __init__(self, r):
        self.r = r % PRIME

    def __add__(self, other):
        other = _as_prime(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeScalar(self.r + other.r)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_prime(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeScalar(self.r - other.r)

    def __rsub__(self, other):
        other = _as_prime(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeScalar(other.r - self.r)

    def __mul__(self, other):
        other = _as_prime(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeScalar(self.r * other.r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_prime(other)
        if other is NotImplemented:
            return NotImplemented
        if other.r == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return PrimeScalar(self.r * pow(other.r, PRIME - 2, PRIME))

    def __rtruediv__(self, other):
        other = _as_prime(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, e):
        if e >= 0:
            return PrimeScalar(pow(self.r, e, PRIME))
        if self.r == 0:
            raise ZeroDivisionError("negative power of zero in GF(p)")
        return PrimeScalar(pow(pow(self.r, PRIME - 2, PRIME), -e, PRIME))

    def __neg__(self):
        return PrimeScalar(-self.r)

    def __eq__(self, other):
        other = _as_prime(other)
        if other is NotImplemented:
            return NotImplemented
        return self.r == other.r

    def __hash__(self):
        return hash(("gfp", self.r))

    def __bool__(self):
        return self.r != 0

    def __repr__(self):
        return "PrimeScalar(%d)" % self.r


def _as_prime(x):
    if isinstance(x, PrimeScalar):
        return x
    if isinstance(x, int):
        return PrimeScalar(x)
    return NotImplemented


class Jet:
    """Order-2 jet a + b*h in the deformation parameter h, with h^2 = 0.

    Components are Fractions.  (a+bh)(c+dh) = ac + (ad+bc)h and
    (a+bh)^-1 = a^-1 - a^-2 b h, so a must be nonzero to invert.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, other):
        other = _as_jet(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_jet(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _as_jet(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_jet(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(self.a * other.a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def inv(self):
        if self.a == 0:
            raise ZeroDivisionError("jet with zero constant part is not invertible")
        ia = 1 / self.a
        return Jet(ia, -ia * ia * self.b)

    def __truediv__(self, other):
        other = _as_jet(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _as_jet(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        out = Jet(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __neg__(self):
        return Jet(-self.a, -self.b)

    def __eq__(self, other):
        other = _as_jet(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash(("jet", self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return "Jet(%s, %s)" % (self.a, self.b)


def _as_jet(x):
    if isinstance(x, Jet):
        return x
    if isinstance(x, (int, Fraction)):
        return Jet(x)
    return NotImplemented


class Field:
    """Tiny context object: builds constants in one of the scalar domains."""

    def __init__(self, name):
        if name not in ("rational", "prime", "jet"):
            raise ValueError("unknown field mode %r" % name)
        self.name = name

    def of(self, n):
        """Embed an integer (or Fraction, in rational/jet mode)."""
        if self.name == "rational":
            return Fraction(n)
        if self.name == "prime":
            if isinstance(n, Fraction):
                return PrimeScalar(n.numerator) / PrimeScalar(n.denominator)
            return PrimeScalar(n)
        return Jet(n)

    @property
    def zero(self):
        return self.of(0)

    @property
    def one(self):
        return self.of(1)


RATIONAL = Field("rational")
PRIME_FIELD = Field("prime")
JET_FIELD = Field("jet")

FIELDS = {"rational": RATIONAL, "prime": PRIME_FIELD, "jet": JET_FIELD}


def spow(x, e):
    """x**e for integer e of either sign (x any scalar)."""
    if e >= 0:
        return x ** e
    return (1 / x) ** (-e)
