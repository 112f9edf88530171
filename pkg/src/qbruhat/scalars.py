"""Division-ring scalars: exact rationals and exact rational quaternions.

Every algorithm in this package is generic over a scalar that supports
``+``, ``-``, ``*``, exact equality, and inversion of nonzero elements via
:func:`inv`.  Multiplication is never assumed commutative.  Two concrete
scalars ship here:

* ``fractions.Fraction`` -- the commutative oracle scalar.  The stdlib type
  already guarantees lowest terms and a positive denominator, which is all
  the Rational contract asks for.
* :class:`RationalQuaternion` -- quaternions with ``Fraction`` components,
  the working noncommutative skew field.

Python ints are accepted anywhere a scalar is (they behave as rationals),
so identity matrices and generator matrices can be built from literals.

Text forms: rationals print as ``p`` or ``p/q``; quaternions print
canonically as ``a+b*i+c*j+d*k`` with all four components present, e.g.
``1/2-3*i+0*j+7/5*k``.  ``parse_scalar(format_scalar(x)) == x`` exactly.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction

from .errors import ZeroInverse

Rational = Fraction

_COEF = r"[+-]?\d+(?:/\d+)?"
_QUAT_TERM = re.compile(
    r"(?P<sign>[+-]?)\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?(?P<unit>[ijk]?)"
)


class RationalQuaternion:
    """A quaternion a + b*i + c*j + d*k with exact rational components."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))
        object.__setattr__(self, "d", Fraction(d))

    def __setattr__(self, name, value):
        raise AttributeError("RationalQuaternion is immutable")

    def components(self):
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def _raw(cls, a, b, c, d):
        # internal: components are known to be Fractions already
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "c", c)
        object.__setattr__(obj, "d", d)
        return obj

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalQuaternion):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalQuaternion(other)
        return None

    def _packed(self):
        """Integer components over one common positive denominator."""
        a, b, c, d = self.a, self.b, self.c, self.d
        den = math.lcm(a.denominator, b.denominator, c.denominator, d.denominator)
        return (
            a.numerator * (den // a.denominator),
            b.numerator * (den // b.denominator),
            c.numerator * (den // c.denominator),
            d.numerator * (den // d.denominator),
            den,
        )

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return self._raw(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1, e1 = self._packed()
        a2, b2, c2, d2, e2 = o._packed()
        den = e1 * e2
        return self._raw(
            Fraction(a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2, den),
            Fraction(a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2, den),
            Fraction(a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2, den),
            Fraction(a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2, den),
        )

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.components() == o.components()

    def __hash__(self):
        if self.b == 0 and self.c == 0 and self.d == 0:
            return hash(self.a)
        return hash(self.components())

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self):
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def conjugate(self):
        return RationalQuaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self):
        """The reduced norm a^2 + b^2 + c^2 + d^2; zero only at q = 0."""
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroInverse("cannot invert the zero quaternion")
        return RationalQuaternion(self.a / n, -self.b / n, -self.c / n, -self.d / n)

    def __repr__(self):
        return f"RationalQuaternion({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def __str__(self):
        return format_scalar(self)


class OppositeScalar:
    """A scalar of the opposite ring: same additive group, reversed products.

    Wrapping every entry of x^T in this turns the literal transpose into a
    genuine antiautomorphism over a noncommutative scalar, which is what the
    transpose identity for quasiminors asserts.
    """

    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("OppositeScalar is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, OppositeScalar):
            return other
        if isinstance(other, (int, Fraction, RationalQuaternion)):
            return OppositeScalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return OppositeScalar(self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return OppositeScalar(self.value - o.value)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return OppositeScalar(-self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return OppositeScalar(o.value * self.value)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        return hash(("op", self.value))

    def __repr__(self):
        return f"OppositeScalar({self.value!r})"


def is_zero(a) -> bool:
    """Exact zero test, usable for every supported scalar.

    sympy expressions are normalized with ``cancel`` first, so rational
    functions in commuting symbols are decided exactly.
    """
    if isinstance(a, RationalQuaternion):
        return a.is_zero()
    if isinstance(a, OppositeScalar):
        return is_zero(a.value)
    if isinstance(a, (int, Fraction)):
        return a == 0
    if type(a).__module__.split(".")[0] == "sympy":
        import sympy

        return sympy.cancel(sympy.together(a)) == 0
    return a == 0


def inv(a):
    """Multiplicative inverse of a nonzero scalar."""
    if isinstance(a, RationalQuaternion):
        return a.inverse()
    if isinstance(a, OppositeScalar):
        return OppositeScalar(inv(a.value))
    if isinstance(a, (int, Fraction)):
        if a == 0:
            raise ZeroInverse("cannot invert 0")
        return Fraction(1) / Fraction(a)
    if is_zero(a):
        raise ZeroInverse(f"cannot invert {a!r}")
    return 1 / a


def quat_mul(x: RationalQuaternion, y: RationalQuaternion) -> RationalQuaternion:
    """Hamilton product (i^2 = j^2 = k^2 = ijk = -1), exact."""
    return x * y


def quat_inv(x: RationalQuaternion) -> RationalQuaternion:
    """Two-sided inverse conj(x)/norm(x); raises ZeroInverse at x = 0."""
    return x.inverse()


def sample_generic(seed: int, bound: int = 3) -> RationalQuaternion:
    """Deterministic nonzero quaternion with integer components in [-bound, bound].

    Small components keep the coefficient growth of quasiminor towers
    tractable while staying generic enough for the identity harness.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = random.Random(seed)
    return random_quaternion(rng, bound)


def random_quaternion(rng: random.Random, bound: int = 3) -> RationalQuaternion:
    """Nonzero quaternion with integer components drawn from rng."""
    while True:
        comps = [rng.randint(-bound, bound) for _ in range(4)]
        if any(comps):
            return RationalQuaternion(*comps)


def format_scalar(x) -> str:
    """Canonical text form; round-trips exactly through parse_scalar."""
    if isinstance(x, (int, Fraction)):
        return _format_rational(Fraction(x))
    if isinstance(x, RationalQuaternion):
        parts = [_format_rational(x.a)]
        for coef, unit in ((x.b, "i"), (x.c, "j"), (x.d, "k")):
            body = _format_rational(abs(coef))
            parts.append(("-" if coef < 0 else "+") + body + "*" + unit)
        return "".join(parts)
    raise TypeError(f"no text form for {type(x).__name__}")


def _format_rational(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def parse_scalar(text: str):
    """Parse ``p/q`` into a Fraction or ``a+b*i+c*j+d*k`` into a quaternion.

    Terms may be omitted or reordered; a bare unit like ``-i`` means
    coefficient 1.  Any appearance of i/j/k yields a RationalQuaternion.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not re.search(r"[ijk]", s):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational {text!r}") from exc
    comps = {"": Fraction(0), "i": Fraction(0), "j": Fraction(0), "k": Fraction(0)}
    pos = 0
    while pos < len(s):
        m = _QUAT_TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad quaternion {text!r} at position {pos}")
        sign, coef, unit = m.group("sign"), m.group("coef"), m.group("unit")
        if coef is None and unit == "":
            raise ValueError(f"bad quaternion {text!r} at position {pos}")
        value = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            value = -value
        comps[unit] += value
        pos = m.end()
    return RationalQuaternion(comps[""], comps["i"], comps["j"], comps["k"])
