"""Exact arithmetic in real quadratic fields and one square-root extension above them.

Everything the synthesis routines produce -- couplings, magnetic fields,
one-excitation spectra -- lives in a single real quadratic field Q(sqrt(d))
with d = m**2 - 1 for an integer m >= 2.  :class:`QuadExt` models elements
a + b*sqrt(d) with ``Fraction`` coefficients, in a canonical form that makes
equality, exact sign tests and hashing trivial.

Some intermediate quantities (the recurrence parameter ``alpha`` and friends)
live one level up, in Q(sqrt(d))(sqrt(e)) for a field element e that is not a
square -- and that may be negative.  :class:`RootExt` models p + r*sqrt(e)
symbolically; the physics guarantees every end result is even in sqrt(e), so
the radical coefficient cancels and :meth:`RootExt.pure_part` recovers the
underlying :class:`QuadExt`.  Nothing ever needs the sign or a float of a
mixed tower element, which is what lets negative radicands ride along safely.
"""

from __future__ import annotations

import math
from fractions import Fraction

_RATIONAL = (int, Fraction)


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s * f * f`` and ``s`` squarefree."""
    f = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            f *= p
        p += 1
    return n, f


class QuadExt:
    """An element a + b*sqrt(d) of a real quadratic field, with exact coefficients.

    Canonical form: d is squarefree and positive whenever b != 0, and
    (b, d) == (0, 0) for rational values.  Square factors of the radicand are
    folded into b, and sqrt(1) collapses into the rational part, so two equal
    values always compare (and hash) equal.

    Arithmetic mixes freely with ``int`` and ``Fraction``.  Combining two
    irrational elements of *different* fields raises ``ValueError`` -- the
    chain constructions never need composite fields, so wanting one is a bug.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError("radicand must be nonnegative")
        if d <= 1:
            a, b, d = a + b * d, Fraction(0), 0
        elif b == 0:
            d = 0
        else:
            s, f = _squarefree_split(d)
            if f != 1:
                b *= f
                d = s
            if d == 1:
                a, b, d = a + b, Fraction(0), 0
        self.a = a
        self.b = b
        self.d = d

    # -- helpers ---------------------------------------------------------

    def _coerce(self, other):
        """Other as a QuadExt compatible with self, or None if foreign."""
        if isinstance(other, QuadExt):
            if self.d == 0 or other.d == 0 or self.d == other.d:
                return other
            raise ValueError(
                f"incompatible radicands: sqrt({self.d}) vs sqrt({other.d})"
            )
        if isinstance(other, _RATIONAL):
            return QuadExt(other)
        return None

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self!r} is irrational")
        return self.a

    def as_integer(self) -> int | None:
        """The value as a plain int, or None if it is not a rational integer."""
        if self.b != 0 or self.a.denominator != 1:
            return None
        return self.a.numerator

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a**2 - b**2 * d (the product with the conjugate)."""
        return self.a * self.a - self.b * self.b * self.d

    def sign(self) -> int:
        """Exact sign (-1, 0, or 1), with no floating point involved."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # a and b*sqrt(d) pull in opposite directions: compare magnitudes.
        lhs = self.a * self.a
        rhs = self.b * self.b * self.d
        if lhs == rhs:  # impossible for canonical d > 1, kept for safety
            return 0
        return sa if lhs > rhs else sb

    def inverse(self) -> "QuadExt":
        if not self:
            raise ZeroDivisionError("division by zero")
        n = self.norm()
        return QuadExt(self.a / n, -self.b / n, self.d)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d or o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d or o.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(o.a - self.a, o.b - self.b, self.d or o.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.d or o.d
        return QuadExt(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadExt(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ValueError:
            return False  # different fields, canonical form => never equal
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __bool__(self):
        return bool(self.a or self.b)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # -- conversions -----------------------------------------------------

    def __float__(self) -> float:
        if self.b == 0:
            return float(self.a)
        root = math.sqrt(self.d)
        if self.a == 0 or (self.a > 0) == (self.b > 0):
            return float(self.a) + float(self.b) * root
        # Opposite signs cancel catastrophically once the coefficients grow
        # (think q**40 with coefficients ~1e22).  The conjugate has
        # reinforcing terms, and norm/conjugate is exact up to rounding.
        conj = float(self.a) - float(self.b) * root
        return float(self.norm()) / conj

    def __repr__(self):
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a}, {self.b}, {self.d})"


class RootExt:
    """p + r*sqrt(e) with p, r, e in a common quadratic field Q(sqrt(d)).

    The radicand e may be negative or positive; it is treated as a formal
    symbol with sqrt(e)**2 == e, so no sign, ordering or float conversion is
    ever defined for mixed elements.  Pure elements (r == 0) canonicalize to
    e == 0 and convert back via :meth:`pure_part`.
    """

    __slots__ = ("p", "r", "e")

    def __init__(self, p=0, r=0, e=0):
        p = p if isinstance(p, QuadExt) else QuadExt(p)
        r = r if isinstance(r, QuadExt) else QuadExt(r)
        e = e if isinstance(e, QuadExt) else QuadExt(e)
        if not e:
            r = QuadExt(0)
        if not r:
            e = QuadExt(0)
        self.p = p
        self.r = r
        self.e = e

    def _coerce(self, other):
        if isinstance(other, RootExt):
            if not self.r or not other.r or self.e == other.e:
                return other
            raise ValueError("incompatible tower radicands")
        if isinstance(other, (QuadExt,) + _RATIONAL):
            return RootExt(other)
        return None

    def _pick_e(self, o: "RootExt") -> QuadExt:
        return self.e if self.r else o.e

    def pure_part(self) -> QuadExt:
        """The element as a plain QuadExt; raises if the radical part survived."""
        if self.r:
            raise ArithmeticError(f"nonzero radical part in {self!r}")
        return self.p

    def inverse(self) -> "RootExt":
        n = self.p * self.p - self.r * self.r * self.e
        if not n:
            raise ZeroDivisionError("division by zero in root extension")
        return RootExt(self.p / n, -self.r / n, self.e)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RootExt(self.p + o.p, self.r + o.r, self._pick_e(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RootExt(self.p - o.p, self.r - o.r, self._pick_e(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RootExt(o.p - self.p, o.r - self.r, self._pick_e(o))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        e = self._pick_e(o)
        return RootExt(
            self.p * o.p + self.r * o.r * e,
            self.p * o.r + self.r * o.p,
            e,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = RootExt(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return RootExt(-self.p, -self.r, self.e)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ValueError:
            return False
        if o is None:
            return NotImplemented
        return self.p == o.p and self.r == o.r

    def __bool__(self):
        return bool(self.p or self.r)

    def __hash__(self):
        if not self.r:
            return hash(self.p)
        return hash((self.p, self.r, self.e))

    def __repr__(self):
        if not self.r:
            return f"RootExt({self.p!r})"
        return f"RootExt({self.p!r}, {self.r!r}, e={self.e!r})"


def cheb_u(n: int, x):
    """Chebyshev polynomial of the second kind, U_n(x), for n >= -2.

    Works over any ring whose elements support +, -, * and mixing with ints
    (int, Fraction, QuadExt, RootExt, ...).  The recurrence is seeded with
    U_{-2} = -1, U_{-1} = 0, U_0 = 1.
    """
    if n < -2:
        raise ValueError("cheb_u defined for n >= -2 only")
    zero = 0 * x
    if n == -2:
        return zero - 1
    u_prev, u = zero, zero + 1
    for _ in range(max(n, 0)):
        u_prev, u = u, 2 * x * u - u_prev
    return u_prev if n == -1 else u


def q_from_m(m: int, half: bool = False) -> QuadExt:
    """The root of q + 1/q == 2*m lying in (0, 1), i.e. m - sqrt(m**2 - 1).

    With ``half=True``, m parametrizes sqrt(q) instead, so the returned value
    is (m - sqrt(m**2 - 1))**2 -- the convention of the para family, where the
    half-integer powers q**(n/2) must stay inside the field.
    """
    if not isinstance(m, int) or m < 2:
        raise ValueError("m must be an integer >= 2")
    root = QuadExt(m, -1, m * m - 1)
    return root * root if half else root
