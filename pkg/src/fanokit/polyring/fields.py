"""Exact scalar fields: the rationals and prime fields F_p.

Forms store raw coefficients (``Fraction`` over Q, ``int`` in ``[0, p)`` over
F_p); the field object owns normalization and arithmetic.  ``PrimeFieldElement``
is the boxed user-facing scalar and is what ``rank`` uses to tell scalar kinds
apart in a bare nested list.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from ..errors import DomainError

DEFAULT_PRIME = 2147483647  # 2^31 - 1


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs (exact for n < 3.3e24)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
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


class RationalField:
    """The field Q with ``Fraction`` coefficients."""

    characteristic = 0
    name = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, PrimeFieldElement):
            raise TypeError("cannot coerce a prime-field element into Q")
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def format(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field F_p; primality is checked on construction."""

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        p = self.p
        if isinstance(x, PrimeFieldElement):
            if x.p != p:
                raise TypeError(f"element of F_{x.p} used in F_{p}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def element(self, x) -> "PrimeFieldElement":
        return PrimeFieldElement(self(x), self.p)

    def format(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text) -> RationalField | PrimeField:
    """Parse ``Q``/``QQ`` or a prime given as ``101``, ``F101``, ``GF(101)``."""
    if isinstance(text, (RationalField, PrimeField)):
        return text
    s = str(text).strip().upper()
    if s in ("Q", "QQ"):
        return QQ
    for prefix in ("GF(", "GF", "F_", "F"):
        if s.startswith(prefix):
            s = s[len(prefix):]
            break
    s = s.rstrip(")")
    try:
        p = int(s)
    except ValueError:
        raise DomainError(f"unrecognized field {text!r}") from None
    return GF(p)


class PrimeFieldElement:
    """An element of F_p, boxed with its modulus."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise TypeError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value * pow(o, -1, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def lcm_of_denominators(values) -> int:
    out = 1
    for v in values:
        den = v.denominator if isinstance(v, Fraction) else 1
        if den != 1:
            out = out * den // math.gcd(out, den)
    return out
