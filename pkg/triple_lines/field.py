"""
Exact arithmetic over Q and Q(w)

w is a primitive cube root of unity, w^2 + w + 1 = 0. An element of Q(w) is
kept as (A + B*w) / D with integers A, B, D where D > 0 and gcd(A, B, D) = 1,
so equal elements always have equal representations. Eisenstein integers
Z[w] provide Euclidean division and divisor enumeration for exact root finding.
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from math import gcd
from typing import List, Tuple, Union

import sympy
from sympy.ntheory import sqrt_mod

from .errors import FactorizationRangeError, FieldDivisionError, FieldMismatchError, ParseError

BigRational = Fraction

RationalLike = Union[int, Fraction, str]

FACTORIZATION_NORM_LIMIT = 2**64


class CoefficientField(str, Enum):
    """Coefficient fields shipped with the library"""

    Q = "Q"
    QW = "Q(w)"

    @classmethod
    def parse(cls, text: str) -> "CoefficientField":
        normalized = text.strip().lower().replace(" ", "")
        if normalized in ("q", "rational", "rationals"):
            return cls.Q
        if normalized in ("qw", "q(w)", "q(omega)", "eisenstein", "cyclotomic3"):
            return cls.QW
        raise ParseError(f"unknown coefficient field '{text}' (expected Q or Q(w))")


class FieldElement:
    """Immutable element of Q(w); rationals are the elements with b = 0"""

    __slots__ = ("_num_a", "_num_b", "_den", "_hash")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0):
        fa = Fraction(a)
        fb = Fraction(b)
        den = fa.denominator * fb.denominator // gcd(fa.denominator, fb.denominator)
        self._assign(
            fa.numerator * (den // fa.denominator), fb.numerator * (den // fb.denominator), den
        )

    def _assign(self, num_a: int, num_b: int, den: int) -> None:
        if den < 0:
            num_a, num_b, den = -num_a, -num_b, -den
        g = gcd(gcd(num_a, num_b), den)
        if g > 1:
            num_a //= g
            num_b //= g
            den //= g
        self._num_a = num_a
        self._num_b = num_b
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num_a: int, num_b: int, den: int) -> "FieldElement":
        obj = object.__new__(cls)
        obj._assign(num_a, num_b, den)
        return obj

    @classmethod
    def coerce(cls, value: Union["FieldElement", int, Fraction]) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0, 1)
        if isinstance(value, Fraction):
            return cls._raw(value.numerator, 0, value.denominator)
        raise TypeError(f"cannot use {type(value).__name__} as a field element")

    # components

    @property
    def a(self) -> Fraction:
        return Fraction(self._num_a, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._num_b, self._den)

    @property
    def denominator(self) -> int:
        """Least positive D with D*x in Z[w]"""
        return self._den

    def integral_parts(self) -> Tuple[int, int, int]:
        return self._num_a, self._num_b, self._den

    def is_zero(self) -> bool:
        return self._num_a == 0 and self._num_b == 0

    def is_one(self) -> bool:
        return self._num_a == 1 and self._num_b == 0 and self._den == 1

    def is_rational(self) -> bool:
        return self._num_b == 0

    def to_fraction(self) -> Fraction:
        if self._num_b:
            raise FieldMismatchError(f"{self} is not rational")
        return Fraction(self._num_a, self._den)

    def sort_key(self) -> Tuple[int, int, int, int]:
        a, b = self.a, self.b
        return (a.numerator, a.denominator, b.numerator, b.denominator)

    # arithmetic

    def __add__(self, other):
        try:
            o = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        if self._den == o._den:
            return FieldElement._raw(self._num_a + o._num_a, self._num_b + o._num_b, self._den)
        return FieldElement._raw(
            self._num_a * o._den + o._num_a * self._den,
            self._num_b * o._den + o._num_b * self._den,
            self._den * o._den,
        )

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement._raw(-self._num_a, -self._num_b, self._den)

    def __sub__(self, other):
        try:
            o = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        try:
            o = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        a1, b1, a2, b2 = self._num_a, self._num_b, o._num_a, o._num_b
        if b1 == 0 and b2 == 0:
            return FieldElement._raw(a1 * a2, 0, self._den * o._den)
        # w^2 = -1 - w
        bb = b1 * b2
        return FieldElement._raw(a1 * a2 - bb, a1 * b2 + a2 * b1 - bb, self._den * o._den)

    __rmul__ = __mul__

    def conjugate(self) -> "FieldElement":
        """Image under w -> w^2 = -1 - w"""
        return FieldElement._raw(self._num_a - self._num_b, -self._num_b, self._den)

    def norm(self) -> Fraction:
        a, b = self._num_a, self._num_b
        return Fraction(a * a - a * b + b * b, self._den * self._den)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise FieldDivisionError("division by zero in Q(w)")
        a, b, d = self._num_a, self._num_b, self._den
        norm = a * a - a * b + b * b
        return FieldElement._raw(d * (a - b), -d * b, norm)

    def __truediv__(self, other):
        try:
            o = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = ONE
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return (
                self._num_a == other._num_a
                and self._num_b == other._num_b
                and self._den == other._den
            )
        if isinstance(other, (int, Fraction)):
            return self._num_b == 0 and Fraction(self._num_a, self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self._num_b == 0:
                self._hash = hash(Fraction(self._num_a, self._den))
            else:
                self._hash = hash((self._num_a, self._num_b, self._den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __reduce__(self):
        return (FieldElement._raw, (self._num_a, self._num_b, self._den))

    # text

    def __str__(self) -> str:
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        if abs(b) == 1:
            w_part = "w"
        else:
            w_part = f"{abs(b)}*w"
        if a == 0:
            return w_part if b > 0 else f"-{w_part}"
        sign = "+" if b > 0 else "-"
        return f"{a}{sign}{w_part}"

    def __repr__(self) -> str:
        return f"FieldElement('{self}')"


ZERO = FieldElement(0)
ONE = FieldElement(1)
OMEGA = FieldElement(0, 1)

_ELEMENT_RE = re.compile(
    r"^(?P<a>[+-]?\d+(?:/\d+)?)?(?:(?P<sign>[+-])?(?:(?P<b>\d+(?:/\d+)?)\*)?(?P<w>w))?$"
)


def _rational(text: str) -> Fraction:
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ParseError(f"zero denominator in '{text}'")
    return Fraction(text)


def parse_field_element(text: str, field: CoefficientField = CoefficientField.QW) -> FieldElement:
    """
    Parse `a`, `a/b`, `a+b*w`, `a/b - c/d*w` and friends.

    Anything outside the compact forms is handed to the polynomial grammar as
    a constant expression, so "(1+w)/2" is accepted as well.
    """
    compact = re.sub(r"\s+", "", text)
    match = _ELEMENT_RE.match(compact)
    if compact and match and not (match.group("a") and match.group("w") and not match.group("sign")):
        if match.group("w") and field == CoefficientField.Q:
            raise FieldMismatchError(f"'{text}' uses w but the coefficient field is Q")
        a = _rational(match.group("a")) if match.group("a") else Fraction(0)
        b = Fraction(0)
        if match.group("w"):
            b = _rational(match.group("b")) if match.group("b") else Fraction(1)
            if match.group("sign") == "-":
                b = -b
        return FieldElement(a, b)

    from .polytext import parse_constant

    return parse_constant(text, field)


# Eisenstein integers


@dataclass(frozen=True)
class EisensteinInt:
    """a + b*w with integer a, b"""

    a: int
    b: int = 0

    def __add__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "EisensteinInt":
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other: "EisensteinInt") -> "EisensteinInt":
        bb = self.b * other.b
        return EisensteinInt(self.a * other.a - bb, self.a * other.b + self.b * other.a - bb)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def norm(self) -> int:
        return eis_norm(self)

    def conjugate(self) -> "EisensteinInt":
        return EisensteinInt(self.a - self.b, -self.b)

    def is_unit(self) -> bool:
        return self.norm() == 1

    def associates(self) -> List["EisensteinInt"]:
        return [self * u for u in UNITS]

    def canonical_associate(self) -> "EisensteinInt":
        """The associate with a > 0 and b <= 0 (a 60 degree sector)"""
        if not self:
            return self
        for candidate in self.associates():
            if candidate.a > 0 and candidate.b <= 0:
                return candidate
        raise AssertionError(f"no canonical associate for {self}")

    def sort_key(self) -> Tuple[int, int, int]:
        return (self.norm(), self.a, self.b)

    def to_field(self) -> FieldElement:
        return FieldElement(self.a, self.b)

    @classmethod
    def from_field(cls, x: FieldElement) -> "EisensteinInt":
        num_a, num_b, den = x.integral_parts()
        if den != 1:
            raise ValueError(f"{x} is not an Eisenstein integer")
        return cls(num_a, num_b)

    def __str__(self) -> str:
        return str(self.to_field())


UNITS: Tuple[EisensteinInt, ...] = (
    EisensteinInt(1, 0),
    EisensteinInt(-1, 0),
    EisensteinInt(0, 1),
    EisensteinInt(0, -1),
    EisensteinInt(1, 1),
    EisensteinInt(-1, -1),
)


def eis_norm(e: EisensteinInt) -> int:
    """a^2 - a*b + b^2"""
    return e.a * e.a - e.a * e.b + e.b * e.b


def _round_div(n: int, d: int) -> int:
    """Nearest integer to n/d for d > 0, halves rounded up"""
    return (2 * n + d) // (2 * d)


def eis_divmod(x: EisensteinInt, y: EisensteinInt) -> Tuple[EisensteinInt, EisensteinInt]:
    """Euclidean division: x = q*y + r with norm(r) < norm(y)"""
    if not y:
        raise FieldDivisionError("Euclidean division by zero in Z[w]")
    n = eis_norm(y)
    p = x * y.conjugate()
    q = EisensteinInt(_round_div(p.a, n), _round_div(p.b, n))
    return q, x - q * y


def eis_divides(d: EisensteinInt, e: EisensteinInt) -> bool:
    return not eis_divmod(e, d)[1]


def eis_gcd(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    while y:
        x, y = y, eis_divmod(x, y)[1]
    return x.canonical_associate()


def _primes_over(p: int) -> List[EisensteinInt]:
    """Eisenstein primes dividing the rational prime p, up to associates"""
    if p == 3:
        return [EisensteinInt(1, -1)]
    if p % 3 == 2:
        return [EisensteinInt(p, 0)]
    s = sqrt_mod(-3, p)
    t = ((s - 1) * pow(2, -1, p)) % p  # t^2 + t + 1 = 0 mod p
    pi = eis_gcd(EisensteinInt(p, 0), EisensteinInt(t, -1))
    return [pi, pi.conjugate().canonical_associate()]


def eis_factor(e: EisensteinInt) -> Tuple[EisensteinInt, List[Tuple[EisensteinInt, int]]]:
    """Return (unit, [(prime, exponent), ...]) with e = unit * prod(prime**exponent)"""
    if not e:
        raise FieldDivisionError("zero has no factorization")
    n = eis_norm(e)
    if n > FACTORIZATION_NORM_LIMIT:
        raise FactorizationRangeError(f"norm {n} of {e} exceeds the trial-division range")
    rest = e
    factors: List[Tuple[EisensteinInt, int]] = []
    for p in sorted(sympy.factorint(n)):
        for pi in _primes_over(p):
            exponent = 0
            while True:
                q, r = eis_divmod(rest, pi)
                if r:
                    break
                rest = q
                exponent += 1
            if exponent:
                factors.append((pi, exponent))
    if not rest.is_unit():
        raise AssertionError(f"incomplete factorization of {e}: cofactor {rest}")
    return rest, factors


def eis_divisors(e: EisensteinInt) -> List[EisensteinInt]:
    """One representative per associate class of the divisors of e, sorted by norm"""
    _, factors = eis_factor(e)
    divisors = set()
    for exponents in product(*(range(k + 1) for _, k in factors)):
        d = EisensteinInt(1, 0)
        for (pi, _), k in zip(factors, exponents):
            for _ in range(k):
                d = d * pi
        divisors.add(d.canonical_associate())
    return sorted(divisors, key=EisensteinInt.sort_key)
