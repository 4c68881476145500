"""
Sparse multivariate polynomials over Q(w)

A polynomial is a dict from exponent tuples to nonzero FieldElements, tied to
a PolyRing that names its variables and fixes the monomial order. Arithmetic
between different rings is refused instead of silently unified: chart
coordinates and ambient coordinates must never be mixed up.
"""

from enum import Enum
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import RingMismatchError, UnknownVariableError
from .field import ONE, ZERO, CoefficientField, FieldElement

Monomial = Tuple[int, ...]
Scalar = Union[FieldElement, int]
VariableRef = Union[int, str]


class MonomialOrder(str, Enum):
    LEX = "lex"
    GREVLEX = "grevlex"


def _lex_key(m: Monomial) -> Tuple[int, ...]:
    return m


def _grevlex_key(m: Monomial) -> Tuple[int, ...]:
    return (sum(m),) + tuple(-e for e in reversed(m))


def _lex_heap_key(m: Monomial) -> Tuple[int, ...]:
    return tuple(-e for e in m)


def _grevlex_heap_key(m: Monomial) -> Tuple[int, ...]:
    return (-sum(m),) + tuple(reversed(m))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b"""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a"""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """Named variables, a monomial order and the coefficient field"""

    __slots__ = ("names", "order", "field", "_index", "key", "heap_key")

    def __init__(
        self,
        names: Sequence[str],
        order: MonomialOrder = MonomialOrder.GREVLEX,
        field: CoefficientField = CoefficientField.QW,
    ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if "w" in names:
            raise ValueError("'w' is reserved for the cube root of unity")
        self.names: Tuple[str, ...] = names
        self.order = MonomialOrder(order)
        self.field = CoefficientField(field)
        self._index = {name: i for i, name in enumerate(names)}
        if self.order == MonomialOrder.LEX:
            self.key: Callable[[Monomial], Tuple[int, ...]] = _lex_key
            self.heap_key: Callable[[Monomial], Tuple[int, ...]] = _lex_heap_key
        else:
            self.key = _grevlex_key
            self.heap_key = _grevlex_heap_key

    @property
    def ngens(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyRing):
            return NotImplemented
        return self.names == other.names and self.order == other.order and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.names, self.order, self.field))

    def __repr__(self) -> str:
        return f"PolyRing({list(self.names)}, {self.order.value}, {self.field.value})"

    def __reduce__(self):
        return (PolyRing, (self.names, self.order, self.field))

    def index(self, var: VariableRef) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.ngens:
                raise IndexError(f"variable index {var} out of range for {self}")
            return var
        try:
            return self._index[var]
        except KeyError:
            raise UnknownVariableError(var) from None

    def has_variable(self, name: str) -> bool:
        return name in self._index

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.names, order, self.field)

    def with_field(self, field: CoefficientField) -> "PolyRing":
        return PolyRing(self.names, self.order, field)

    def extended(self, names: Sequence[str]) -> "PolyRing":
        """Ring with extra variables appended after the existing ones"""
        return PolyRing(self.names + tuple(names), self.order, self.field)

    def unit(self, i: int) -> Monomial:
        return tuple(1 if k == i else 0 for k in range(self.ngens))

    def zero(self) -> "MPoly":
        return MPoly._trusted(self, {})

    def one(self) -> "MPoly":
        return self.constant(ONE)

    def constant(self, c: Scalar) -> "MPoly":
        c = FieldElement.coerce(c)
        if not c:
            return self.zero()
        return MPoly._trusted(self, {(0,) * self.ngens: c})

    def monomial(self, exponents: Sequence[int], coeff: Scalar = 1) -> "MPoly":
        return MPoly(self, {tuple(exponents): coeff})

    def gen(self, var: VariableRef) -> "MPoly":
        return MPoly._trusted(self, {self.unit(self.index(var)): ONE})

    def gens(self) -> Tuple["MPoly", ...]:
        return tuple(self.gen(i) for i in range(self.ngens))

    def linear_form(self, coefficients: Sequence[Scalar]) -> "MPoly":
        terms = {self.unit(i): c for i, c in enumerate(coefficients)}
        return MPoly(self, terms)


class MPoly:
    """Immutable sparse polynomial; the zero polynomial has no terms"""

    __slots__ = ("ring", "_terms", "_lead")

    def __init__(self, ring: PolyRing, terms: Optional[Mapping[Sequence[int], Scalar]] = None):
        clean: Dict[Monomial, FieldElement] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != ring.ngens or any(e < 0 for e in m):
                raise ValueError(f"exponent vector {m} does not fit {ring}")
            c = FieldElement.coerce(c)
            if c:
                previous = clean.get(m)
                c = c if previous is None else previous + c
                if c:
                    clean[m] = c
                else:
                    clean.pop(m, None)
        self.ring = ring
        self._terms = clean
        self._lead: Optional[Monomial] = None

    @classmethod
    def _trusted(cls, ring: PolyRing, terms: Dict[Monomial, FieldElement]) -> "MPoly":
        obj = object.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._lead = None
        return obj

    def __reduce__(self):
        return (MPoly, (self.ring, dict(self._terms)))

    # inspection

    @property
    def terms(self) -> Mapping[Monomial, FieldElement]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> List[Tuple[Monomial, FieldElement]]:
        """Terms in strictly decreasing monomial order"""
        key = self.ring.key
        return sorted(self._terms.items(), key=lambda item: key(item[0]), reverse=True)

    @property
    def lm(self) -> Monomial:
        if self._lead is None:
            if not self._terms:
                raise ValueError("the zero polynomial has no leading monomial")
            self._lead = max(self._terms, key=self.ring.key)
        return self._lead

    @property
    def lc(self) -> FieldElement:
        return self._terms[self.lm]

    def coefficient(self, m: Sequence[int]) -> FieldElement:
        return self._terms.get(tuple(m), ZERO)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(self.lm))

    def constant_value(self) -> FieldElement:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.ring.ngens, ZERO)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def degree(self, var: VariableRef) -> int:
        i = self.ring.index(var)
        return max((m[i] for m in self._terms), default=-1)

    def support(self) -> List[int]:
        """Indices of the variables that occur"""
        used = [0] * self.ring.ngens
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = 1
        return [i for i, flag in enumerate(used) if flag]

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def homogeneous_components(self) -> Dict[int, "MPoly"]:
        parts: Dict[int, Dict[Monomial, FieldElement]] = {}
        for m, c in self._terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: MPoly._trusted(self.ring, t) for d, t in sorted(parts.items())}

    def is_univariate(self) -> bool:
        return len(self.support()) <= 1

    # arithmetic

    def _check(self, other: "MPoly") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} and {other.ring} differ")

    def _lift(self, other) -> Optional["MPoly"]:
        if isinstance(other, MPoly):
            self._check(other)
            return other
        try:
            return self.ring.constant(FieldElement.coerce(other))
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            previous = out.get(m)
            if previous is None:
                out[m] = c
            else:
                s = previous + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return MPoly._trusted(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._trusted(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> "MPoly":
        c = FieldElement.coerce(c)
        if not c:
            return self.ring.zero()
        return MPoly._trusted(self.ring, {m: v * c for m, v in self._terms.items()})

    def mul_term(self, m: Monomial, c: Scalar) -> "MPoly":
        c = FieldElement.coerce(c)
        if not c:
            return self.ring.zero()
        return MPoly._trusted(
            self.ring, {monomial_mul(k, m): v * c for k, v in self._terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                return self.scale(FieldElement.coerce(other))
            except TypeError:
                return NotImplemented
        self._check(other)
        out: Dict[Monomial, FieldElement] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                previous = out.get(m)
                out[m] = c1 * c2 if previous is None else previous + c1 * c2
        return MPoly._trusted(self.ring, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        try:
            return self.scale(FieldElement.coerce(other))
        except TypeError:
            return NotImplemented

    def __pow__(self, exponent: int) -> "MPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def monic(self) -> "MPoly":
        if not self._terms:
            return self
        lc = self.lc
        if lc.is_one():
            return self
        return self.scale(lc.inverse())

    def divide_exact(self, divisor: "MPoly") -> "MPoly":
        """Quotient of an exact division; raises ValueError when a remainder is left"""
        self._check(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lm_d, lc_inv = divisor.lm, divisor.lc.inverse()
        rest = self
        quotient: Dict[Monomial, FieldElement] = {}
        while rest:
            lm_r = rest.lm
            if not monomial_divides(lm_d, lm_r):
                raise ValueError(f"{divisor} does not divide {self}")
            m = monomial_div(lm_r, lm_d)
            c = rest.lc * lc_inv
            quotient[m] = c
            rest = rest - divisor.mul_term(m, c)
        return MPoly._trusted(self.ring, quotient)

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, FieldElement)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self._terms.items())))

    # calculus and substitution

    def derivative(self, var: VariableRef) -> "MPoly":
        i = self.ring.index(var)
        out: Dict[Monomial, FieldElement] = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1 :]] = c * e
        return MPoly._trusted(self.ring, out)

    def evaluate(self, point: Sequence[Scalar]) -> FieldElement:
        if len(point) != self.ring.ngens:
            raise ValueError(f"point of length {len(point)} for {self.ring}")
        values = [FieldElement.coerce(v) for v in point]
        powers: Dict[Tuple[int, int], FieldElement] = {}
        total = ZERO
        for m, c in self._terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    p = powers.get((i, e))
                    if p is None:
                        p = powers[(i, e)] = values[i] ** e
                    term = term * p
            total = total + term
        return total

    def specialize(self, assignment: Mapping[VariableRef, Scalar]) -> "MPoly":
        """Set some variables to constants; the ring is unchanged"""
        fixed = {self.ring.index(k): FieldElement.coerce(v) for k, v in assignment.items()}
        out: Dict[Monomial, FieldElement] = {}
        for m, c in self._terms.items():
            new_m = list(m)
            for i, value in fixed.items():
                if m[i]:
                    c = c * value ** m[i]
                    new_m[i] = 0
            if c:
                key = tuple(new_m)
                previous = out.get(key)
                out[key] = c if previous is None else previous + c
        return MPoly._trusted(self.ring, {m: c for m, c in out.items() if c})

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Composition f(images[0], ..., images[n-1]) in the ring of the images"""
        if len(images) != self.ring.ngens:
            raise RingMismatchError(
                f"{len(images)} images given for the {self.ring.ngens} variables of {self.ring}"
            )
        target = images[0].ring if images else self.ring
        for image in images:
            if image.ring != target:
                raise RingMismatchError("substitution images live in different rings")
        powers: Dict[Tuple[int, int], MPoly] = {}

        def power(i: int, e: int) -> MPoly:
            cached = powers.get((i, e))
            if cached is None:
                cached = images[i] if e == 1 else power(i, e - 1) * images[i]
                powers[(i, e)] = cached
            return cached

        result = target.zero()
        for m, c in self._terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def coefficient_extract(
        self, in_vars: Sequence[VariableRef], multidegree: Sequence[int]
    ) -> "MPoly":
        """
        Coefficient of prod(in_vars**multidegree), as a polynomial in the
        remaining variables (same order, same field).
        """
        idx = [self.ring.index(v) for v in in_vars]
        if len(idx) != len(multidegree):
            raise ValueError("multidegree length does not match the variable list")
        rest = [i for i in range(self.ring.ngens) if i not in idx]
        ring = PolyRing([self.ring.names[i] for i in rest], self.ring.order, self.ring.field)
        wanted = tuple(multidegree)
        out: Dict[Monomial, FieldElement] = {}
        for m, c in self._terms.items():
            if tuple(m[i] for i in idx) == wanted:
                out[tuple(m[i] for i in rest)] = c
        return MPoly._trusted(ring, out)

    def multidegrees(self, in_vars: Sequence[VariableRef]) -> List[Tuple[int, ...]]:
        idx = [self.ring.index(v) for v in in_vars]
        return sorted({tuple(m[i] for i in idx) for m in self._terms}, reverse=True)

    def to_ring(self, ring: PolyRing) -> "MPoly":
        """Re-express in another ring, matching variables by name"""
        if ring == self.ring:
            return self
        positions = []
        for i, name in enumerate(self.ring.names):
            if ring.has_variable(name):
                positions.append((i, ring.index(name)))
        mapped = {i for i, _ in positions}
        out: Dict[Monomial, FieldElement] = {}
        for m, c in self._terms.items():
            if any(e and i not in mapped for i, e in enumerate(m)):
                missing = [self.ring.names[i] for i, e in enumerate(m) if e and i not in mapped]
                raise RingMismatchError(f"variables {missing} do not exist in {ring}")
            new_m = [0] * ring.ngens
            for i, j in positions:
                new_m[j] = m[i]
            out[tuple(new_m)] = c
        return MPoly._trusted(ring, out)

    def univariate_coefficients(self, var: VariableRef) -> List[FieldElement]:
        """Dense coefficient list, lowest degree first, of a polynomial in var alone"""
        i = self.ring.index(var)
        if any(e for m in self._terms for k, e in enumerate(m) if k != i):
            raise ValueError(f"{self} is not a polynomial in {self.ring.names[i]} alone")
        coeffs = [ZERO] * (self.degree(i) + 1 if self._terms else 0)
        for m, c in self._terms.items():
            coeffs[m[i]] = c
        return coeffs

    @classmethod
    def from_univariate(
        cls, ring: PolyRing, var: VariableRef, coeffs: Iterable[Scalar]
    ) -> "MPoly":
        i = ring.index(var)
        terms = {}
        for e, c in enumerate(coeffs):
            terms[tuple(e if k == i else 0 for k in range(ring.ngens))] = c
        return cls(ring, terms)

    # text

    def __str__(self) -> str:
        from .polytext import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"MPoly('{self}', {list(self.ring.names)})"


def substitute_linear(f: MPoly, images: Sequence[MPoly]) -> MPoly:
    """f(images); named after its main use, linear changes of coordinates"""
    return f.substitute(images)


def coefficient_extract(
    f: MPoly, in_vars: Sequence[VariableRef], multidegree: Sequence[int]
) -> MPoly:
    return f.coefficient_extract(in_vars, multidegree)


def partial_derivative(f: MPoly, var: VariableRef) -> MPoly:
    return f.derivative(var)
