"""
Polynomial text and JSON forms

Grammar (whitespace-insensitive, implicit multiplication is an error):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*       division only by nonzero constants
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | 'w' | IDENT | '(' expr ')'

The printer emits terms in decreasing monomial order with normalized signs,
so printing is canonical and parse(print(f)) == f.
"""

import re
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

from .errors import FieldMismatchError, ParseError, UnknownVariableError
from .field import OMEGA, CoefficientField, FieldElement, parse_field_element
from .poly import MPoly, PolyRing

# largest exponent accepted in polynomial text
MAX_EXPONENT = 64

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<pow>\^|\*\*)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character '{text[pos]}'", pos)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing, field: CoefficientField):
        self.tokens = tokenize(text)
        self.index = 0
        self.ring = ring
        self.field = field

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.kind in ("op", "pow") and self.current.text == text:
            self.index += 1
            return True
        return False

    def parse(self) -> MPoly:
        if self.current.kind == "end":
            raise ParseError("empty expression", 0)
        result = self.expr()
        token = self.current
        if token.kind != "end":
            if token.kind in ("int", "ident") or token.text == "(":
                raise ParseError("implicit multiplication is not allowed; use '*'", token.position)
            raise ParseError(f"unexpected '{token.text}'", token.position)
        return result

    def expr(self) -> MPoly:
        result = self.term()
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> MPoly:
        result = self.unary()
        while True:
            if self.accept("*"):
                result = result * self.unary()
            elif self.current.text == "/" and self.current.kind == "op":
                position = self.advance().position
                divisor = self.unary()
                if not divisor.is_constant() or divisor.is_zero():
                    raise ParseError("division is only allowed by a nonzero constant", position)
                result = result.scale(divisor.constant_value().inverse())
            else:
                return result

    def unary(self) -> MPoly:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        if self.current.kind == "pow":
            self.advance()
            token = self.current
            if token.kind != "int":
                raise ParseError("exponent must be a nonnegative integer", token.position)
            self.advance()
            exponent = int(token.text)
            if exponent > MAX_EXPONENT:
                raise ParseError(f"exponent {exponent} exceeds the limit of {MAX_EXPONENT}", token.position)
            return base ** exponent
        return base

    def atom(self) -> MPoly:
        token = self.advance()
        if token.kind == "int":
            return self.ring.constant(int(token.text))
        if token.kind == "ident":
            if token.text == "w":
                if self.field == CoefficientField.Q:
                    raise FieldMismatchError("'w' is not available over Q", token.position)
                return self.ring.constant(OMEGA)
            if not self.ring.has_variable(token.text):
                raise UnknownVariableError(token.text, token.position)
            return self.ring.gen(token.text)
        if token.kind == "op" and token.text == "(":
            inner = self.expr()
            if not self.accept(")"):
                raise ParseError("missing ')'", self.current.position)
            return inner
        if token.kind == "end":
            raise ParseError("unexpected end of input", token.position)
        raise ParseError(f"unexpected '{token.text}'", token.position)


def parse_poly(text: str, ring: PolyRing, field: Optional[CoefficientField] = None) -> MPoly:
    """Parse text in the polynomial grammar into an element of ring"""
    return _Parser(text, ring, field or ring.field).parse()


def parse_constant(text: str, field: CoefficientField = CoefficientField.QW) -> FieldElement:
    value = parse_poly(text, PolyRing((), field=field), field)
    return value.constant_value()


def _monomial_text(ring: PolyRing, m: Sequence[int]) -> str:
    factors = []
    for name, e in zip(ring.names, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def _term_text(c: FieldElement, monomial: str):
    """Return (negative, text) for one term"""
    if c.is_rational():
        negative = c.a < 0
        magnitude = abs(c.a)
        if not monomial:
            return negative, str(magnitude)
        if magnitude == 1:
            return negative, monomial
        return negative, f"{magnitude}*{monomial}"
    if c.a == 0:
        negative = c.b < 0
        magnitude = abs(c.b)
        text = "w" if magnitude == 1 else f"{magnitude}*w"
        return negative, f"{text}*{monomial}" if monomial else text
    negative = c.a < 0
    shown = -c if negative else c
    text = f"({shown})"
    return negative, f"{text}*{monomial}" if monomial else text


def format_poly(f: MPoly) -> str:
    """Canonical text: decreasing order, ' + ' / ' - ' separators"""
    if f.is_zero():
        return "0"
    parts: List[str] = []
    for m, c in f.sorted_terms():
        negative, text = _term_text(c, _monomial_text(f.ring, m))
        if not parts:
            parts.append(f"-{text}" if negative else text)
        else:
            parts.append(f" - {text}" if negative else f" + {text}")
    return "".join(parts)


def poly_to_json(f: MPoly) -> List[Dict[str, Any]]:
    """[{"exponents": [...], "coeff": "a/b+c/d*w"}, ...] in decreasing order"""
    return [{"exponents": list(m), "coeff": str(c)} for m, c in f.sorted_terms()]


def poly_from_json(
    data: Sequence[Dict[str, Any]], ring: PolyRing, field: Optional[CoefficientField] = None
) -> MPoly:
    field = field or ring.field
    if not isinstance(data, (list, tuple)):
        raise ParseError("polynomial JSON must be a list of terms")
    terms: Dict[tuple, FieldElement] = {}
    for position, item in enumerate(data):
        if not isinstance(item, dict) or "exponents" not in item or "coeff" not in item:
            raise ParseError("each term needs 'exponents' and 'coeff'", position)
        exponents = item["exponents"]
        if (
            not isinstance(exponents, list)
            or len(exponents) != ring.ngens
            or not all(isinstance(e, int) and e >= 0 for e in exponents)
        ):
            raise ParseError(f"bad exponent vector {exponents!r} for {ring}", position)
        coeff = parse_field_element(str(item["coeff"]), field)
        key = tuple(exponents)
        terms[key] = terms.get(key, FieldElement(0)) + coeff
    return MPoly(ring, terms)
