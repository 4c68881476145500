"""
Lines in P^4

Spanning pairs, the ten Pluecker coordinates in the fixed order
p01, p02, p03, p04, p12, p13, p14, p23, p24, p34, and the lex stratification
of G(1,4): a line lies in stratum (i,j) when p_ij is its first nonzero
coordinate. Each stratum carries an affine chart whose six unknowns are the
normalized Pluecker coordinates of the line.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .errors import GeometryError, NonDecomposableError, ParseError, RankDeficientError
from .field import ONE, ZERO, CoefficientField, FieldElement, parse_field_element
from .linalg import rank, rref
from .poly import MPoly, MonomialOrder, PolyRing

PLUECKER_PAIRS: Tuple[Tuple[int, int], ...] = tuple(combinations(range(5), 2))
PAIR_INDEX: Dict[Tuple[int, int], int] = {pair: k for k, pair in enumerate(PLUECKER_PAIRS)}


def pair_name(i: int, j: int) -> str:
    a, b = min(i, j), max(i, j)
    return f"p{a}{b}"


@dataclass(frozen=True)
class LineSpan:
    """Two points of P^4 spanning a line"""

    v0: Tuple[FieldElement, ...]
    v1: Tuple[FieldElement, ...]

    def __post_init__(self):
        v0 = tuple(FieldElement.coerce(x) for x in self.v0)
        v1 = tuple(FieldElement.coerce(x) for x in self.v1)
        if len(v0) != 5 or len(v1) != 5:
            raise GeometryError("a spanning vector of a line in P^4 has 5 coordinates")
        if rank([list(v0), list(v1)]) != 2:
            raise RankDeficientError("the two vectors do not span a line")
        object.__setattr__(self, "v0", v0)
        object.__setattr__(self, "v1", v1)

    def rows(self) -> List[List[FieldElement]]:
        return [list(self.v0), list(self.v1)]

    def point(self, t0, t1) -> Tuple[FieldElement, ...]:
        t0, t1 = FieldElement.coerce(t0), FieldElement.coerce(t1)
        return tuple(t0 * a + t1 * b for a, b in zip(self.v0, self.v1))

    def row_reduced(self) -> "LineSpan":
        reduced, _ = rref(self.rows())
        return LineSpan(tuple(reduced[0]), tuple(reduced[1]))

    def same_line(self, other: "LineSpan") -> bool:
        return pluecker_from_span(self).projective_key() == pluecker_from_span(other).projective_key()

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in v) for v in (self.v0, self.v1))


@dataclass(frozen=True)
class PlueckerCoords:
    coords: Tuple[FieldElement, ...]

    def __post_init__(self):
        coords = tuple(FieldElement.coerce(x) for x in self.coords)
        if len(coords) != 10:
            raise GeometryError(f"expected 10 Pluecker coordinates, got {len(coords)}")
        if not any(coords):
            raise GeometryError("all Pluecker coordinates vanish")
        object.__setattr__(self, "coords", coords)

    def __getitem__(self, pair: Tuple[int, int]) -> FieldElement:
        i, j = pair
        if i == j:
            return ZERO
        if i < j:
            return self.coords[PAIR_INDEX[(i, j)]]
        return -self.coords[PAIR_INDEX[(j, i)]]

    def relations(self) -> List[FieldElement]:
        """Values of the five Grassmann-Pluecker quadrics"""
        p = self.__getitem__
        return [
            p((a, b)) * p((c, d)) - p((a, c)) * p((b, d)) + p((a, d)) * p((b, c))
            for a, b, c, d in combinations(range(5), 4)
        ]

    def is_decomposable(self) -> bool:
        return not any(self.relations())

    def first_nonzero(self) -> Tuple[int, int]:
        for pair, value in zip(PLUECKER_PAIRS, self.coords):
            if value:
                return pair
        raise GeometryError("all Pluecker coordinates vanish")

    def normalized(self) -> "PlueckerCoords":
        """Scale so the first nonzero coordinate is 1"""
        inv = self.coords[PAIR_INDEX[self.first_nonzero()]].inverse()
        return PlueckerCoords(tuple(c * inv for c in self.coords))

    def projective_key(self) -> Tuple[FieldElement, ...]:
        return self.normalized().coords

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


@dataclass(frozen=True, order=True)
class Stratum:
    i: int
    j: int

    def __post_init__(self):
        if not 0 <= self.i < self.j <= 4:
            raise GeometryError(f"({self.i},{self.j}) is not a Pluecker index pair")

    @property
    def free_dimension(self) -> int:
        return 7 - self.i - self.j

    @property
    def pair(self) -> Tuple[int, int]:
        return (self.i, self.j)

    @property
    def complement(self) -> Tuple[int, ...]:
        return tuple(k for k in range(5) if k not in (self.i, self.j))

    def earlier_pairs(self) -> Tuple[Tuple[int, int], ...]:
        return PLUECKER_PAIRS[: PAIR_INDEX[self.pair]]

    @classmethod
    def parse(cls, text: str) -> "Stratum":
        try:
            i, j = (int(part) for part in text.replace("(", "").replace(")", "").split(","))
        except ValueError as exc:
            raise ParseError(f"stratum must look like 'i,j', got '{text}'") from exc
        if not 0 <= i < j <= 4:
            raise ParseError(f"stratum ({i},{j}) is not a Pluecker index pair")
        return cls(i, j)

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


ALL_STRATA: Tuple[Stratum, ...] = tuple(Stratum(i, j) for i, j in PLUECKER_PAIRS)


def pluecker_from_span(L: LineSpan) -> PlueckerCoords:
    v0, v1 = L.v0, L.v1
    return PlueckerCoords(tuple(v0[i] * v1[j] - v0[j] * v1[i] for i, j in PLUECKER_PAIRS))


def stratum_of(P: PlueckerCoords) -> Stratum:
    return Stratum(*P.first_nonzero())


@dataclass(frozen=True)
class StratumChart:
    """
    Row-reduced parameterization of one stratum.

    v0 has a 1 at column i and v1 a 1 at column j; the other six entries are
    signed chart unknowns named after the Pluecker coordinate they equal once
    p_ij = 1. The constraints are the lex-earlier coordinates, which must
    vanish on the stratum.
    """

    stratum: Stratum
    ring: PolyRing
    v0: Tuple[MPoly, ...]
    v1: Tuple[MPoly, ...]
    constraints: Tuple[MPoly, ...]
    variable_pairs: Tuple[Tuple[int, int], ...]

    def pluecker_polys(self) -> List[MPoly]:
        return [self.v0[a] * self.v1[b] - self.v0[b] * self.v1[a] for a, b in PLUECKER_PAIRS]

    def line_at(self, values: Sequence) -> LineSpan:
        point = [FieldElement.coerce(v) for v in values]
        return LineSpan(
            tuple(f.evaluate(point) for f in self.v0), tuple(f.evaluate(point) for f in self.v1)
        )

    def chart_point(self, L: LineSpan) -> Tuple[FieldElement, ...]:
        """Chart unknowns of a line, which must lie in this stratum"""
        P = pluecker_from_span(L)
        if stratum_of(P) != self.stratum:
            raise GeometryError(f"the line lies in stratum {stratum_of(P)}, not {self.stratum}")
        normal = P.normalized()
        return tuple(normal[pair] for pair in self.variable_pairs)


def stratum_parameterization(S: Stratum, order: MonomialOrder = MonomialOrder.GREVLEX) -> StratumChart:
    i, j = S.pair
    others = S.complement
    pairs = sorted({tuple(sorted((i, k))) for k in others} | {tuple(sorted((j, k))) for k in others})
    pairs.sort(key=lambda pair: PAIR_INDEX[pair])
    ring = PolyRing([pair_name(*pair) for pair in pairs], order)
    var = {pair: ring.gen(pair_name(*pair)) for pair in pairs}

    def signed(a: int, b: int) -> MPoly:
        # chart unknown for p_ab with a != b, honouring antisymmetry
        return var[(a, b)] if a < b else -var[(b, a)]

    v0 = [ring.zero()] * 5
    v1 = [ring.zero()] * 5
    v0[i] = ring.one()
    v1[j] = ring.one()
    for k in others:
        v0[k] = signed(k, j)
        v1[k] = signed(i, k)

    chart = StratumChart(S, ring, tuple(v0), tuple(v1), (), tuple(pairs))
    minors = chart.pluecker_polys()
    constraints = tuple(minors[PAIR_INDEX[pair]] for pair in S.earlier_pairs() if minors[PAIR_INDEX[pair]])
    return StratumChart(S, ring, tuple(v0), tuple(v1), constraints, tuple(pairs))


def span_from_pluecker(P: PlueckerCoords) -> LineSpan:
    """Row-reduced spanning pair with pivots at the stratum's index pair"""
    if not P.is_decomposable():
        raise NonDecomposableError("the Pluecker relations fail; this is not a line")
    S = stratum_of(P)
    chart = stratum_parameterization(S)
    normal = P.normalized()
    L = chart.line_at([normal[pair] for pair in chart.variable_pairs])
    if pluecker_from_span(L).coords != normal.coords:
        raise NonDecomposableError("the coordinates do not come from a line")
    return L


def _split_vector(text: str, length: int, field: CoefficientField) -> Tuple[FieldElement, ...]:
    parts = [part for part in text.split(",")]
    if len(parts) != length:
        raise ParseError(f"expected {length} comma-separated coordinates, got {len(parts)} in '{text}'")
    return tuple(parse_field_element(part.strip(), field) for part in parts)


def parse_span(text: str, field: CoefficientField = CoefficientField.QW) -> LineSpan:
    """'a0,a1,a2,a3,a4;b0,b1,b2,b3,b4'"""
    rows = text.split(";")
    if len(rows) != 2:
        raise ParseError(f"a line span is two ';'-separated vectors, got '{text}'")
    return LineSpan(_split_vector(rows[0], 5, field), _split_vector(rows[1], 5, field))


def parse_pluecker(text: str, field: CoefficientField = CoefficientField.QW) -> PlueckerCoords:
    """Ten comma-separated coordinates in the order p01,...,p34"""
    return PlueckerCoords(_split_vector(text, 10, field))


def standard_line() -> LineSpan:
    e = [[ONE if k == i else ZERO for k in range(5)] for i in range(2)]
    return LineSpan(tuple(e[0]), tuple(e[1]))
