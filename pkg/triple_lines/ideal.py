"""
Groebner bases and zero-dimensional solving over Q(w)

Buchberger's algorithm with the Gebauer-Moeller criteria and the normal
selection strategy, reduced bases, Krull dimension from leading monomials,
exact univariate root finding in Q(w) and a solver for ideals with finitely
many solutions.
"""

import heapq
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .config import DEFAULT_SETTINGS, GroebnerBudget, SolverSettings
from .errors import (
    GroebnerBudgetError,
    InternalConsistencyError,
    NotZeroDimensionalError,
    RingMismatchError,
    TriangularityError,
)
from .field import ONE, UNITS, ZERO, EisensteinInt, FieldElement, eis_divisors
from .linalg import mat_vec, random_invertible_matrix
from .logging_config import get_logger
from .poly import (
    Monomial,
    MonomialOrder,
    MPoly,
    PolyRing,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

logger = get_logger(__name__)

Point = Tuple[FieldElement, ...]


class Ideal:
    """Finitely generated ideal; zero generators are dropped"""

    def __init__(self, generators: Sequence[MPoly], ring: Optional[PolyRing] = None):
        generators = list(generators)
        if ring is None:
            if not generators:
                raise ValueError("an ideal without generators needs an explicit ring")
            ring = generators[0].ring
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} is not in {ring}")
        self.ring = ring
        self.generators: Tuple[MPoly, ...] = tuple(g for g in generators if g)

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def with_order(self, order: MonomialOrder) -> "Ideal":
        if order == self.ring.order:
            return self
        ring = self.ring.with_order(order)
        return Ideal([g.to_ring(ring) for g in self.generators], ring)

    def extended(self, polys: Sequence[MPoly]) -> "Ideal":
        return Ideal(list(self.generators) + list(polys), self.ring)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"Ideal({[str(g) for g in self.generators]})"


# reduction


def _reduce(f: MPoly, reducers: Sequence[MPoly]) -> MPoly:
    """Full multivariate division remainder of f by reducers"""
    if not f or not reducers:
        return f
    ring = f.ring
    heap_key = ring.heap_key
    leads = [(g.lm, g.lc.inverse(), g) for g in reducers]
    p: Dict[Monomial, FieldElement] = dict(f.terms)
    heap = [(heap_key(m), m) for m in p]
    heapq.heapify(heap)
    remainder: Dict[Monomial, FieldElement] = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        for lm_g, lc_inv, g in leads:
            if monomial_divides(lm_g, m):
                shift = monomial_div(m, lm_g)
                factor = c * lc_inv
                for mg, cg in g.terms.items():
                    if mg == lm_g:
                        continue
                    mm = monomial_mul(mg, shift)
                    delta = factor * cg
                    old = p.get(mm)
                    if old is None:
                        p[mm] = -delta
                        heapq.heappush(heap, (heap_key(mm), mm))
                    else:
                        new = old - delta
                        if new:
                            p[mm] = new
                        else:
                            del p[mm]
                break
        else:
            remainder[m] = c
    return MPoly._trusted(ring, remainder)


def s_polynomial(f: MPoly, g: MPoly) -> MPoly:
    lcm = monomial_lcm(f.lm, g.lm)
    return f.mul_term(monomial_div(lcm, f.lm), f.lc.inverse()) - g.mul_term(
        monomial_div(lcm, g.lm), g.lc.inverse()
    )


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, inter-reduced, sorted by leading monomial"""

    elements: Tuple[MPoly, ...]
    ring: PolyRing

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.elements)

    def leading_monomials(self) -> List[Monomial]:
        return [g.lm for g in self.elements]

    def reduce(self, f: MPoly) -> MPoly:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} does not match the basis ring {self.ring}")
        return _reduce(f, self.elements)

    def contains(self, f: MPoly) -> bool:
        return self.reduce(f).is_zero()

    def verify(self) -> bool:
        """Re-check that every S-polynomial reduces to zero"""
        for f, g in combinations(self.elements, 2):
            if self.reduce(s_polynomial(f, g)):
                return False
        return True

    def independent_set(self) -> Tuple[int, ...]:
        """A largest set of variables containing the support of no leading monomial"""
        n = self.ring.ngens
        supports = [frozenset(i for i, e in enumerate(m) if e) for m in self.leading_monomials()]
        for size in range(n, -1, -1):
            for subset in combinations(range(n), size):
                chosen = frozenset(subset)
                if not any(s <= chosen for s in supports):
                    return subset
        return ()

    def dimension(self) -> int:
        """Krull dimension of the quotient; -1 for the unit ideal"""
        if self.is_unit():
            return -1
        return len(self.independent_set())

    def is_zero_dimensional(self) -> bool:
        if self.is_unit():
            return False
        lms = self.leading_monomials()
        for i in range(self.ring.ngens):
            if not any(m[i] and sum(m) == m[i] for m in lms):
                return False
        return True

    def standard_monomials(self, limit: Optional[int] = None) -> List[Monomial]:
        """Monomials outside the leading-term ideal (finite for zero-dimensional ideals)"""
        if not self.is_zero_dimensional():
            raise NotZeroDimensionalError("the quotient ring is infinite dimensional")
        limit = limit or GroebnerBudget().max_quotient_dim
        lms = self.leading_monomials()
        n = self.ring.ngens
        start = (0,) * n
        seen: Set[Monomial] = {start}
        queue = [start]
        while queue:
            m = queue.pop()
            for i in range(n):
                nxt = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if nxt in seen or any(monomial_divides(lm, nxt) for lm in lms):
                    continue
                seen.add(nxt)
                if len(seen) > limit:
                    raise GroebnerBudgetError(f"quotient dimension exceeds {limit}")
                queue.append(nxt)
        return sorted(seen, key=self.ring.key)

    def quotient_dimension(self) -> int:
        """Number of solutions counted with multiplicity"""
        return len(self.standard_monomials())


# Buchberger


class _PairQueue:
    """Critical pairs with normal selection: smallest lcm first"""

    def __init__(self, ring: PolyRing):
        self.heap_key = ring.key
        self.heap: List[Tuple[Tuple[int, ...], int, int]] = []
        self.pairs: Dict[Tuple[int, int], Monomial] = {}

    def add(self, i: int, j: int, lcm: Monomial) -> None:
        self.pairs[(i, j)] = lcm
        heapq.heappush(self.heap, (self.heap_key(lcm), i, j))

    def pop(self) -> Optional[Tuple[int, int]]:
        while self.heap:
            _, i, j = heapq.heappop(self.heap)
            if self.pairs.pop((i, j), None) is not None:
                return i, j
        return None

    def discard_if(self, predicate) -> None:
        for pair in [p for p, lcm in self.pairs.items() if predicate(p, lcm)]:
            del self.pairs[pair]


def _update(basis: List[MPoly], lms: List[Monomial], queue: _PairQueue, f: MPoly, key) -> None:
    """Add f to the basis, pruning pairs with the Gebauer-Moeller criteria"""
    lmf = f.lm
    k = len(basis)

    def redundant(pair, lcm):
        i, j = pair
        return (
            monomial_divides(lmf, lcm)
            and lcm != monomial_lcm(lms[i], lmf)
            and lcm != monomial_lcm(lms[j], lmf)
        )

    queue.discard_if(redundant)

    groups: Dict[Monomial, List[int]] = {}
    for i, lm in enumerate(lms):
        groups.setdefault(monomial_lcm(lm, lmf), []).append(i)
    kept: List[Monomial] = []
    for lcm in sorted(groups, key=key):
        if all(not monomial_divides(other, lcm) for other in kept):
            kept.append(lcm)
    for lcm in kept:
        members = groups[lcm]
        # product criterion: coprime leading monomials give a zero S-polynomial
        if not any(lcm == monomial_mul(lms[i], lmf) for i in members):
            queue.add(min(members), k, lcm)

    basis.append(f)
    lms.append(lmf)


def _finish(ring: PolyRing, basis: List[MPoly]) -> GroebnerBasis:
    if any(g.is_constant() for g in basis):
        return GroebnerBasis((ring.one(),), ring)
    minimal: List[MPoly] = []
    for g in sorted(basis, key=lambda h: ring.key(h.lm)):
        if all(not monomial_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        reduced.append(_reduce(g, others).monic())
    reduced.sort(key=lambda h: ring.key(h.lm))
    return GroebnerBasis(tuple(reduced), ring)


def _buchberger(
    ring: PolyRing, known: Sequence[MPoly], new: Sequence[MPoly], budget: GroebnerBudget
) -> GroebnerBasis:
    basis: List[MPoly] = list(known)
    lms: List[Monomial] = [g.lm for g in basis]
    queue = _PairQueue(ring)
    key = ring.key

    for f in sorted(new, key=lambda h: key(h.lm)):
        r = _reduce(f, basis)
        if not r:
            continue
        if r.is_constant():
            return GroebnerBasis((ring.one(),), ring)
        _update(basis, lms, queue, r.monic(), key)

    processed = 0
    while True:
        pair = queue.pop()
        if pair is None:
            break
        processed += 1
        if processed > budget.max_pairs:
            raise GroebnerBudgetError(f"more than {budget.max_pairs} critical pairs")
        i, j = pair
        r = _reduce(s_polynomial(basis[i], basis[j]), basis)
        if not r:
            continue
        if r.is_constant():
            return GroebnerBasis((ring.one(),), ring)
        _update(basis, lms, queue, r.monic(), key)
        if len(basis) > budget.max_basis_size:
            raise GroebnerBudgetError(f"basis grew beyond {budget.max_basis_size} elements")

    logger.debug("buchberger_done", ring=list(ring.names), pairs=processed, size=len(basis))
    return _finish(ring, basis)


def groebner(I: Ideal, budget: Optional[GroebnerBudget] = None) -> GroebnerBasis:
    """Reduced Groebner basis of I for the order of its ring"""
    budget = budget or GroebnerBudget()
    if not I.generators:
        return GroebnerBasis((), I.ring)
    G = _buchberger(I.ring, [], I.generators, budget)
    for g in I.generators:
        if G.reduce(g):
            raise InternalConsistencyError(f"generator {g} does not reduce to zero")
    return G


def extend(G: GroebnerBasis, polys: Sequence[MPoly], budget: Optional[GroebnerBudget] = None) -> GroebnerBasis:
    """Basis of G + (polys), restarting Buchberger from the known basis"""
    budget = budget or GroebnerBudget()
    if G.is_unit():
        return G
    return _buchberger(G.ring, list(G.elements), list(polys), budget)


def normal_form(f: MPoly, G: GroebnerBasis) -> MPoly:
    return G.reduce(f)


def dimension(G: GroebnerBasis) -> int:
    return G.dimension()


# univariate polynomials as dense coefficient lists, lowest degree first


def _trim(p: List[FieldElement]) -> List[FieldElement]:
    while p and not p[-1]:
        p = p[:-1]
    return p


def _monic(p: List[FieldElement]) -> List[FieldElement]:
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _divmod(a: List[FieldElement], b: List[FieldElement]):
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    inv = b[-1].inverse()
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        shift = len(a) - len(b)
        c = a[-1] * inv
        q[shift] = c
        for k, bc in enumerate(b):
            a[shift + k] = a[shift + k] - c * bc
        a = a[:-1]
    return _trim(q), _trim(a)


def _gcd(a: List[FieldElement], b: List[FieldElement]) -> List[FieldElement]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a) if a else a


def _derivative(p: List[FieldElement]) -> List[FieldElement]:
    return _trim([c * k for k, c in enumerate(p)][1:])


def _evaluate(p: List[FieldElement], x: FieldElement) -> FieldElement:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _divide_by_root(p: List[FieldElement], r: FieldElement) -> List[FieldElement]:
    """Synthetic division by (x - r); r must be a root"""
    out = [ZERO] * (len(p) - 1)
    carry = ZERO
    for k in range(len(p) - 1, 0, -1):
        carry = carry * r + p[k]
        out[k - 1] = carry
    return out


def _candidate_roots(p: List[FieldElement]) -> List[FieldElement]:
    """Rational root test in Z[w]: unit * (divisor of p(0)) / (divisor of leading coefficient)"""
    if len(p) == 2:
        return [-p[0] / p[1]]
    scale = 1
    for c in p:
        d = c.denominator
        scale = scale * d // math.gcd(scale, d)
    integral = [EisensteinInt.from_field(c * scale) for c in p]
    constant_divisors = eis_divisors(integral[0])
    leading_divisors = eis_divisors(integral[-1])
    candidates: Set[FieldElement] = set()
    for dc in constant_divisors:
        for dl in leading_divisors:
            base = dc.to_field() / dl.to_field()
            for u in UNITS:
                candidates.add(base * u.to_field())
    return sorted(candidates, key=FieldElement.sort_key)


@dataclass(frozen=True)
class UnivariateRoots:
    roots: Tuple[Tuple[FieldElement, int], ...]
    unresolved: Optional[MPoly] = None

    @property
    def values(self) -> List[FieldElement]:
        return [r for r, _ in self.roots]


def univariate_roots(p: MPoly) -> UnivariateRoots:
    """All roots in Q(w) with multiplicity, plus the monic cofactor without such roots"""
    support = p.support()
    if len(support) > 1:
        raise ValueError(f"{p} is not univariate")
    if not support:
        return UnivariateRoots(())
    var = support[0]
    coeffs = p.univariate_coefficients(var)
    roots: List[Tuple[FieldElement, int]] = []
    zero_multiplicity = next(k for k, c in enumerate(coeffs) if c)
    if zero_multiplicity:
        roots.append((ZERO, zero_multiplicity))
    rest = _monic(coeffs[zero_multiplicity:])
    if len(rest) > 1:
        square_free = _divmod(rest, _gcd(rest, _derivative(rest)))[0]
        for r in _candidate_roots(square_free):
            if _evaluate(square_free, r):
                continue
            multiplicity = 0
            while len(rest) > 1 and not _evaluate(rest, r):
                rest = _divide_by_root(rest, r)
                multiplicity += 1
            roots.append((r, multiplicity))
    unresolved = MPoly.from_univariate(p.ring, var, rest) if len(rest) > 1 else None
    roots.sort(key=lambda item: item[0].sort_key())
    return UnivariateRoots(tuple(roots), unresolved)


def minimal_polynomial(
    G: GroebnerBasis, var, budget: Optional[GroebnerBudget] = None
) -> MPoly:
    """Monic generator of I ∩ K[var] for a zero-dimensional I, by linear algebra on normal forms"""
    budget = budget or GroebnerBudget()
    if not G.is_zero_dimensional():
        raise NotZeroDimensionalError("minimal polynomials need a zero-dimensional ideal")
    ring = G.ring
    i = ring.index(var)
    x = ring.gen(i)
    key = ring.key
    rows: List[Tuple[Dict[Monomial, FieldElement], Dict[int, FieldElement]]] = []
    pivots: Dict[Monomial, int] = {}
    current = G.reduce(ring.one())
    for k in range(budget.max_quotient_dim + 1):
        vec = dict(current.terms)
        combo: Dict[int, FieldElement] = {k: ONE}
        lead = None
        while vec:
            lead = max(vec, key=key)
            r = pivots.get(lead)
            if r is None:
                break
            row_vec, row_combo = rows[r]
            factor = vec[lead] / row_vec[lead]
            for m, c in row_vec.items():
                value = vec.get(m, ZERO) - factor * c
                if value:
                    vec[m] = value
                else:
                    vec.pop(m, None)
            for power, c in row_combo.items():
                value = combo.get(power, ZERO) - factor * c
                if value:
                    combo[power] = value
                else:
                    combo.pop(power, None)
        if not vec:
            coefficients = [combo.get(power, ZERO) for power in range(k + 1)]
            return MPoly.from_univariate(ring, i, coefficients).monic()
        pivots[lead] = len(rows)
        rows.append((vec, combo))
        current = G.reduce(current * x)
    raise GroebnerBudgetError(f"quotient dimension exceeds {budget.max_quotient_dim}")


# solving


@dataclass(frozen=True)
class SolutionSet:
    """Q(w)-points of a zero-dimensional ideal and the factors left without roots"""

    ring: PolyRing
    points: Tuple[Point, ...]
    unresolved: Tuple[MPoly, ...] = ()

    @property
    def complete(self) -> bool:
        return not self.unresolved

    def __len__(self) -> int:
        return len(self.points)


def _point_key(point: Point):
    return tuple(x.sort_key() for x in point)


def _linear_value(G: GroebnerBasis, i: int) -> Optional[FieldElement]:
    unit = G.ring.unit(i)
    for g in G.elements:
        if g.lm == unit and all(not any(m) for m in g.terms if m != unit):
            return -g.coefficient((0,) * G.ring.ngens)
    return None


def _solve_by_elimination(G: GroebnerBasis, budget: GroebnerBudget):
    ring = G.ring
    points: List[Point] = []
    unresolved: List[MPoly] = []

    def descend(basis: GroebnerBasis, pending: List[int]) -> None:
        if not pending:
            points.append(tuple(_linear_value(basis, i) for i in range(ring.ngens)))
            return
        i = pending[0]
        value = _linear_value(basis, i)
        if value is not None:
            values = [value]
        else:
            found = univariate_roots(minimal_polynomial(basis, i, budget))
            if found.unresolved is not None:
                unresolved.append(found.unresolved)
            values = found.values
        x = ring.gen(i)
        for r in values:
            branch = extend(basis, [x - r], budget)
            if not branch.is_unit():
                descend(branch, pending[1:])

    descend(G, list(reversed(range(ring.ngens))))
    return points, unresolved


class _NotTriangular(Exception):
    pass


def _back_substitute(G: GroebnerBasis):
    ring = G.ring
    n = ring.ngens
    levels = [[g for g in G.elements if all(i >= k for i in g.support())] for k in range(n)]
    points: List[Point] = []
    unresolved: List[MPoly] = []

    def descend(k: int, partial: Dict[int, FieldElement]) -> None:
        if k < 0:
            points.append(tuple(partial[i] for i in range(n)))
            return
        specialized = [g.specialize(partial) for g in levels[k]]
        specialized = [s for s in specialized if s]
        if not specialized:
            raise _NotTriangular(f"no univariate constraint on {ring.names[k]}")
        h = specialized[0].univariate_coefficients(k)
        for s in specialized[1:]:
            h = _gcd(h, s.univariate_coefficients(k))
        h = _trim(h)
        if len(h) <= 1:
            return
        found = univariate_roots(MPoly.from_univariate(ring, k, h))
        if found.unresolved is not None:
            unresolved.append(found.unresolved)
        for r in found.values:
            descend(k - 1, {**partial, k: r})

    descend(n - 1, {})
    return points, unresolved


def _solve_lex(I: Ideal, settings: SolverSettings):
    ring = I.ring.with_order(MonomialOrder.LEX)
    generators = [g.to_ring(ring) for g in I.generators]
    rng = np.random.default_rng(settings.seed)
    matrix = None
    for attempt in range(settings.max_retries + 1):
        if matrix is None:
            current = generators
        else:
            images = [ring.linear_form(row) for row in matrix]
            current = [g.substitute(images) for g in generators]
        G = groebner(Ideal(current, ring), settings.budget)
        if G.is_unit():
            return [], []
        if not G.is_zero_dimensional():
            raise NotZeroDimensionalError("the ideal has infinitely many solutions")
        try:
            points, unresolved = _back_substitute(G)
            if matrix is not None:
                points = [tuple(mat_vec(matrix, p)) for p in points]
            for p in points:
                if any(g.evaluate(p) for g in generators):
                    raise _NotTriangular("spurious extension")
            return points, unresolved
        except _NotTriangular as exc:
            logger.info("lex_retry", attempt=attempt, reason=str(exc))
            matrix = random_invertible_matrix(rng, ring.ngens)
    raise TriangularityError(f"back-substitution failed after {settings.max_retries} retries")


def solve_zero_dim(I: Ideal, settings: SolverSettings = DEFAULT_SETTINGS) -> SolutionSet:
    """All Q(w)-solutions of a zero-dimensional ideal, each verified exactly"""
    if settings.method == "lex":
        points, unresolved = _solve_lex(I, settings)
    else:
        G = groebner(I.with_order(MonomialOrder.GREVLEX), settings.budget)
        if G.is_unit():
            return SolutionSet(I.ring, ())
        if not G.is_zero_dimensional():
            raise NotZeroDimensionalError("the ideal has infinitely many solutions")
        points, unresolved = _solve_by_elimination(G, settings.budget)

    distinct = sorted(set(points), key=_point_key)
    for p in distinct:
        for g in I.generators:
            if g.evaluate(p):
                raise InternalConsistencyError(f"solution {p} does not satisfy {g}")
    unresolved_polys = tuple(u.to_ring(I.ring) for u in unresolved)
    return SolutionSet(I.ring, tuple(distinct), unresolved_polys)
