"""
Ideal Engine Module
Homogeneous ideals as graded subspaces: powers, products, quotient lengths,
minimal reductions and colengths
"""

import threading
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from errors import (
    ContainmentError,
    InhomogeneousError,
    NonStabilizedError,
    ParameterRangeError,
    RetriesExhaustedError,
)
from exact_linear_core import (
    PieceBasis,
    Subspace,
    full_subspace,
    subspace_contains,
    subspace_span,
    zero_subspace,
)
from graded_ring_models import RingElement, RingPresentation

DEFAULT_WINDOW = 4
MAX_SAMPLING_ATTEMPTS = 8
COEFFICIENT_RANGE = 10_000

ComponentFn = Callable[[int], Subspace]


class GradedIdeal:
    """
    Homogeneous ideal generated by elements and, optionally, a tail R_{>=N}.

    Components of powers are cached per (s, t); the cache is append-only.
    """

    def __init__(self, ring: RingPresentation, generators: List[RingElement],
                 tail_degree: Optional[int] = None, name='I'):
        """
        Args:
            ring: ambient graded ring
            generators: homogeneous generators
            tail_degree: N when R_{>=N} is contained in the ideal
            name: label used in reports
        """
        for gen in generators:
            ring.check_same(gen.ring)
            if gen.degree is None:
                raise InhomogeneousError(f"generator {gen!r} is not homogeneous")
        if not generators and tail_degree is None:
            raise ParameterRangeError("an ideal needs generators or a tail")
        self.ring = ring
        self.generators = [gen for gen in generators if not gen.is_zero]
        self.tail_degree = tail_degree
        self.name = name
        self._cache: Dict[Tuple[int, int], Subspace] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"GradedIdeal({self.name}, {self.ring!r})"

    @property
    def min_degree(self):
        degrees = [gen.degree for gen in self.generators]
        if self.tail_degree is not None:
            degrees.append(self.tail_degree)
        return min(degrees)

    @property
    def max_generator_degree(self):
        degrees = [gen.degree for gen in self.generators]
        if self.tail_degree is not None:
            degrees.append(self.tail_degree + self.ring.generator_degree_bound - 1)
        return max(degrees)

    def full_from(self, s) -> Optional[int]:
        """Degree from which (I^s)_t = R_t is known a priori"""
        if self.tail_degree is None:
            return None
        return self.ring.tail_power_degree(self.tail_degree, s)

    def component(self, t) -> Subspace:
        return self.power_component(1, t)

    def power_component(self, s, t) -> Subspace:
        """Degree-t piece of I^s"""
        if s < 0:
            raise ParameterRangeError(f"power s={s} must be nonnegative")
        basis = self.ring.ring_basis(t)
        if t < 0:
            return zero_subspace(basis)
        if s == 0:
            return full_subspace(basis)
        cached = self._cache.get((s, t))
        if cached is not None:
            return cached
        result = self._compute_power_component(s, t, basis)
        with self._lock:
            self._cache.setdefault((s, t), result)
        return result

    def _compute_power_component(self, s, t, basis: PieceBasis) -> Subspace:
        if t < s * self.min_degree:
            return zero_subspace(basis)
        full_from = self.full_from(s)
        if full_from is not None and t >= full_from:
            return full_subspace(basis)
        span = zero_subspace(basis)
        for gen in self.generators:
            inner = self.power_component(s - 1, t - gen.degree)
            if inner.dim == 0:
                continue
            span = span.join(element_times_space(gen, inner, basis))
            if span.is_full:
                return span
        if self.tail_degree is not None:
            top = self.tail_degree + self.ring.generator_degree_bound
            for e in range(self.tail_degree, top):
                inner = self.power_component(s - 1, t - e)
                if inner.dim == 0:
                    continue
                span = span.join(self.ring.multiply_piece(inner, e))
                if span.is_full:
                    return span
        return span


def element_times_space(element: RingElement, space: Subspace, target: PieceBasis) -> Subspace:
    ring = element.ring
    return subspace_span([ring.reduce(element.poly * v) for v in space.vectors()], target)


def ideal_component(I: GradedIdeal, t) -> Subspace:
    return I.component(t)


def ideal_power_component(I: GradedIdeal, s, t) -> Subspace:
    if s < 1:
        raise ParameterRangeError("ideal_power_component needs s >= 1")
    return I.power_component(s, t)


def multiply_component(I: GradedIdeal, J: GradedIdeal, t) -> Subspace:
    """Degree-t piece of the product ideal I*J"""
    I.ring.check_same(J.ring)
    basis = I.ring.ring_basis(t)
    span = zero_subspace(basis)
    for gen in I.generators:
        span = span.join(element_times_space(gen, J.component(t - gen.degree), basis))
    if I.tail_degree is not None:
        for e in range(I.tail_degree, I.tail_degree + I.ring.generator_degree_bound):
            inner = J.component(t - e)
            if inner.dim:
                span = span.join(I.ring.multiply_piece(inner, e))
    return span


@dataclass(frozen=True)
class ParameterPair:
    """Two elements generating a parameter ideal Q; mixed-degree elements allowed"""

    q1: RingElement
    q2: RingElement

    @property
    def ring(self):
        return self.q1.ring

    @property
    def elements(self):
        return (self.q1, self.q2)

    @property
    def is_homogeneous(self):
        return self.q1.degree is not None and self.q2.degree is not None

    @property
    def min_degrees(self):
        return tuple(min(q.homogeneous_parts()) for q in self.elements)

    def describe(self):
        return tuple(str(q.poly.as_expr()) for q in self.elements)


def pair_product_component(Q: ParameterPair, inner: ComponentFn, t) -> Subspace:
    """(Q * J)_t = q1 J_{t-deg q1} + q2 J_{t-deg q2} for homogeneous Q"""
    basis = Q.ring.ring_basis(t)
    span = zero_subspace(basis)
    for q in Q.elements:
        piece = inner(t - q.degree)
        if piece.dim:
            span = span.join(element_times_space(q, piece, basis))
    return span


def quotient_length(numerator: ComponentFn, denominator: ComponentFn, t_max, window=DEFAULT_WINDOW, t_min=0) -> int:
    """
    Length of a graded quotient N/D summed degree by degree.

    Args:
        numerator: degree -> Subspace of N
        denominator: degree -> Subspace of D, contained in N
        t_max: last degree summed
        window: number of trailing degrees that must contribute 0
        t_min: first degree summed

    Returns:
        sum over t of dim N_t - dim D_t
    """
    total = 0
    quiet = 0
    last_nonzero = t_min - 1
    for t in range(t_min, t_max + 1):
        top = numerator(t)
        bottom = denominator(t)
        if bottom.dim and top.join(bottom).dim != top.dim:
            raise ContainmentError(t)
        difference = top.dim - bottom.dim
        total += difference
        if difference:
            quiet = 0
            last_nonzero = t
        else:
            quiet += 1
    if quiet < window:
        raise NonStabilizedError(last_nonzero)
    return total


def _truncate(ring: RingPresentation, poly, cutoff):
    return ring.grading.ring.from_dict(
        {m: c for m, c in poly.iterterms() if ring._piece_degree(m) < cutoff}
    )


def _truncated_products(Q: ParameterPair, inner: ComponentFn, cutoff):
    ring = Q.ring
    products = []
    for q, low in zip(Q.elements, Q.min_degrees):
        for t in range(cutoff - low):
            for v in inner(t).vectors():
                product = _truncate(ring, ring.reduce(q.poly * v), cutoff)
                if product:
                    products.append(product)
    return products


def truncated_quotient_length(numerator: ComponentFn, Q: ParameterPair, inner: ComponentFn, cutoff,
                              check_containment=True) -> int:
    """
    dim of J/(QJ' + R_{>=cutoff}) for a possibly mixed Q.

    J is given degreewise by numerator, J' by inner.
    """
    basis = Q.ring.truncated_basis(cutoff)
    pieces = [numerator(t) for t in range(cutoff)]
    top_dim = sum(piece.dim for piece in pieces)
    products = _truncated_products(Q, inner, cutoff)
    bottom = subspace_span(products, basis)
    if check_containment and bottom.dim:
        top = [v for piece in pieces for v in piece.vectors()]
        if subspace_span(top + products, basis).dim != top_dim:
            raise ContainmentError(cutoff, f"Q J' is not inside J below degree {cutoff}")
    return top_dim - bottom.dim


def truncated_membership(z: RingElement, Q: ParameterPair, inner: ComponentFn, cutoff) -> bool:
    """Is z in QJ' + R_{>=cutoff}? A False answer proves z is not in QJ'"""
    basis = Q.ring.truncated_basis(cutoff)
    span = subspace_span(_truncated_products(Q, inner, cutoff), basis)
    return subspace_contains(span, _truncate(Q.ring, z.poly, cutoff))[0]


def reduction_quotient_length(numerator: ComponentFn, Q: ParameterPair, inner: ComponentFn,
                              t_max=None, window=DEFAULT_WINDOW, full_from=0, check_containment=True) -> int:
    """
    Length of J/QJ' for homogeneous ideals J, J' and a reduction Q.

    Homogeneous Q is summed degree by degree up to t_max. A mixed Q is
    measured in the truncations R/R_{>=N}: the value is accepted at the
    first N >= full_from where it agrees with the value at N + 1 (J then
    contains R_{>=N} and R_{>=N} lies in QJ' + m R_{>=N}).
    """
    if Q.is_homogeneous:
        if t_max is None:
            raise ParameterRangeError("homogeneous lengths need t_max")
        return quotient_length(numerator, lambda t: pair_product_component(Q, inner, t), t_max, window)
    start = max(full_from, Q.ring.generator_degree_bound)
    previous = truncated_quotient_length(numerator, Q, inner, start, check_containment)
    for cutoff in range(start + 1, start + 2 * window + 2):
        current = truncated_quotient_length(numerator, Q, inner, cutoff, check_containment)
        if current == previous:
            return current
        previous = current
    raise NonStabilizedError(cutoff, f"truncated length still moving at cutoff {cutoff}")


def colength(Q: ParameterPair, window=DEFAULT_WINDOW) -> int:
    """ell(R/Q); infinite colength surfaces as NonStabilizedError"""
    ring = Q.ring
    full = lambda t: full_subspace(ring.ring_basis(t))
    if Q.is_homogeneous:
        socle = ring.a_invariant() + Q.q1.degree + Q.q2.degree
        return quotient_length(full, lambda t: pair_product_component(Q, full, t), socle + window, window)
    return reduction_quotient_length(full, Q, full, window=window)


def multiplicity(Q: ParameterPair, window=DEFAULT_WINDOW) -> int:
    """e(Q) = ell(R/Q) in the Cohen-Macaulay rings modelled here"""
    return colength(Q, window)


def contains_pair(I: GradedIdeal, Q: ParameterPair) -> bool:
    for q in Q.elements:
        for t, part in q.homogeneous_parts().items():
            if not subspace_contains(I.component(t), part.poly)[0]:
                return False
    return True


def is_reduction_certificate(Q: ParameterPair, I: GradedIdeal, s, window=DEFAULT_WINDOW) -> bool:
    """True iff Q is inside I, has finite colength and I^{s+1} = Q I^s"""
    if not contains_pair(I, Q):
        return False
    try:
        colength(Q, window)
        numerator = lambda t: I.power_component(s + 1, t)
        inner = lambda t: I.power_component(s, t)
        t_max = (s + 1) * I.max_generator_degree + I.ring.a_invariant() + window
        full_from = I.full_from(s + 1) or 0
        return reduction_quotient_length(numerator, Q, inner, t_max, window, full_from) == 0
    except (NonStabilizedError, ContainmentError):
        return False


def _random_combination(vectors, ring, rng, degree):
    field = ring.field
    poly = ring.grading.ring.zero
    for v in vectors:
        poly += v.mul_ground(field(int(rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1))))
    return RingElement(ring, poly, degree)


def _pool_degrees(I: GradedIdeal):
    """Lowest generator degree and the degree the second element is drawn from"""
    degrees = sorted({gen.degree for gen in I.generators} | ({I.tail_degree} if I.tail_degree is not None else set()))
    first = degrees[0]
    if I.component(first).dim >= 2 or len(degrees) == 1:
        return first, first
    return first, degrees[1]


def sample_minimal_reduction(I: GradedIdeal, seed=0, s=1, attempts=MAX_SAMPLING_ATTEMPTS,
                             window=DEFAULT_WINDOW) -> ParameterPair:
    """
    Random 2-generated reduction of I, certified by I^{s+1} = Q I^s.

    Homogeneous draws come from I's lowest degrees; after the homogeneous
    attempts fail, mixed draws combine the two lowest pieces.
    """
    rng = np.random.default_rng(seed)
    ring = I.ring
    e1, e2 = _pool_degrees(I)
    pool1 = I.component(e1).vectors()
    pool2 = I.component(e2).vectors()
    for _ in range(attempts):
        q1 = _random_combination(pool1, ring, rng, e1)
        q2 = _random_combination(pool2, ring, rng, e2)
        Q = ParameterPair(q1, q2)
        if is_reduction_certificate(Q, I, s, window):
            return Q
    for _ in range(attempts):
        q1 = _random_combination(pool1, ring, rng, e1) + _random_combination(pool2, ring, rng, e2)
        q2 = _random_combination(pool1, ring, rng, e1) + _random_combination(pool2, ring, rng, e2)
        Q = ParameterPair(q1, q2)
        if is_reduction_certificate(Q, I, s, window):
            return Q
    raise RetriesExhaustedError(seed, 2 * attempts)
