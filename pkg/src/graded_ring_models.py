"""
Graded Ring Models Module
Hypersurface cones, the weighted hypersurface of genus g and its g-th Veronese subring
"""

import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import sympify
from sympy.polys.domains import ZZ
from sympy.polys.rings import PolyElement, ring

from errors import (
    InhomogeneousError,
    ParameterRangeError,
    RetriesExhaustedError,
    RingMismatchError,
    UnsupportedVariantError,
)
from exact_linear_core import (
    CoefficientField,
    GradedPolyRing,
    PieceBasis,
    Subspace,
    subspace_span,
    weighted_degree,
)

SERIES_RING, T = ring('t', ZZ)

MAX_CHANGE_ATTEMPTS = 8


def series_coefficients(numerator: PolyElement, weights, n_max) -> List[int]:
    """
    Coefficients of numerator(t) / prod(1 - t^w) in degrees 0..n_max.

    Args:
        numerator: polynomial in SERIES_RING
        weights: exponents of the denominator factors
        n_max: last degree kept

    Returns:
        list of n_max + 1 integers
    """
    series = numerator
    for w in weights:
        geometric = SERIES_RING.from_dict({(k * w,): 1 for k in range(n_max // w + 1)})
        series = _truncate(series * geometric, n_max)
    terms = dict(series.items())
    return [int(terms.get((n,), 0)) for n in range(n_max + 1)]


def _truncate(p, n_max):
    return SERIES_RING.from_dict({m: c for m, c in p.items() if m[0] <= n_max})


def artinian_series(d, r) -> List[int]:
    """Hilbert function of k[X,Y,Z]/(f, L, L_{r+1}): (1-t^d)(1-t^{r+1})/(1-t)^2"""
    numerator = (1 - T**d) * (1 - T**(r + 1))
    return series_coefficients(numerator, (1, 1), d + r)


def artinian_tail_sum(d, r, start) -> int:
    """Sum of the artinian series coefficients in degrees >= start"""
    return sum(artinian_series(d, r)[max(start, 0):])


@dataclass(frozen=True)
class RingElement:
    """Normal-form element of a graded ring; degree is None for a mixed element"""

    ring: 'RingPresentation'
    poly: PolyElement
    degree: Optional[int]

    def parts(self) -> Tuple[PolyElement, ...]:
        """Coefficients f_i of x^i in the normal form sum x^i f_i"""
        return self.ring.x_parts(self.poly)

    @property
    def is_zero(self):
        return not self.poly

    def __mul__(self, other):
        return multiply_in_ring(self, other)

    def __add__(self, other):
        self.ring.check_same(other.ring)
        degree = self.degree if self.degree == other.degree else None
        if self.is_zero:
            degree = other.degree
        elif other.is_zero:
            degree = self.degree
        return RingElement(self.ring, self.poly + other.poly, degree)

    def __neg__(self):
        return RingElement(self.ring, -self.poly, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return RingElement(self.ring, self.poly.mul_ground(self.ring.field.domain.convert(c)), self.degree)

    def homogeneous_parts(self) -> Dict[int, 'RingElement']:
        return self.ring.split_by_degree(self.poly)

    def __repr__(self):
        return f"RingElement({self.poly.as_expr()}, degree={self.degree})"


class RingPresentation:
    """
    Graded ring k[x, y, z]/(relation) with the relation monic in x.

    Graded pieces are materialized lazily and cached per degree behind a
    lock; all other state is fixed at construction.
    """

    variant = None
    scale = 1
    generator_degree_bound = 1

    def __init__(self, grading: GradedPolyRing, relation: PolyElement, x_degree: int):
        self.grading = grading
        self.field = grading.field
        self.relation = relation
        self.x_degree = x_degree
        self._pieces: Dict[int, PieceBasis] = {}
        self._series: List[int] = []
        self._lock = threading.Lock()

    @property
    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, RingPresentation) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"{self.variant}{self.key[1:-1]}[{self.field.spec}]"

    def check_same(self, other):
        if other is not self and other != self:
            raise RingMismatchError(f"{self!r} vs {other!r}")

    @property
    def x(self):
        return self.grading.gens[0]

    # --- normal forms ---------------------------------------------------

    def reduce(self, p: PolyElement) -> PolyElement:
        return p.rem(self.relation)

    def x_parts(self, p: PolyElement) -> Tuple[PolyElement, ...]:
        parts = [dict() for _ in range(self.x_degree)]
        for m, c in p.iterterms():
            parts[m[0]][(0,) + m[1:]] = c
        return tuple(self.grading.ring.from_dict(part) for part in parts)

    def split_by_degree(self, p: PolyElement) -> Dict[int, RingElement]:
        pieces: Dict[int, dict] = {}
        for m, c in p.iterterms():
            pieces.setdefault(self._piece_degree(m), {})[m] = c
        return {t: RingElement(self, self.grading.ring.from_dict(terms), t)
                for t, terms in sorted(pieces.items())}

    def _piece_degree(self, monom):
        wdeg = weighted_degree(monom, self.grading.weights)
        if wdeg % self.scale:
            raise InhomogeneousError(f"weighted degree {wdeg} is not a multiple of {self.scale}")
        return wdeg // self.scale

    def element(self, value, homogeneous=True) -> RingElement:
        """Ring element from a polynomial or a text expression"""
        if isinstance(value, str):
            value = self.grading.ring.from_expr(sympify(value))
        return normal_form(value, self, homogeneous=homogeneous)

    def one(self):
        return RingElement(self, self.grading.ring.one, 0)

    def zero(self, degree=None):
        return RingElement(self, self.grading.ring.zero, degree)

    # --- graded pieces ---------------------------------------------------

    def piece_monomials(self, n):
        caps = [self.x_degree] + [None] * (len(self.grading.names) - 1)
        return self.grading.monomials(n * self.scale, caps)

    def ring_basis(self, n) -> PieceBasis:
        """Ordered monomial basis of the n-th graded piece"""
        if n < 0:
            return PieceBasis(self.grading, (), n, self.scale)
        piece = self._pieces.get(n)
        if piece is None:
            with self._lock:
                piece = self._pieces.get(n)
                if piece is None:
                    piece = PieceBasis(self.grading, self.piece_monomials(n), n, self.scale)
                    self._pieces[n] = piece
        return piece

    def basis_elements(self, n) -> List[RingElement]:
        return [RingElement(self, self.grading.monomial(m), n) for m in self.ring_basis(n).monomials]

    def truncated_basis(self, cutoff) -> PieceBasis:
        """Monomial basis of R/R_{>=cutoff}, pieces in increasing degree"""
        monomials = []
        for n in range(cutoff):
            monomials.extend(self.ring_basis(n).monomials)
        return PieceBasis(self.grading, monomials, None, self.scale)

    def multiply_piece(self, space: Subspace, e) -> Subspace:
        """Span of R_e * space inside R_{t+e}"""
        target = self.ring_basis(space.degree + e)
        if space.dim == 0 or e < 0:
            return subspace_span([], target)
        products = [self.reduce(v * self.grading.monomial(m))
                    for m in self.ring_basis(e).monomials for v in space.vectors()]
        return subspace_span(products, target)

    def tail_power_degree(self, start, s) -> Optional[int]:
        """Degree from which (R_{>=start})^s is all of R, if known"""
        return start if s == 1 else None

    # --- Hilbert data -----------------------------------------------------

    def hilbert_numerator(self) -> PolyElement:
        raise NotImplementedError

    def hilbert_weights(self):
        return self.grading.weights

    def hilbert_coeff(self, n) -> int:
        if n < 0:
            return 0
        top = n * self.scale
        if len(self._series) <= top:
            with self._lock:
                if len(self._series) <= top:
                    self._series = series_coefficients(
                        self.hilbert_numerator(), self.hilbert_weights(), max(2 * top, 16)
                    )
        return self._series[top]

    def a_invariant(self) -> int:
        raise NotImplementedError


class StandardHypersurface(RingPresentation):
    """
    Cone k[X,Y,Z]/(f) over a plane curve of degree d.

    Variables are printed lower case (x, y, z are the images of X, Y, Z).
    """

    variant = 'StandardHypersurface'

    def __init__(self, d, f=None, coefficient_field=None, seed=0):
        """
        Args:
            d: degree of the defining form, d >= 3
            f: homogeneous form of degree d (PolyElement or text); Fermat by default
            coefficient_field: CoefficientField, QQ by default
            seed: seed of the coordinate change used when f is not monic in x
        """
        if d < 3:
            raise ParameterRangeError(f"d={d}: plane curve cones need d >= 3")
        coefficient_field = coefficient_field or CoefficientField()
        grading = GradedPolyRing(('x', 'y', 'z'), (1, 1, 1), coefficient_field)
        if f is None:
            coefficient_field.require_coprime(d, "Fermat curve must be smooth")
            x, y, z = grading.gens
            f = x**d + y**d + z**d
        elif isinstance(f, str):
            f = grading.ring.from_expr(sympify(f))
        if grading.degree(f) != d:
            raise InhomogeneousError(f"defining form must be homogeneous of degree {d}")
        f = self._make_monic(grading, f, d, seed)
        super().__init__(grading, f, d)
        self.d = d
        self.seed = seed

    @staticmethod
    def _make_monic(grading, f, d, seed):
        x, y, z = grading.gens
        leading = dict(f.items()).get((d, 0, 0))
        attempt = 0
        rng = np.random.default_rng(seed)
        while not leading:
            if attempt == MAX_CHANGE_ATTEMPTS:
                raise RetriesExhaustedError(seed, attempt)
            a, b = (int(v) for v in rng.integers(-7, 8, size=2))
            f = f.compose([(y, y + x * a), (z, z + x * b)])
            leading = dict(f.items()).get((d, 0, 0))
            attempt += 1
        return f.quo_ground(leading)

    @property
    def key(self):
        return (self.variant, self.d, tuple(sorted(self.relation.items())), self.field.characteristic)

    def __repr__(self):
        return f"StandardHypersurface(d={self.d})[{self.field.spec}]"

    def multiply_piece(self, space: Subspace, e) -> Subspace:
        # standard graded: R_e * W is e rounds of multiplication by the variables
        current = space
        for _ in range(e):
            if current.dim == 0:
                return subspace_span([], self.ring_basis(space.degree + e))
            target = self.ring_basis(current.degree + 1)
            vectors = current.vectors()
            current = subspace_span(
                [self.reduce(v * gen) for gen in self.grading.gens for v in vectors], target
            )
        return current

    def tail_power_degree(self, start, s):
        return start * s

    def hilbert_numerator(self):
        return 1 - T**self.d

    def a_invariant(self):
        return self.d - 3


class VeroHypersurface(RingPresentation):
    """k[x,y,z]/(x^2 + y^(2g+2) + z^(2g+2)) with weights (g+1, 1, 1)"""

    variant = 'VeroHypersurface'

    def __init__(self, g, coefficient_field=None):
        if g < 2:
            raise ParameterRangeError(f"g={g}: the construction needs g >= 2")
        coefficient_field = coefficient_field or CoefficientField()
        coefficient_field.require_coprime(2 * g + 2, "char k must not divide 2g+2")
        grading = GradedPolyRing(('x', 'y', 'z'), (g + 1, 1, 1), coefficient_field)
        x, y, z = grading.gens
        super().__init__(grading, x**2 + y**(2 * g + 2) + z**(2 * g + 2), 2)
        self.g = g
        self.generator_degree_bound = g + 1

    @property
    def key(self):
        return (self.variant, self.g, self.field.characteristic)

    def x_square(self) -> PolyElement:
        """Value of x^2 in k[y,z]"""
        _, y, z = self.grading.gens
        return -(y**(2 * self.g + 2) + z**(2 * self.g + 2))

    def hilbert_numerator(self):
        return 1 - T**(2 * self.g + 2)

    def a_invariant(self):
        return (2 * self.g + 2) - sum(self.grading.weights)


class VeroneseRing(VeroHypersurface):
    """
    The g-th Veronese subring A = R^(g) of VeroHypersurface(g).

    A_n = k[y,z]_{ng} + x k[y,z]_{ng-g-1}; A is generated in degrees 1 and 2.
    """

    variant = 'VeroneseRing'

    def __init__(self, g, coefficient_field=None):
        super().__init__(g, coefficient_field)
        self.scale = g
        self.generator_degree_bound = 2

    def tail_power_degree(self, start, s):
        if s == 1:
            return start
        return start * s if start >= 2 else None

    def a_invariant(self):
        return (self.g - 1) // self.g


def normal_form(p: PolyElement, R: RingPresentation, homogeneous=True) -> RingElement:
    """
    Canonical representative of p modulo the relation.

    Args:
        p: polynomial in R's variables
        R: ring presentation
        homogeneous: when False, mixed-degree elements are allowed (degree None)

    Returns:
        RingElement
    """
    R.grading.check_member(p)
    reduced = R.reduce(p)
    degrees = {R._piece_degree(m) for m in p.itermonoms()} | {R._piece_degree(m) for m in reduced.itermonoms()}
    if len(degrees) > 1 and homogeneous:
        raise InhomogeneousError(f"{p.as_expr()} has parts in degrees {sorted(degrees)}")
    degree = degrees.pop() if len(degrees) == 1 else None
    return RingElement(R, reduced, degree)


def ring_basis(R: RingPresentation, n) -> List[PolyElement]:
    """Monomial basis of R_n as polynomials, in the fixed lex order"""
    return [R.grading.monomial(m) for m in R.ring_basis(n).monomials]


def multiply_in_ring(a: RingElement, b: RingElement, R: Optional[RingPresentation] = None) -> RingElement:
    """Product in R; the Vero variants use the (f0, f1) pair formula"""
    R = R or a.ring
    R.check_same(a.ring)
    R.check_same(b.ring)
    degree = None
    if a.degree is not None and b.degree is not None:
        degree = a.degree + b.degree
    if isinstance(R, VeroHypersurface):
        a0, a1 = a.parts()
        b0, b1 = b.parts()
        c0 = a0 * b0 + a1 * b1 * R.x_square()
        c1 = a0 * b1 + a1 * b0
        return RingElement(R, c0 + R.x * c1, degree)
    return RingElement(R, R.reduce(a.poly * b.poly), degree)


def hilbert_coeff(R: RingPresentation, n) -> int:
    return R.hilbert_coeff(n)


def a_invariant(R: RingPresentation) -> int:
    return R.a_invariant()


def build_ring(family, d=None, g=None, coefficient_field=None, seed=0) -> RingPresentation:
    """Ring presentation by variant name"""
    if family == 'StandardHypersurface':
        return StandardHypersurface(d, coefficient_field=coefficient_field, seed=seed)
    if family == 'VeroHypersurface':
        return VeroHypersurface(g, coefficient_field)
    if family == 'VeroneseRing':
        return VeroneseRing(g, coefficient_field)
    raise UnsupportedVariantError(f"unknown ring variant '{family}'")
