"""
Curve Invariants Module
Closed-form Riemann-Roch data for plane, hyperelliptic and complete-intersection curves
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from scipy.special import comb

from errors import ParameterRangeError, UnsupportedVariantError

CASE_ZE0_ZERO = 'ZE0=0'
CASE_ZE0_NEGATIVE = 'ZE0<0'


def binom(n, k) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return int(comb(n, k, exact=True))


@dataclass(frozen=True)
class PlaneCurve:
    """Smooth plane curve of degree d with D the hyperplane class"""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ParameterRangeError(f"plane curve degree d={self.d} must be >= 1")

    @property
    def genus(self):
        return (self.d - 1) * (self.d - 2) // 2

    @property
    def degree(self):
        return self.d

    @property
    def label(self):
        return f"PlaneCurve(d={self.d})"


@dataclass(frozen=True)
class Hyperelliptic:
    """Hyperelliptic curve of genus g with D = b D0, D0 the g^1_2"""

    g: int
    b: int = 1

    def __post_init__(self):
        if self.g < 2 or self.b < 1:
            raise ParameterRangeError(f"hyperelliptic data g={self.g}, b={self.b} needs g >= 2, b >= 1")

    @property
    def genus(self):
        return self.g

    @property
    def degree(self):
        return 2 * self.b

    @property
    def label(self):
        return f"Hyperelliptic(g={self.g}, b={self.b})"


@dataclass(frozen=True)
class CompleteIntersectionCurve:
    """Complete intersection of hypersurfaces of degrees d_1 <= ... <= d_{n-1} in P^n"""

    degrees: Tuple[int, ...]

    def __post_init__(self):
        if not self.degrees or any(d < 1 for d in self.degrees):
            raise ParameterRangeError(f"degrees {self.degrees} must be positive")
        object.__setattr__(self, 'degrees', tuple(sorted(self.degrees)))

    @property
    def n(self):
        return len(self.degrees) + 1

    @property
    def degree(self):
        return math.prod(self.degrees)

    @property
    def a_invariant(self):
        return sum(self.degrees) - self.n - 1

    @property
    def genus(self):
        return self.degree * self.a_invariant // 2 + 1

    @property
    def label(self):
        return f"CompleteIntersectionCurve{self.degrees}"


CurveModel = Union[PlaneCurve, Hyperelliptic, CompleteIntersectionCurve]


@dataclass(frozen=True)
class Gonality:
    value: int
    exact: bool


@dataclass(frozen=True)
class BoundReport:
    """br bounds of the cone over a curve"""

    curve: str
    genus: int
    gonality: int
    gonality_exact: bool
    case: str
    br_upper_bound: int
    nr_m_prediction: int
    ci_bound: Optional[int] = None

    def to_dict(self):
        return dict(self.__dict__)


def upper_bracket(alpha) -> int:
    """Least integer strictly greater than alpha"""
    return math.floor(Fraction(alpha)) + 1


def h0_h1(C: CurveModel, n) -> Tuple[int, int]:
    """
    (h^0, h^1) of O_C(nD).

    Args:
        C: PlaneCurve (hyperplane class) or Hyperelliptic (D = b D0)
        n: multiple, n >= 0

    Returns:
        tuple (h0, h1)
    """
    if n < 0:
        raise ParameterRangeError(f"n={n} must be nonnegative")
    if isinstance(C, Hyperelliptic):
        m = n * C.b
        if m <= C.g - 1:
            return m + 1, C.g - m
        return 2 * m + 1 - C.g, 0
    if isinstance(C, PlaneCurve):
        d = C.d
        h0 = binom(n + 2, 2) - binom(n - d + 2, 2)
        h1 = binom(d - 1 - n, 2)
        return h0, h1
    raise UnsupportedVariantError(f"h0/h1 not available for {C.label}")


def a_invariant(C: CurveModel) -> int:
    """Largest n with h^1(nD) != 0, i.e. a(R) of the section ring"""
    if isinstance(C, PlaneCurve):
        return C.d - 3
    if isinstance(C, Hyperelliptic):
        return (C.g - 1) // C.b
    return C.a_invariant


def q_k_maximal(C: CurveModel, k) -> int:
    """q(k m) = sum over n >= k of h^1(nD)"""
    return sum(h0_h1(C, n)[1] for n in range(max(k, 0), a_invariant(C) + 1))


def pinkham_pg(C: CurveModel) -> int:
    """p_g of the cone: sum of h^1(nD) for 0 <= n <= a(R)"""
    return q_k_maximal(C, 0)


def gonality(C: CurveModel) -> Gonality:
    if isinstance(C, PlaneCurve):
        return Gonality(max(C.d - 1, 1), True)
    if isinstance(C, Hyperelliptic):
        return Gonality(2, True)
    degrees = C.degrees
    return Gonality(max((degrees[0] - 1) * math.prod(degrees[1:]), 1), False)


def br_bounds(C: CurveModel, case=CASE_ZE0_NEGATIVE, d=None) -> BoundReport:
    """
    br bounds for the cone over C.

    Args:
        C: curve model
        case: CASE_ZE0_ZERO (needs d = -Z_X^2) or CASE_ZE0_NEGATIVE (uses gonality)
        d: divisor degree for the first case

    Returns:
        BoundReport
    """
    genus = C.genus
    gon = gonality(C)
    if case == CASE_ZE0_ZERO:
        if not d:
            raise ParameterRangeError("the ZE0=0 branch needs d = -Z_X^2 > 0")
        main = upper_bracket(Fraction(2 * genus - 2, d)) + 1
    elif case == CASE_ZE0_NEGATIVE:
        main = upper_bracket(Fraction(2 * genus - 2, gon.value)) + 1
    else:
        raise UnsupportedVariantError(f"unknown case '{case}'")
    ci_bound = None
    if isinstance(C, CompleteIntersectionCurve):
        a = C.a_invariant
        ci_bound = a + upper_bracket(Fraction(a, max(C.degrees[0] - 1, 1))) + 1
    return BoundReport(C.label, genus, gon.value, gon.exact, case, main, a_invariant(C) + 2, ci_bound)


def pg_blowdown(d, r) -> Optional[int]:
    """
    p_g of the cone blown down from the star graph, when it is a closed form.

    deg floor(nD) = d * floor(n(r+1)/r) exceeds 2g-2 for all n >= 1 only for
    (d <= 4, r = 1) and d = 3; then only the n = 0 term survives and p_g = g.
    Elsewhere None ("indeterminate").
    """
    if d < 3 or r < 1:
        raise ParameterRangeError(f"pg_blowdown needs d >= 3, r >= 1 (got d={d}, r={r})")
    genus = PlaneCurve(d).genus
    smallest = d * ((r + 1) // r)
    if smallest > 2 * genus - 2:
        return genus
    return None


@dataclass(frozen=True)
class BlowupPrediction:
    """Closed-form invariants of I = (L) + m^(r+1) on the degree-d cone"""

    d: int
    r: int
    pg: int
    q_value: int
    nr: int
    br: int
    colength: int
    pg_ideal: bool


def blowup_closed_form(d, r) -> BlowupPrediction:
    """q(I) adds d-r-1 per step in r and stops changing at r = d-1"""
    if d < 3 or r < 1:
        raise ParameterRangeError(f"blowup family needs d >= 3, r >= 1 (got d={d}, r={r})")
    effective = min(r, d - 1)
    q_value = binom(d - 1, 3) + effective * (2 * d - effective - 3) // 2
    stable = -(-(d - 1) // (r + 1))
    return BlowupPrediction(d, r, pinkham_pg(PlaneCurve(d)), q_value, stable, stable,
                            d * (r + 1), r >= d - 2)
