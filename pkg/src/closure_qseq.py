"""
Closure and q-Sequence Module
Integral-closure filtrations of the studied families, membership certificates,
and reconstruction of q(nI), nr(I), br(I) from quotient lengths
"""

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from checks import Check, equality_check, predicate_check, require
from curve_invariants import (
    CASE_ZE0_NEGATIVE,
    CASE_ZE0_ZERO,
    Hyperelliptic,
    PlaneCurve,
    binom,
    br_bounds,
    pg_blowdown,
    pinkham_pg,
)
from errors import (
    DegreeMismatchError,
    InvariantViolation,
    NonStabilizedError,
    ParameterRangeError,
    RingMismatchError,
    UnsupportedVariantError,
)
from exact_linear_core import (
    CoefficientField,
    Subspace,
    full_subspace,
    solve_in_span,
    subspace_contains,
    subspace_span,
    zero_subspace,
)
from graded_ring_models import (
    RingElement,
    RingPresentation,
    StandardHypersurface,
    VeroHypersurface,
    VeroneseRing,
)
from ideal_engine import (
    DEFAULT_WINDOW,
    GradedIdeal,
    ParameterPair,
    colength,
    contains_pair,
    quotient_length,
    reduction_quotient_length,
    sample_minimal_reduction,
    truncated_membership,
)

DEFAULT_UMAX = 6


class ClosureFamily:
    """
    An ideal together with an exact description of its closure filtration.

    Subclasses supply the graded pieces of the n-th closure, p_g of the
    ring, a proven upper bound for br, and the degree window used when
    summing lengths.
    """

    name = 'family'

    def __init__(self, ring: RingPresentation, ideal: GradedIdeal):
        self.ring = ring
        self.ideal = ideal

    def params(self) -> Dict[str, object]:
        return {}

    @property
    def label(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.name}({inner})"

    def closure_component(self, n, t) -> Subspace:
        """Integrally closed powers: the closure is the power itself"""
        return self.ideal.power_component(n, t)

    def p_g(self) -> int:
        raise NotImplementedError

    def br_bound(self) -> int:
        """Proven upper bound for br(I)"""
        return self.p_g() + 1

    def length_t_max(self, n, window) -> int:
        """Last degree summed for ell(closure^{n+1} / Q closure^n)"""
        return (n + 1) * self.ideal.max_generator_degree + self.ring.a_invariant() + window

    def full_from(self, n) -> int:
        return self.ideal.full_from(n) or 0

    def reduction(self, seed=0, window=DEFAULT_WINDOW) -> ParameterPair:
        return sample_minimal_reduction(self.ideal, seed, s=self.br_bound(), window=window)

    def blowdown_pg(self) -> Optional[int]:
        return None

    def extras(self, Q: ParameterPair, window) -> List[Check]:
        """Family-specific checks appended to a full run"""
        return []


class MaximalIdealCone(ClosureFamily):
    """m = R_+ of a degree-d hypersurface cone; closure of m^n is R_{>=n}"""

    name = 'MaximalIdealCone'

    def __init__(self, ring: StandardHypersurface):
        if not isinstance(ring, StandardHypersurface):
            raise UnsupportedVariantError("MaximalIdealCone needs a StandardHypersurface")
        super().__init__(ring, GradedIdeal(ring, [], tail_degree=1, name='m'))

    def params(self):
        return {'d': self.ring.d}

    def closure_component(self, n, t):
        basis = self.ring.ring_basis(t)
        return full_subspace(basis) if t >= n and t >= 0 else zero_subspace(basis)

    def p_g(self):
        return pinkham_pg(PlaneCurve(self.ring.d))

    def br_bound(self):
        return br_bounds(PlaneCurve(self.ring.d), CASE_ZE0_NEGATIVE).br_upper_bound

    def length_t_max(self, n, window):
        return (n + 1) + self.ring.a_invariant() + window

    def full_from(self, n):
        return n


class TailIdealFamily(ClosureFamily):
    """I = (f) + R_{>=N} on a hypersurface cone; every power is integrally closed"""

    name = 'TailIdealFamily'

    def __init__(self, ring: StandardHypersurface, f: RingElement, N):
        if not isinstance(ring, StandardHypersurface):
            raise UnsupportedVariantError(f"{self.name} needs a StandardHypersurface")
        if f.degree is None or f.degree < 1:
            raise ParameterRangeError("f must be homogeneous of positive degree")
        if N <= f.degree:
            raise ParameterRangeError(f"N={N} must exceed deg f={f.degree}")
        super().__init__(ring, GradedIdeal(ring, [f], tail_degree=N, name='(f)+R>=N'))
        self.f = f
        self.N = N

    def params(self):
        return {'d': self.ring.d, 'deg_f': self.f.degree, 'N': self.N}

    def p_g(self):
        return pinkham_pg(PlaneCurve(self.ring.d))


class BlowupFamily(TailIdealFamily):
    """I_{Z_r} = (L) + m^(r+1) for a general linear form L"""

    name = 'BlowupFamily'

    def __init__(self, ring: StandardHypersurface, r, L: Optional[RingElement] = None, seed=0):
        if r < 1:
            raise ParameterRangeError(f"r={r} must be >= 1")
        if L is None:
            rng = np.random.default_rng(seed)
            coefficients = [int(c) for c in rng.integers(1, 1000, size=3)]
            x, y, z = ring.grading.gens
            L = ring.element(x * coefficients[0] + y * coefficients[1] + z * coefficients[2])
        if L.degree != 1:
            raise ParameterRangeError("L must be a linear form")
        super().__init__(ring, L, r + 1)
        self.r = r

    def params(self):
        return {'d': self.ring.d, 'r': self.r}

    def br_bound(self):
        return br_bounds(PlaneCurve(self.ring.d), CASE_ZE0_ZERO, d=self.ring.d).br_upper_bound

    def length_t_max(self, n, window):
        # top socle degree of R/(L, L_{r+1})
        return self.ring.d + self.r - 1 + window

    def blowdown_pg(self):
        return pg_blowdown(self.ring.d, self.r)


class VeroFamily(ClosureFamily):
    """
    I = (y^g, y^(g-1) z) + A_{>=2} in the g-th Veronese subring.

    The closure of I^n is I^n for n <= g and I^n + x y^(g^2-1) I^(n-g-1)
    from n = g+1 on, which is what the recursion closure^n = Q closure^(n-1)
    (n > g+1) produces from closure^(g+1) = I^(g+1) + (x y^(g^2-1)).
    """

    name = 'VeroFamily'

    def __init__(self, g, coefficient_field: Optional[CoefficientField] = None, inject_fault=False):
        ring = VeroneseRing(g, coefficient_field)
        _, y, z = ring.grading.gens
        generators = [ring.element(y**g), ring.element(y**(g - 1) * z)]
        super().__init__(ring, GradedIdeal(ring, generators, tail_degree=2, name='I'))
        self.g = g
        self.inject_fault = inject_fault
        self.extra_element = ring.element(ring.x * y**(g * g - 1))

    def params(self):
        return {'g': self.g}

    def fixed_reduction(self) -> ParameterPair:
        _, y, z = self.ring.grading.gens
        g = self.g
        return ParameterPair(
            self.ring.element(y**g - z**(2 * g), homogeneous=False),
            self.ring.element(y**(g - 1) * z),
        )

    def reduction(self, seed=0, window=DEFAULT_WINDOW):
        return self.fixed_reduction()

    def closure_component(self, n, t):
        g = self.g
        power = self.ideal.power_component(n, t)
        if n <= g or self.inject_fault:
            return power
        inner = self.ideal.power_component(n - g - 1, t - g - 1)
        if inner.dim == 0 or power.is_full:
            return power
        extra = [self.ring.reduce(self.extra_element.poly * v) for v in inner.vectors()]
        return power.join(subspace_span(extra, power.basis))

    def p_g(self):
        return pinkham_pg(Hyperelliptic(self.g, self.g))

    def br_bound(self):
        return br_bounds(Hyperelliptic(self.g), CASE_ZE0_NEGATIVE).br_upper_bound

    def full_from(self, n):
        return 2 * n

    def extras(self, Q, window):
        g = self.g
        ring = self.ring
        full = lambda t: full_subspace(ring.ring_basis(t))
        ideal_colength = quotient_length(full, self.ideal.component, self.ideal.max_generator_degree + window, window)
        q_colength = colength(Q, window)
        i_squared = reduction_quotient_length(
            lambda t: self.ideal.power_component(2, t), Q, self.ideal.component,
            window=window, full_from=4, check_containment=False,
        )
        certificate = integral_dependence_certificate(self.extra_element, self.ideal, g + 1, 2)
        outside = not truncated_membership(
            self.extra_element, Q, lambda t: self.closure_component(g, t), g + 2
        )
        return [
            equality_check('vero.ideal_colength', "ell(A/I) = g", ideal_colength, g),
            equality_check('vero.reduction_colength', "ell(A/Q) = 4g-2", q_colength, 4 * g - 2),
            equality_check('vero.reduction_number', "ell(I^2/QI) = 0", i_squared, 0),
            predicate_check('vero.closure_certificate', "x y^(g^2-1) integral over I^(g+1) at u=2",
                            certificate is not None and certificate.u == 2,
                            None if certificate is None else certificate.u),
            predicate_check('vero.non_membership', "x y^(g^2-1) not in Q closure(I^g)", outside, outside),
            equality_check('vero.multiplicity', "e(I) = ell(A/Q)", q_colength, 4 * g - 2),
        ]


@dataclass(frozen=True)
class DependenceCertificate:
    """z^u + c_1 z^(u-1) + ... + c_u = 0 with c_j in (I^(sj))_(tj)"""

    z: RingElement
    s: int
    u: int
    coefficients: Tuple[RingElement, ...]


def closure_component(F: ClosureFamily, n, t) -> Subspace:
    if n < 1:
        raise ParameterRangeError(f"closure index n={n} must be >= 1")
    return F.closure_component(n, t)


def _power(z: RingElement, k):
    result = z.ring.one()
    for _ in range(k):
        result = result * z
    return result


def integral_dependence_certificate(z: RingElement, I: GradedIdeal, s, u_max=DEFAULT_UMAX) -> Optional[DependenceCertificate]:
    """
    Search for an equation of integral dependence of z over I^s.

    For u = 1..u_max solves -z^u in sum_j z^(u-j) (I^(sj))_(tj). None means
    no certificate at depth u_max, which does not prove non-membership.
    """
    t = z.degree
    if t is None or t < s * I.min_degree:
        raise DegreeMismatchError(f"z of degree {t} cannot lie in the closure of I^{s}")
    ring = z.ring
    powers = [ring.one()]
    for _ in range(u_max):
        powers.append(powers[-1] * z)
    for u in range(1, u_max + 1):
        vectors = []
        labels = []
        for j in range(1, u + 1):
            piece = I.power_component(s * j, t * j)
            for w in piece.vectors():
                vectors.append(ring.reduce(powers[u - j].poly * w))
                labels.append((j, w))
        target = -powers[u].poly
        solution = solve_in_span(vectors, target, ring.ring_basis(u * t))
        if solution is None:
            continue
        coefficients = [ring.grading.ring.zero for _ in range(u)]
        for a, (j, w) in zip(solution, labels):
            if a:
                coefficients[j - 1] += w.mul_ground(a)
        certificate = DependenceCertificate(
            z, s, u, tuple(RingElement(ring, c, t * (j + 1)) for j, c in enumerate(coefficients))
        )
        _verify_certificate(certificate)
        return certificate
    return None


def _verify_certificate(certificate: DependenceCertificate):
    z = certificate.z
    total = _power(z, certificate.u)
    for j, c in enumerate(certificate.coefficients, start=1):
        total = total + c * _power(z, certificate.u - j)
    if not total.is_zero:
        raise InvariantViolation('closure.certificate', "certificate does not evaluate to zero")


@dataclass(frozen=True)
class MembershipVerdict:
    verdict: str
    reason: str


def vero_membership_filter(z: RingElement, n, family: Optional[VeroFamily] = None) -> MembershipVerdict:
    """
    Necessary conditions for z = f0 + x f1 in A_n to lie in the closure of I^n.

    The closure is sigma-stable, so z is a member iff f0 and x f1 are.
    f0 is a member iff f0 is in I^n; x f1 needs n >= g+1 and the top power
    of z in f1 at most n - (g+1).
    """
    if not isinstance(z.ring, VeroneseRing):
        raise RingMismatchError("the filter is defined on the Veronese subring only")
    if z.degree != n:
        raise DegreeMismatchError(f"z has degree {z.degree}, not {n}")
    family = family or VeroFamily(z.ring.g, z.ring.field)
    g = family.g
    f0, f1 = z.parts()
    if f1:
        if n <= g:
            return MembershipVerdict('reject', f"x-part present in degree n={n} <= g={g}")
        top_z = max(m[2] for m in f1.itermonoms())
        if top_z > n - (g + 1):
            return MembershipVerdict('reject', f"x-part has z^{top_z} above the bound {n - g - 1}")
    if f0 and not subspace_contains(family.ideal.power_component(n, n), f0)[0]:
        return MembershipVerdict('reject', "pure part is not in I^n")
    if not f1:
        return MembershipVerdict('accept', "pure part lies in I^n")
    return MembershipVerdict('undecided', "x-part passes the z-power bound")


def sigma_conjugate(z: RingElement) -> RingElement:
    """Involution x -> -x fixing y and z"""
    if not isinstance(z.ring, VeroHypersurface):
        raise UnsupportedVariantError("sigma is defined on the Vero rings only")
    f0, f1 = z.parts()
    return RingElement(z.ring, f0 - z.ring.x * f1, z.degree)


@dataclass(frozen=True)
class ValuationSpec:
    """Monomial valuation v(sum c_e X^e) = min over terms of <w, e>"""

    weights: Tuple[int, ...]

    def __post_init__(self):
        for w in self.weights:
            if isinstance(w, bool) or not isinstance(w, (int, np.integer)) or w < 0:
                raise ParameterRangeError(f"valuation weights must be non-negative integers, got {self.weights}")
        object.__setattr__(self, 'weights', tuple(int(w) for w in self.weights))

    def value(self, p) -> Optional[int]:
        poly = p.poly if isinstance(p, RingElement) else p
        if not poly:
            return None
        if poly.ring.ngens != len(self.weights):
            raise ParameterRangeError("one valuation weight per variable is required")
        return min(sum(w * e for w, e in zip(self.weights, m)) for m in poly.itermonoms())

    def validate(self, samples: Sequence[Tuple[object, object]]) -> bool:
        """Check v(ab) = v(a) + v(b) and v(a+b) >= min on sample pairs"""
        for a, b in samples:
            va, vb = self.value(a), self.value(b)
            if va is None or vb is None:
                continue
            if self.value(a * b) != va + vb:
                return False
            vsum = self.value(a + b)
            if vsum is not None and vsum < min(va, vb):
                return False
        return True


def valuation_membership_test(x, f, s, valuations: Sequence[ValuationSpec]) -> bool:
    """True iff v(x) >= s v(f) for every valuation"""
    for v in valuations:
        vx = v.value(x)
        if vx is None:
            continue
        vf = v.value(f)
        if vf is None or vx < s * vf:
            return False
    return True


@dataclass
class QSequenceReport:
    """p_g, the lengths L(n), the q(nI) sequence and the reduction numbers"""

    family: str
    params: Dict[str, object]
    p_g: int
    lengths: Tuple[int, ...]
    q: Tuple[int, ...]
    nr: int
    br: int
    q_inf: int
    n_max: int
    field: str = 'rationals'
    reduction: Tuple[str, ...] = ()
    tail_certified: bool = True
    checks: List[Check] = dc_field(default_factory=list)
    notes: List[str] = dc_field(default_factory=list)

    def L(self, n) -> int:
        if n < 1:
            raise ParameterRangeError("L(n) is defined for n >= 1")
        return self.lengths[n - 1] if n <= self.n_max else 0

    def q_at(self, n) -> int:
        return self.q[n] if n < len(self.q) else self.q_inf

    @property
    def checks_passed(self):
        return all(check.passed for check in self.checks)

    def to_dict(self):
        return {
            'family': self.family,
            'params': dict(self.params),
            'field': self.field,
            'p_g': self.p_g,
            'lengths': list(self.lengths),
            'q': list(self.q),
            'nr': self.nr,
            'br': self.br,
            'q_inf': self.q_inf,
            'n_max': self.n_max,
            'reduction': list(self.reduction),
            'tail_certified': self.tail_certified,
            'checks': [check.to_dict() for check in self.checks],
            'notes': list(self.notes),
        }


def q_sequence_from_lengths(p_g, L: Sequence[int], n_max=None, family='lengths', params=None) -> QSequenceReport:
    """
    Rebuild q(nI) from p_g and L(n) = ell(closure^{n+1} / Q closure^n).

    Args:
        p_g: geometric genus q(0I)
        L: L(1), ..., L(n_max); L(n) = 0 beyond n_max is assumed
        n_max: number of lengths used (defaults to len(L))

    Returns:
        QSequenceReport
    """
    n_max = len(L) if n_max is None else n_max
    lengths = tuple(int(v) for v in L[:n_max])
    if len(lengths) < n_max or n_max < 1:
        raise ParameterRangeError(f"need L(1..{n_max}), got {len(lengths)} values")
    if any(v < 0 for v in lengths):
        raise ParameterRangeError(f"lengths must be nonnegative: {lengths}")
    if lengths[-1] != 0:
        raise NonStabilizedError(n_max, f"L({n_max}) = {lengths[-1]} is not 0")
    # D(n) = sum_{m > n} L(m)
    tails = [sum(lengths[n:]) for n in range(n_max + 1)]
    q = [p_g]
    for n in range(1, n_max + 1):
        q.append(q[-1] - tails[n - 1])
        if q[-1] < 0:
            raise InvariantViolation('qseq.nonnegative', f"q({n}) = {q[-1]} < 0")
    nr = next(n for n in range(1, n_max + 1) if lengths[n - 1] == 0)
    br = next(n for n in range(1, n_max + 1) if tails[n - 1] == 0)
    return QSequenceReport(family, dict(params or {}), p_g, lengths, tuple(q), nr, br, q[-1], n_max)


def nr_br_from_q(q: Sequence[int], q_inf=None) -> Tuple[int, int]:
    """nr and br read off the q sequence through first and second differences"""
    q = list(q)
    q_inf = q[-1] if q_inf is None else q_inf
    at = lambda n: q[n] if n < len(q) else q_inf
    nr = next(n for n in range(1, len(q) + 2) if at(n - 1) - at(n) == at(n) - at(n + 1))
    br = next(n for n in range(1, len(q) + 2) if at(n - 1) == at(n))
    return nr, br


def lengths_from_q(q: Sequence[int], n_max=None) -> List[int]:
    """L(n) = q(n+1) + q(n-1) - 2 q(n) for n = 1..n_max"""
    q = list(q)
    n_max = len(q) - 1 if n_max is None else n_max
    at = lambda n: q[n] if n < len(q) else q[-1]
    return [at(n + 1) + at(n - 1) - 2 * at(n) for n in range(1, n_max + 1)]


def report_invariant_checks(report: QSequenceReport) -> List[Check]:
    q = report.q
    nr_q, br_q = nr_br_from_q(q, report.q_inf)
    second = [q[n + 1] + q[n - 1] - 2 * q[n] for n in range(1, report.n_max)]
    return [
        equality_check('qseq.q0', "q(0) = p_g", q[0], report.p_g),
        predicate_check('qseq.monotone', "q nonincreasing", all(a >= b for a, b in zip(q, q[1:])), list(q)),
        predicate_check('qseq.floor', "q(n) >= q_inf >= 0", min(q) >= report.q_inf >= 0, report.q_inf),
        equality_check('qseq.second_difference', "q(n+1)+q(n-1)-2q(n) = L(n)", second, list(report.lengths[:report.n_max - 1])),
        predicate_check('qseq.nr_le_br', "nr <= br", report.nr <= report.br, [report.nr, report.br]),
        predicate_check('qseq.br_le_pg', "br <= p_g + 1", report.br <= report.p_g + 1, report.br),
        predicate_check('qseq.pg_binomial', "p_g >= C(nr, 2)", report.p_g >= binom(report.nr, 2), report.p_g),
        equality_check('qseq.differences', "nr, br from differences of q", [nr_q, br_q], [report.nr, report.br]),
    ]


def family_length(family: ClosureFamily, Q: ParameterPair, n, window=DEFAULT_WINDOW) -> int:
    """L(n) = ell(closure^{n+1} / Q closure^n)"""
    numerator = lambda t: family.closure_component(n + 1, t)
    inner = lambda t: family.closure_component(n, t)
    return reduction_quotient_length(
        numerator, Q, inner, family.length_t_max(n, window), window,
        full_from=family.full_from(n + 1), check_containment=Q.is_homogeneous,
    )


def full_invariant_run(family: ClosureFamily, reduction: Optional[ParameterPair] = None, n_max=None,
                       window=DEFAULT_WINDOW, seed=0, with_extras=True) -> QSequenceReport:
    """
    Lengths by linear algebra, p_g from the curve, then the q sequence.

    Every report invariant is asserted; a failure raises InvariantViolation.
    """
    Q = reduction or family.reduction(seed, window)
    if not contains_pair(family.ideal, Q):
        raise InvariantViolation('reduction.inside', "Q is not contained in I")
    bound = family.br_bound()
    n_max = n_max or bound
    lengths = [family_length(family, Q, n, window) for n in range(1, n_max + 1)]
    report = q_sequence_from_lengths(family.p_g(), lengths, n_max, family.name, family.params())
    report.field = family.ring.field.spec
    report.reduction = Q.describe()
    report.tail_certified = n_max >= bound
    if not report.tail_certified:
        report.notes.append(f"L(n) for n > {n_max} assumed 0 (proven bound is {bound})")
    report.checks.extend(report_invariant_checks(report))
    report.checks.append(predicate_check('qseq.br_bound', "br <= proven bound", report.br <= bound, bound))
    blowdown = family.blowdown_pg()
    if blowdown is not None:
        report.checks.append(equality_check('qseq.q_inf_blowdown', "q_inf = p_g of the blown-down cone", report.q_inf, blowdown))
    else:
        report.notes.append("q_inf not cross-checked (blowdown p_g indeterminate)")
    if with_extras:
        report.checks.extend(family.extras(Q, window))
    require(report.checks)
    return report


def hyperelliptic_closed_run(g, b) -> QSequenceReport:
    """q(nI_Z) = max(g-n, 0) for the hyperelliptic cone with b >= g"""
    if b < g:
        raise ParameterRangeError(f"the closed form needs b >= g (got b={b}, g={g})")
    q = [max(g - n, 0) for n in range(g + 2)]
    report = q_sequence_from_lengths(pinkham_pg(Hyperelliptic(g, b)), lengths_from_q(q, g + 1), g + 1,
                                     'Hyperelliptic', {'g': g, 'b': b})
    report.notes.append("q(nI_Z) from the closed form; h1 on the resolution is not computed")
    report.checks.extend(report_invariant_checks(report))
    report.checks.append(equality_check('hyper.q_closed_form', "q(nI) = max(g-n, 0)", list(report.q), q[:g + 2]))
    require(report.checks)
    return report
