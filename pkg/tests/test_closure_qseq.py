import numpy as np
import pytest

from closure_qseq import (
    BlowupFamily,
    MaximalIdealCone,
    QSequenceReport,
    TailIdealFamily,
    ValuationSpec,
    VeroFamily,
    closure_component,
    full_invariant_run,
    hyperelliptic_closed_run,
    integral_dependence_certificate,
    lengths_from_q,
    nr_br_from_q,
    q_sequence_from_lengths,
    report_invariant_checks,
    sigma_conjugate,
    valuation_membership_test,
    vero_membership_filter,
)
from errors import (
    DegreeMismatchError,
    InvariantViolation,
    NonStabilizedError,
    ParameterRangeError,
    RingMismatchError,
    UnsupportedVariantError,
)
from exact_linear_core import CoefficientField, GradedPolyRing, subspace_contains
from graded_ring_models import StandardHypersurface
from ideal_engine import sample_minimal_reduction


@pytest.fixture(scope='module')
def vero2():
    return VeroFamily(2)


class TestSequenceFromLengths:
    def test_single_jump(self):
        report = q_sequence_from_lengths(4, [1, 0, 0])
        assert report.q == (4, 3, 3, 3)
        assert (report.nr, report.br, report.q_inf) == (2, 2, 3)

    def test_late_jump(self):
        report = q_sequence_from_lengths(2, [0, 1, 0])
        assert report.q == (2, 1, 0, 0)
        assert (report.nr, report.br) == (1, 3)

    def test_constant(self):
        report = q_sequence_from_lengths(1, [0, 0])
        assert report.q == (1, 1, 1)
        assert (report.nr, report.br) == (1, 1)

    def test_lookups(self):
        report = q_sequence_from_lengths(2, [0, 1, 0])
        assert report.L(2) == 1
        assert report.L(10) == 0
        assert report.q_at(10) == 0
        with pytest.raises(ParameterRangeError):
            report.L(0)

    def test_last_length_must_vanish(self):
        with pytest.raises(NonStabilizedError):
            q_sequence_from_lengths(4, [1, 1])

    def test_negative_length(self):
        with pytest.raises(ParameterRangeError):
            q_sequence_from_lengths(4, [-1, 0])

    def test_empty(self):
        with pytest.raises(ParameterRangeError):
            q_sequence_from_lengths(4, [])

    def test_too_few_lengths(self):
        with pytest.raises(ParameterRangeError):
            q_sequence_from_lengths(4, [0], n_max=3)

    def test_negative_q(self):
        with pytest.raises(InvariantViolation):
            q_sequence_from_lengths(0, [1, 0])

    def test_report_checks_pass(self):
        report = q_sequence_from_lengths(4, [2, 1, 0])
        assert all(check.passed for check in report_invariant_checks(report))

    def test_report_defaults(self):
        first = QSequenceReport('cone', {'d': 3}, 1, (0,), (1, 1), 1, 1, 1, 1)
        second = QSequenceReport('cone', {'d': 3}, 1, (0,), (1, 1), 1, 1, 1, 1)
        assert first.field == 'rationals'
        assert first.checks == [] and first.notes == []
        first.notes.append("tail assumed")
        assert second.notes == []
        assert q_sequence_from_lengths(1, [0]).field == 'rationals'


class TestSequenceIdentities:
    def test_nr_br_from_q(self):
        assert nr_br_from_q([4, 3, 3, 3]) == (2, 2)
        assert nr_br_from_q([2, 1, 0, 0]) == (1, 3)
        assert nr_br_from_q([4, 1, 0, 0]) == (3, 3)

    def test_lengths_from_q(self):
        assert lengths_from_q([2, 1, 0, 0]) == [0, 1, 0]
        assert lengths_from_q([4, 1, 0, 0], 3) == [2, 1, 0]

    @pytest.mark.parametrize("p_g, lengths", [(4, [2, 1, 0]), (6, [0, 0, 2, 0]), (3, [1, 1, 0, 0]), (5, [0, 0])])
    def test_lengths_survive_the_round_trip(self, p_g, lengths):
        report = q_sequence_from_lengths(p_g, lengths)
        assert lengths_from_q(report.q, len(lengths)) == lengths
        assert nr_br_from_q(report.q, report.q_inf) == (report.nr, report.br)


class TestFamilies:
    def test_closure_index(self, vero2):
        with pytest.raises(ParameterRangeError):
            closure_component(vero2, 0, 2)

    def test_tail_family_ranges(self):
        R = StandardHypersurface(3)
        _, y, _ = R.grading.gens
        with pytest.raises(ParameterRangeError):
            TailIdealFamily(R, R.element(y), 1)
        with pytest.raises(ParameterRangeError):
            BlowupFamily(R, 0)

    def test_tail_family_cubic(self):
        R = StandardHypersurface(3)
        _, y, _ = R.grading.gens
        report = full_invariant_run(TailIdealFamily(R, R.element(y), 2))
        assert report.p_g == 1
        assert report.lengths == (0, 0)
        assert report.q == (1, 1, 1)
        assert (report.nr, report.br) == (1, 1)
        assert report.tail_certified
        assert report.checks_passed

    @pytest.mark.slow
    def test_tail_family_quartic(self):
        R = StandardHypersurface(4)
        _, y, _ = R.grading.gens
        family = TailIdealFamily(R, R.element(y), 2)
        Q = sample_minimal_reduction(family.ideal, seed=0, s=3)
        report = full_invariant_run(family, Q, n_max=3)
        # same ideal as the (4,1) blowup with L = y
        assert report.lengths == (1, 0, 0)
        assert report.q == (4, 3, 3, 3)
        assert (report.nr, report.br) == (2, 2)
        assert not report.tail_certified

    def test_maximal_ideal_needs_plane_cone(self, vero2):
        with pytest.raises(UnsupportedVariantError):
            MaximalIdealCone(vero2.ring)

    def test_maximal_ideal_quartic(self):
        report = full_invariant_run(MaximalIdealCone(StandardHypersurface(4)))
        assert report.q == (4, 1, 0, 0)
        assert (report.nr, report.br) == (3, 3)
        assert report.lengths == (2, 1, 0)
        assert report.checks_passed

    def test_blowup_quartic(self):
        report = full_invariant_run(BlowupFamily(StandardHypersurface(4), 1))
        assert (report.nr, report.br) == (2, 2)
        assert report.p_g == 4
        assert report.q_at(1) == 3
        assert report.q_inf == 3

    def test_vero_genus_two(self, vero2):
        report = full_invariant_run(vero2)
        assert report.q == (2, 1, 0, 0)
        assert (report.nr, report.br) == (1, 3)
        assert report.L(2) == 1

    @pytest.mark.slow
    def test_vero_genus_three(self):
        report = full_invariant_run(VeroFamily(3))
        assert report.q == (3, 2, 1, 0, 0)
        assert (report.nr, report.br) == (1, 4)

    def test_vero_prime_field(self):
        report = full_invariant_run(VeroFamily(2, CoefficientField(32003)))
        assert report.field == 'fp:32003'
        assert report.q == (2, 1, 0, 0)

    def test_fault_flattens_lengths(self):
        report = full_invariant_run(VeroFamily(2, inject_fault=True))
        assert report.lengths == (0, 0, 0)
        assert report.q == (2, 2, 2, 2)


CLOSURE_FAMILIES = {
    'cone-3': lambda: MaximalIdealCone(StandardHypersurface(3)),
    'cone-4': lambda: MaximalIdealCone(StandardHypersurface(4)),
    'blowup-3-1': lambda: BlowupFamily(StandardHypersurface(3), 1),
    'vero-2': lambda: VeroFamily(2),
}


class TestClosureContainsPower:
    @pytest.mark.parametrize('name', sorted(CLOSURE_FAMILIES))
    def test_power_inside_closure(self, name):
        family = CLOSURE_FAMILIES[name]()
        for n in range(1, 4):
            for t in range(0, 7):
                closure = closure_component(family, n, t)
                power = family.ideal.power_component(n, t)
                assert closure.contains_subspace(power), (n, t)
                assert closure.join(power).dim == closure.dim

    def test_monomials_outside_closure_have_no_certificate(self, vero2):
        ring = vero2.ring
        closure = closure_component(vero2, 2, 2)
        outside = [ring.element(ring.grading.monomial(m)) for m in ring.ring_basis(2).monomials
                   if not subspace_contains(closure, ring.grading.monomial(m))[0]]
        assert len(outside) == len(ring.ring_basis(2)) - closure.dim
        for z in outside:
            assert integral_dependence_certificate(z, vero2.ideal, 2, 3) is None


class TestCertificates:
    def test_extra_element(self, vero2):
        certificate = integral_dependence_certificate(vero2.extra_element, vero2.ideal, 3, 4)
        assert certificate is not None
        assert certificate.u == 2
        assert len(certificate.coefficients) == 2

    def test_member_of_the_power(self, vero2):
        _, y, _ = vero2.ring.grading.gens
        certificate = integral_dependence_certificate(vero2.ring.element(y**2), vero2.ideal, 1, 3)
        assert certificate.u == 1

    def test_no_certificate(self, vero2):
        x, _, z = vero2.ring.grading.gens
        assert integral_dependence_certificate(vero2.ring.element(x * z), vero2.ideal, 2, 3) is None

    def test_degree_too_low(self, vero2):
        _, y, _ = vero2.ring.grading.gens
        with pytest.raises(DegreeMismatchError):
            integral_dependence_certificate(vero2.ring.element(y**2), vero2.ideal, 2)


class TestMembershipFilter:
    def test_pure_member(self, vero2):
        _, y, _ = vero2.ring.grading.gens
        assert vero_membership_filter(vero2.ring.element(y**4), 2, vero2).verdict == 'accept'

    def test_pure_non_member(self, vero2):
        _, _, z = vero2.ring.grading.gens
        assert vero_membership_filter(vero2.ring.element(z**4), 2, vero2).verdict == 'reject'

    def test_x_part_too_early(self, vero2):
        x, y, _ = vero2.ring.grading.gens
        assert vero_membership_filter(vero2.ring.element(x * y), 2, vero2).verdict == 'reject'

    def test_z_power_bound(self, vero2):
        x, y, z = vero2.ring.grading.gens
        assert vero_membership_filter(vero2.ring.element(x * y**3), 3, vero2).verdict == 'undecided'
        assert vero_membership_filter(vero2.ring.element(x * y**2 * z), 3, vero2).verdict == 'reject'

    def test_degree_mismatch(self, vero2):
        _, y, _ = vero2.ring.grading.gens
        with pytest.raises(DegreeMismatchError):
            vero_membership_filter(vero2.ring.element(y**4), 3, vero2)

    def test_wrong_ring(self):
        R = StandardHypersurface(3)
        with pytest.raises(RingMismatchError):
            vero_membership_filter(R.one(), 0)


class TestSigma:
    def test_involution(self, vero2):
        x, y, z = vero2.ring.grading.gens
        element = vero2.ring.element(x * y**3 + y**4 * z**2)
        assert sigma_conjugate(sigma_conjugate(element)) == element
        assert sigma_conjugate(vero2.extra_element).poly == -vero2.extra_element.poly

    def test_plane_cone(self):
        with pytest.raises(UnsupportedVariantError):
            sigma_conjugate(StandardHypersurface(3).one())


class TestValuations:
    @pytest.fixture
    def polys(self):
        return GradedPolyRing(('x', 'y', 'z'), (1, 1, 1), CoefficientField()).gens

    def test_values(self, polys):
        x, y, z = polys
        v = ValuationSpec((0, 1, 2))
        assert v.value(y**2 + z) == 2
        assert v.value(x**5) == 0
        assert v.value(x - x) is None

    def test_membership(self, polys):
        _, y, z = polys
        v = ValuationSpec((1, 1, 1))
        assert valuation_membership_test(y**3 * z, y**2, 2, [v])
        assert not valuation_membership_test(y**3 * z, y**2, 3, [v])

    def test_axioms_on_samples(self, polys):
        x, y, z = polys
        samples = [(x + y, y - z**2), (x * y + z**3, x**2), (y**2, z - y), (x - x, y)]
        assert ValuationSpec((1, 2, 3)).validate(samples)

    def test_weight_count(self, polys):
        _, y, _ = polys
        with pytest.raises(ParameterRangeError):
            ValuationSpec((1, 1)).value(y)

    @pytest.mark.parametrize('weights', [(1, -1, 0), (1, 0.5, 1), (True, 1, 1)])
    def test_weights_must_be_non_negative_integers(self, weights):
        with pytest.raises(ParameterRangeError):
            ValuationSpec(weights)

    def test_numpy_weights_accepted(self, polys):
        _, y, _ = polys
        v = ValuationSpec(tuple(np.arange(3)))
        assert v.weights == (0, 1, 2)
        assert v.value(y**2) == 2


class TestHyperellipticClosedForm:
    def test_genus_three(self):
        report = hyperelliptic_closed_run(3, 3)
        assert report.q == (3, 2, 1, 0, 0)
        assert report.lengths == (0, 0, 1, 0)
        assert (report.nr, report.br) == (1, 4)

    def test_needs_large_b(self):
        with pytest.raises(ParameterRangeError):
            hyperelliptic_closed_run(3, 2)
