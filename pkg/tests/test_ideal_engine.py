import pytest

from closure_qseq import BlowupFamily, VeroFamily, family_length
from errors import (
    ContainmentError,
    InhomogeneousError,
    NonStabilizedError,
    ParameterRangeError,
    RetriesExhaustedError,
)
from exact_linear_core import full_subspace, zero_subspace
from graded_ring_models import StandardHypersurface
from ideal_engine import (
    GradedIdeal,
    ParameterPair,
    colength,
    contains_pair,
    ideal_power_component,
    is_reduction_certificate,
    multiplicity,
    multiply_component,
    quotient_length,
    sample_minimal_reduction,
)


@pytest.fixture(scope='module')
def cubic():
    return StandardHypersurface(3)


@pytest.fixture(scope='module')
def maximal(cubic):
    return GradedIdeal(cubic, [], tail_degree=1, name='m')


def linear_pair(R):
    _, y, z = R.grading.gens
    return ParameterPair(R.element(y), R.element(z))


class TestComponents:
    def test_maximal_ideal(self, cubic, maximal):
        assert maximal.component(0).dim == 0
        assert maximal.component(1).is_full
        assert maximal.power_component(3, 2).dim == 0
        assert maximal.power_component(2, 2).is_full

    def test_zeroth_power_is_the_ring(self, maximal):
        assert maximal.power_component(0, 0).is_full

    def test_negative_power(self, maximal):
        with pytest.raises(ParameterRangeError):
            maximal.power_component(-1, 2)
        with pytest.raises(ParameterRangeError):
            ideal_power_component(maximal, 0, 2)

    def test_vero_ideal(self):
        family = VeroFamily(2)
        I = family.ideal
        assert I.component(1).dim == 2
        assert I.component(2).dim == 7
        assert I.power_component(2, 2).dim == 3

    def test_product_of_ideals(self, cubic, maximal):
        assert multiply_component(maximal, maximal, 2).is_full
        assert multiply_component(maximal, maximal, 1).dim == 0

    def test_needs_generators_or_tail(self, cubic):
        with pytest.raises(ParameterRangeError):
            GradedIdeal(cubic, [])

    def test_inhomogeneous_generator(self, cubic):
        x, y, _ = cubic.grading.gens
        mixed = cubic.element(x + y**2, homogeneous=False)
        with pytest.raises(InhomogeneousError):
            GradedIdeal(cubic, [mixed])


class TestQuotientLength:
    def test_containment_failure(self, cubic):
        zero = lambda t: zero_subspace(cubic.ring_basis(t))
        full = lambda t: full_subspace(cubic.ring_basis(t))
        with pytest.raises(ContainmentError):
            quotient_length(zero, full, 6)

    def test_not_stabilized(self, cubic):
        zero = lambda t: zero_subspace(cubic.ring_basis(t))
        full = lambda t: full_subspace(cubic.ring_basis(t))
        with pytest.raises(NonStabilizedError):
            quotient_length(full, zero, 6)

    def test_ring_modulo_maximal_ideal(self, cubic, maximal):
        full = lambda t: full_subspace(cubic.ring_basis(t))
        assert quotient_length(full, maximal.component, 6) == 1


class TestColength:
    def test_linear_parameters_on_cubic(self, cubic):
        assert colength(linear_pair(cubic)) == 3
        assert multiplicity(linear_pair(cubic)) == 3

    def test_infinite_colength(self, cubic):
        _, y, _ = cubic.grading.gens
        with pytest.raises(NonStabilizedError):
            colength(ParameterPair(cubic.element(y), cubic.element(y)))

    @pytest.mark.parametrize("g, expected", [(2, 6), (3, 10)])
    def test_vero_reduction(self, g, expected):
        assert colength(VeroFamily(g).fixed_reduction()) == expected

    def test_blowup_reduction(self):
        family = BlowupFamily(StandardHypersurface(3), 1)
        assert colength(family.reduction()) == 6


class TestReductions:
    def test_certificate_depth(self, cubic, maximal):
        Q = linear_pair(cubic)
        assert contains_pair(maximal, Q)
        assert not is_reduction_certificate(Q, maximal, 1)
        assert is_reduction_certificate(Q, maximal, 2)

    def test_pair_outside_ideal(self, cubic):
        x, y, z = cubic.grading.gens
        I = GradedIdeal(cubic, [cubic.element(y), cubic.element(z)])
        Q = ParameterPair(cubic.element(x), cubic.element(y))
        assert not contains_pair(I, Q)
        assert not is_reduction_certificate(Q, I, 2)

    def test_vero_fixed_reduction(self):
        family = VeroFamily(2)
        assert is_reduction_certificate(family.fixed_reduction(), family.ideal, 1)

    def test_sampled_reduction(self, cubic, maximal):
        Q = sample_minimal_reduction(maximal, seed=3, s=2)
        assert contains_pair(maximal, Q)
        assert colength(Q) == 3

    def test_sampling_is_seeded(self, cubic, maximal):
        first = sample_minimal_reduction(maximal, seed=5, s=2)
        second = sample_minimal_reduction(maximal, seed=5, s=2)
        assert first.describe() == second.describe()

    def test_no_attempts(self, maximal):
        with pytest.raises(RetriesExhaustedError):
            sample_minimal_reduction(maximal, seed=0, s=2, attempts=0)


def test_blowup_lengths():
    family = BlowupFamily(StandardHypersurface(4), 1)
    Q = family.reduction()
    assert family_length(family, Q, 1) == 1
    assert family_length(family, Q, 2) == 0
