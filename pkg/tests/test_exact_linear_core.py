import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import DegreeMismatchError, FieldModeError, InhomogeneousError, VariableMismatchError
from exact_linear_core import (
    CoefficientField,
    GradedPolyRing,
    PieceBasis,
    component_extract,
    monomials_of_degree,
    poly_mul,
    solve_in_span,
    subspace_contains,
    subspace_span,
)

FIELDS = ['rationals', 'fp:32003']

terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    st.integers(-20, 20),
    max_size=5,
)


def grading(spec='rationals', weights=(1, 1, 1)):
    return GradedPolyRing(('x', 'y', 'z'), weights, CoefficientField.from_spec(spec))


def poly(R, data):
    return R.ring.from_dict({m: R.field(c) for m, c in data.items() if c})


def piece(R, t):
    return PieceBasis(R, R.monomials(t), t)


class TestCoefficientField:
    def test_rationals_spec(self):
        assert CoefficientField.from_spec('rationals').characteristic == 0

    def test_prime_spec(self):
        field = CoefficientField.from_spec('fp:32003')
        assert field.characteristic == 32003
        assert field.spec == 'fp:32003'

    @pytest.mark.parametrize('text', ['fp:2', 'fp:9', 'fp:x', 'reals'])
    def test_bad_specs(self, text):
        with pytest.raises(FieldModeError):
            CoefficientField.from_spec(text)

    def test_require_coprime(self):
        with pytest.raises(FieldModeError):
            CoefficientField(3).require_coprime(6, "2g+2 with g=2")
        CoefficientField(5).require_coprime(6, "2g+2 with g=2")


class TestPolynomials:
    def test_difference_of_squares(self):
        R = grading()
        x, y, z = R.gens
        assert poly_mul(y + z, y - z) == y**2 - z**2

    def test_square_of_x(self):
        x, _, _ = grading().gens
        assert poly_mul(x, x) == x**2

    def test_prime_field_product(self):
        R = GradedPolyRing(('x', 'y', 'z'), (1, 1, 1), CoefficientField(5))
        _, y, _ = R.gens
        assert poly_mul(2 * y, 3 * y) == y**2

    def test_variable_mismatch(self):
        R = grading()
        S = GradedPolyRing(('y', 'z'), (1, 1), CoefficientField())
        with pytest.raises(VariableMismatchError):
            poly_mul(R.gens[1], S.gens[0])

    def test_component_extract(self):
        _, y, z = grading().gens
        assert component_extract(y**2 + y + 1, 2) == y**2
        assert component_extract(y**2, 3) == 0

    def test_component_extract_weighted(self):
        R = grading(weights=(3, 1, 1))
        x, y, _ = R.gens
        assert component_extract(x + y**3, 3, R.weights) == x + y**3

    @given(terms)
    def test_components_sum_back(self, data):
        R = grading()
        p = poly(R, data)
        total = sum((component_extract(p, t) for t in range(10)), R.ring.zero)
        assert total == p

    def test_weighted_monomials(self):
        assert monomials_of_degree((3, 1, 1), 3) == [(1, 0, 0), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3)]

    def test_homogeneity(self):
        R = grading()
        x, y, _ = R.gens
        assert R.is_homogeneous(x * y + y**2)
        with pytest.raises(InhomogeneousError):
            R.degree(x + y**2)


@pytest.mark.parametrize('spec', FIELDS)
@given(a=terms, b=terms, c=terms)
def test_ring_axioms(spec, a, b, c):
    R = grading(spec)
    p, q, r = poly(R, a), poly(R, b), poly(R, c)
    assert poly_mul(poly_mul(p, q), r) == poly_mul(p, poly_mul(q, r))
    assert poly_mul(p, q) == poly_mul(q, p)
    assert poly_mul(p, q + r) == poly_mul(p, q) + poly_mul(p, r)
    assert p + (-p) == 0


@pytest.mark.parametrize('spec', FIELDS)
def test_ring_axioms_sampled(spec):
    R = grading(spec)
    rng = np.random.default_rng(7)

    def sample():
        exps = rng.integers(0, 3, size=(4, 3))
        coeffs = rng.integers(-9, 10, size=4)
        return poly(R, {tuple(int(e) for e in m): int(k) for m, k in zip(exps, coeffs)})

    for _ in range(1000):
        p, q, r = sample(), sample(), sample()
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r
        if p:
            inverse = R.field.domain.one / p.LC
            assert p.LC * inverse == R.field.domain.one


class TestSubspaces:
    def test_dependent_span(self):
        R = grading()
        _, y, z = R.gens
        assert subspace_span([y**2, y * z, y**2 + y * z], piece(R, 2)).dim == 2

    def test_empty_span(self):
        assert subspace_span([], piece(grading(), 2)).dim == 0

    def test_full_span(self):
        R = grading()
        basis = piece(R, 2)
        space = subspace_span([R.monomial(m) for m in basis.monomials], basis)
        assert space.dim == 6
        assert space.is_full

    def test_zero_vectors_ignored(self):
        R = grading()
        _, y, _ = R.gens
        assert subspace_span([R.ring.zero, y**2], piece(R, 2)).dim == 1

    def test_inhomogeneous_span(self):
        R = grading()
        _, y, z = R.gens
        with pytest.raises(InhomogeneousError):
            subspace_span([y**2 + z], piece(R, 2))

    def test_membership(self):
        R = grading()
        _, y, z = R.gens
        space = subspace_span([y**2, z**2], piece(R, 2))
        found, witness = subspace_contains(space, y**2 - z**2)
        assert found
        assert sorted(witness) == sorted([R.field(1), R.field(-1)])
        assert not subspace_contains(space, y * z)[0]

    def test_zero_in_zero(self):
        R = grading()
        space = subspace_span([], piece(R, 2))
        assert subspace_contains(space, R.ring.zero)[0]

    def test_degree_mismatch(self):
        R = grading()
        _, y, z = R.gens
        space = subspace_span([y**2, z**2], piece(R, 2))
        with pytest.raises(DegreeMismatchError):
            subspace_contains(space, y)

    def test_inhomogeneous_query_is_a_degree_mismatch(self):
        R = grading()
        _, y, z = R.gens
        space = subspace_span([y**2, z**2], piece(R, 2))
        with pytest.raises(DegreeMismatchError):
            subspace_contains(space, y**2 + z)

    def test_solve_in_span(self):
        R = grading()
        _, y, z = R.gens
        basis = piece(R, 2)
        solution = solve_in_span([y**2, y * z], 3 * y**2 - y * z, basis)
        assert solution == [R.field(3), R.field(-1)]
        assert solve_in_span([y**2], z**2, basis) is None


@pytest.mark.parametrize('spec', FIELDS)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=6, max_size=6), max_size=6), st.randoms())
def test_span_laws(spec, rows, random):
    R = grading(spec)
    basis = piece(R, 2)
    vectors = [R.ring.from_dict({m: R.field(c) for m, c in zip(basis.monomials, row) if c}) for row in rows]
    space = subspace_span(vectors, basis)
    assert subspace_span(space.vectors(), basis) == space
    shuffled = list(vectors)
    random.shuffle(shuffled)
    assert subspace_span(shuffled, basis) == space
    half = len(vectors) // 2
    first = subspace_span(vectors[:half], basis)
    second = subspace_span(vectors[half:], basis)
    joined = first.join(second)
    assert joined == space
    assert joined.dim <= first.dim + second.dim
    assert (joined.dim == first.dim + second.dim) == (first.intersection_dim(second) == 0)
    assert all(subspace_contains(space, v)[0] for v in vectors)


def test_field_arithmetic(coefficient_field):
    assert coefficient_field(3) + coefficient_field(-3) == coefficient_field(0)
    assert coefficient_field(4) / coefficient_field(2) == coefficient_field(2)


def test_monomial_counts(xyz):
    assert [len(xyz.monomials(t)) for t in range(4)] == [1, 3, 6, 10]
    assert xyz.monomial((1, 0, 2), 5) == 5 * xyz.gens[0] * xyz.gens[2]**2
