"""
Exact Linear Core Module
Coefficient fields, weighted polynomial rings and row-reduced subspaces

Every length computed by the package reduces to ranks of exact matrices
whose columns are the monomials of one graded piece. Polynomials are sympy
``PolyElement`` values over ``QQ`` or ``GF(p)``; subspaces keep a reduced
row echelon ``DomainMatrix`` over an ordered monomial basis.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from errors import (
    DegreeMismatchError,
    FieldModeError,
    InhomogeneousError,
    VariableMismatchError,
)

DEFAULT_PRIME = 32003

Monomial = Tuple[int, ...]


class CoefficientField:
    """Exact coefficient field: the rationals or a prime field F_p"""

    def __init__(self, characteristic=0):
        """
        Args:
            characteristic: 0 for QQ, otherwise an odd prime p
        """
        if characteristic != 0:
            if not isprime(characteristic):
                raise FieldModeError(f"fp:{characteristic} is not a prime field")
            if characteristic == 2:
                raise FieldModeError("characteristic 2 is not supported")
        self.characteristic = characteristic
        self.domain = QQ if characteristic == 0 else GF(characteristic)

    @classmethod
    def from_spec(cls, text):
        """Parse 'rationals' or 'fp:<p>'"""
        text = (text or 'rationals').strip().lower()
        if text in ('rationals', 'qq', 'q'):
            return cls(0)
        if text.startswith('fp:'):
            try:
                p = int(text[3:])
            except ValueError:
                raise FieldModeError(f"cannot parse prime in field spec '{text}'")
            return cls(p)
        raise FieldModeError(f"unknown field spec '{text}' (use 'rationals' or 'fp:<p>')")

    @property
    def spec(self):
        return 'rationals' if self.characteristic == 0 else f"fp:{self.characteristic}"

    def require_coprime(self, modulus, reason):
        """Reject F_p when p divides modulus"""
        p = self.characteristic
        if p and modulus % p == 0:
            raise FieldModeError(f"characteristic {p} divides {modulus} ({reason})")

    def __call__(self, value):
        return self.domain(int(value))

    def to_int(self, value):
        """Integer representative of a prime-field element (or an integral rational)"""
        if self.characteristic:
            return int(self.domain.to_int(value))
        return int(value)

    def __eq__(self, other):
        return isinstance(other, CoefficientField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(('field', self.characteristic))

    def __repr__(self):
        return f"CoefficientField({self.spec})"


def weighted_degree(monom: Monomial, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(monom, weights))


def monomials_of_degree(weights, t, caps=None) -> List[Monomial]:
    """
    All exponent vectors of weighted degree t, in descending lex order.

    Args:
        weights: positive weight per variable
        t: target weighted degree
        caps: optional per-variable exclusive upper bound on the exponent

    Returns:
        list of exponent tuples
    """
    if t < 0:
        return []
    nvars = len(weights)
    caps = caps or [None] * nvars
    result = []

    def extend(i, remaining, prefix):
        if i == nvars - 1:
            w = weights[i]
            if remaining % w == 0:
                e = remaining // w
                if caps[i] is None or e < caps[i]:
                    result.append(prefix + (e,))
            return
        top = remaining // weights[i]
        if caps[i] is not None:
            top = min(top, caps[i] - 1)
        for e in range(top, -1, -1):
            extend(i + 1, remaining - e * weights[i], prefix + (e,))

    extend(0, t, ())
    return result


class GradedPolyRing:
    """
    Polynomial ring with positive integer weights.

    The variable order given at construction is the lex order used for
    division and for the column order of every graded piece.
    """

    def __init__(self, names, weights, coefficient_field):
        if len(names) != len(weights):
            raise VariableMismatchError("one weight per variable is required")
        if len(names) > 8:
            raise VariableMismatchError("at most 8 variables are supported")
        if any(w < 1 for w in weights):
            raise VariableMismatchError("weights must be positive")
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.field = coefficient_field
        self.ring = PolyRing(','.join(self.names), coefficient_field.domain, lex)
        self.gens = self.ring.gens

    def __eq__(self, other):
        return (isinstance(other, GradedPolyRing) and self.names == other.names
                and self.weights == other.weights and self.field == other.field)

    def __hash__(self):
        return hash((self.names, self.weights, self.field))

    def gen(self, name):
        return self.gens[self.names.index(name)]

    def monomial(self, exponents, coeff=1):
        return self.ring.from_dict({tuple(exponents): self.field(coeff)})

    def check_member(self, p: PolyElement):
        if not isinstance(p, PolyElement) or p.ring != self.ring:
            raise VariableMismatchError(f"polynomial is not in {self.names} over {self.field.spec}")

    def term_degrees(self, p: PolyElement):
        return {weighted_degree(m, self.weights) for m in p.itermonoms()}

    def is_homogeneous(self, p: PolyElement):
        return len(self.term_degrees(p)) <= 1

    def degree(self, p: PolyElement) -> Optional[int]:
        """Weighted degree of a homogeneous polynomial (None for zero)"""
        degrees = self.term_degrees(p)
        if len(degrees) > 1:
            raise InhomogeneousError(f"terms of degrees {sorted(degrees)}")
        return degrees.pop() if degrees else None

    def monomials(self, t, caps=None):
        return monomials_of_degree(self.weights, t, caps)


def poly_mul(a: PolyElement, b: PolyElement) -> PolyElement:
    """Exact product of two polynomials of the same ring"""
    if a.ring != b.ring:
        raise VariableMismatchError(f"{a.ring.symbols} vs {b.ring.symbols}")
    return a * b


def component_extract(a: PolyElement, t: int, weights: Optional[Sequence[int]] = None) -> PolyElement:
    """Sum of the terms of a with weighted degree exactly t"""
    weights = weights or (1,) * a.ring.ngens
    return a.ring.from_dict(
        {m: c for m, c in a.iterterms() if weighted_degree(m, weights) == t}
    )


class PieceBasis:
    """
    Ordered monomial basis of one graded piece (or of a truncation).

    ``degree`` is None for a truncated ambient A_{<N} spanning several
    degrees. ``scale`` converts the piece degree to the weighted degree of
    its polynomials (g for the g-th Veronese subring, 1 otherwise).
    """

    def __init__(self, grading: GradedPolyRing, monomials: Iterable[Monomial], degree=None, scale=1):
        self.grading = grading
        self.monomials = tuple(monomials)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.degree = degree
        self.scale = scale

    @property
    def poly_degree(self):
        return None if self.degree is None else self.degree * self.scale

    def __len__(self):
        return len(self.monomials)

    @property
    def domain(self):
        return self.grading.field.domain

    def to_row(self, p: PolyElement) -> Dict[int, object]:
        """Coordinates of p, checking that every term lies in this piece"""
        row = {}
        for m, c in p.iterterms():
            j = self.index.get(m)
            if j is None:
                actual = weighted_degree(m, self.grading.weights)
                if self.degree is not None and actual != self.poly_degree:
                    raise DegreeMismatchError(
                        f"term of weighted degree {actual} in a piece of weighted degree {self.poly_degree}"
                    )
                raise DegreeMismatchError(f"monomial {m} is outside the ambient basis")
            row[j] = c
        return row

    def to_poly(self, row: Dict[int, object]) -> PolyElement:
        return self.grading.ring.from_dict({self.monomials[j]: c for j, c in row.items()})


@dataclass(eq=False)
class Subspace:
    """Reduced row echelon basis of a subspace of one PieceBasis"""

    basis: PieceBasis
    rows: DomainMatrix
    pivots: Tuple[int, ...]
    _dod: dict = field(default=None, repr=False)
    _vectors: list = field(default=None, repr=False)

    @property
    def dim(self):
        return len(self.pivots)

    @property
    def degree(self):
        return self.basis.degree

    @property
    def is_full(self):
        return self.dim == len(self.basis)

    def row_dicts(self):
        if self._dod is None:
            self._dod = self.rows.to_dod() if self.dim else {}
        return [self._dod.get(i, {}) for i in range(self.dim)]

    def vectors(self) -> List[PolyElement]:
        """Echelon rows as polynomials"""
        if self._vectors is None:
            self._vectors = [self.basis.to_poly(row) for row in self.row_dicts()]
        return self._vectors

    @cached_property
    def key(self):
        rows = tuple(tuple(sorted(r.items())) for r in self.row_dicts())
        return (self.basis.monomials, rows)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def contains_subspace(self, other: 'Subspace') -> bool:
        if other.dim > self.dim:
            return False
        return all(subspace_contains(self, v)[0] for v in other.vectors())

    def join(self, other: 'Subspace') -> 'Subspace':
        if other.basis is not self.basis and other.basis.monomials != self.basis.monomials:
            raise DegreeMismatchError("subspaces live in different ambient pieces")
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return _rref_subspace(self.basis, self.rows.vstack(other.rows))

    def intersection_dim(self, other: 'Subspace') -> int:
        return self.dim + other.dim - self.join(other).dim


def zero_subspace(basis: PieceBasis) -> Subspace:
    return Subspace(basis, DomainMatrix.from_dod({}, (0, len(basis)), basis.domain), ())


def full_subspace(basis: PieceBasis) -> Subspace:
    one = basis.domain.one
    dod = {i: {i: one} for i in range(len(basis))}
    rows = DomainMatrix.from_dod(dod, (len(basis), len(basis)), basis.domain)
    return Subspace(basis, rows, tuple(range(len(basis))))


def _rref_subspace(basis: PieceBasis, matrix: DomainMatrix) -> Subspace:
    reduced, pivots = matrix.rref()
    rank = len(pivots)
    if rank == 0:
        return zero_subspace(basis)
    return Subspace(basis, reduced[:rank, :], tuple(pivots))


def subspace_span(vectors: Iterable[PolyElement], basis: PieceBasis) -> Subspace:
    """
    Reduced echelon basis of the span of the given polynomials.

    Args:
        vectors: polynomials whose terms all lie in the ambient basis
        basis: ambient piece

    Returns:
        Subspace with dim equal to the rank of the input
    """
    dod = {}
    for p in vectors:
        if not p:
            continue
        if basis.degree is not None and not basis.grading.is_homogeneous(p):
            raise InhomogeneousError("span input must be homogeneous")
        dod[len(dod)] = basis.to_row(p)
    if not dod:
        return zero_subspace(basis)
    if len(dod) > 1 or len(basis) == 0:
        return _rref_subspace(basis, DomainMatrix.from_dod(dod, (len(dod), len(basis)), basis.domain))
    # one nonzero vector: normalise by its leading coordinate
    row = dod[0]
    lead = min(row)
    inv = basis.domain.one / row[lead]
    normalised = {j: c * inv for j, c in row.items()}
    return Subspace(basis, DomainMatrix.from_dod({0: normalised}, (1, len(basis)), basis.domain), (lead,))


def subspace_contains(space: Subspace, v: PolyElement):
    """
    Membership test by reduction against the echelon rows.

    Returns:
        (True, witness) with v = sum(witness[i] * row_i), or (False, None)
    """
    if space.degree is not None and v and space.basis.grading.term_degrees(v) != {space.basis.poly_degree}:
        raise DegreeMismatchError(f"vector is not of degree {space.degree}")
    row = space.basis.to_row(v)
    if not row:
        return True, [space.basis.domain.zero] * space.dim
    if space.dim == 0:
        return False, None
    if min(row) < space.pivots[0]:
        return False, None
    domain = space.basis.domain
    witness = [row.get(p, domain.zero) for p in space.pivots]
    coeffs = DomainMatrix.from_dod({0: {i: c for i, c in enumerate(witness) if c}}, (1, space.dim), domain)
    target = DomainMatrix.from_dod({0: row}, (1, len(space.basis)), domain)
    if (target - coeffs * space.rows).is_zero_matrix:
        return True, witness
    return False, None


def solve_in_span(vectors: Sequence[PolyElement], target: PolyElement, basis: PieceBasis):
    """
    Find coefficients a with sum(a_k * vectors[k]) == target.

    Returns:
        list of field elements, or None when target is outside the span
    """
    domain = basis.domain
    columns = [basis.to_row(v) for v in vectors]
    target_row = basis.to_row(target)
    n = len(columns)
    dod = {}
    for k, col in enumerate(columns):
        for j, c in col.items():
            dod.setdefault(j, {})[k] = c
    for j, c in target_row.items():
        dod.setdefault(j, {})[n] = c
    if not dod:
        return [domain.zero] * n
    reduced, pivots = DomainMatrix.from_dod(dod, (len(basis), n + 1), domain).rref()
    if n in pivots:
        return None
    solution = [domain.zero] * n
    reduced_rows = reduced.to_dod()
    for i, col in enumerate(pivots):
        solution[col] = reduced_rows.get(i, {}).get(n, domain.zero)
    return solution
