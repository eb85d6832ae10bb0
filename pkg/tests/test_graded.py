import json

import pytest

from _pool import pool, random_algebras
from brauerkit.errors import EmptyBasis, InvalidInput, MixedContext, AxiomViolation
from brauerkit.exactalg import CoeffRing
from brauerkit.graded import (GradedAlgebra, Grading, GradedMap, algebra_from_table,
                              is_algebra_isomorphism, koszul_swap, matrix_algebra, opposite,
                              tensor_algebras, truncated_polynomial, trivial_algebra)

F3 = CoeffRing.prime_field(3)


@pytest.mark.parametrize("p, a, b", random_algebras(60), ids=lambda x: x[0] if isinstance(x, tuple) else str(x))
def test_tensor_opposite_and_swap(p, a, b):
    (_, A, fa, a0), (_, B, fb, b0) = a, b
    A.validate()
    assert is_algebra_isomorphism(fa, A, a0) and is_algebra_isomorphism(fb, B, b0)
    ab = tensor_algebras(A, B)
    ab.validate()
    opposite(ab).validate()
    opposite(A).validate()
    assert is_algebra_isomorphism(koszul_swap(A, B), ab, tensor_algebras(B, A))


def test_opposite_is_an_involution():
    for _, a in pool(5):
        assert opposite(opposite(a)) == a


def test_exterior_algebra_is_graded_commutative():
    e = truncated_polynomial(F3, 2, 1)
    assert opposite(e) == e
    y = e.basis_vector(1)
    ee = tensor_algebras(e, e)
    y1, y2 = ee.basis_vector(2), ee.basis_vector(1)
    assert ee.mul(y1, y2) == ee.scale(-1, ee.mul(y2, y1))
    assert e.mul(y, y) == e.zero_vector()


def test_validate_rejects_nonassociative_table():
    # x*x = 1 but (x*x)*y != x*(x*y) once x*y = 0
    with pytest.raises(AxiomViolation):
        algebra_from_table(F3, (0, 0, 0), [[{0: 1}, {1: 1}, {2: 1}],
                                           [{1: 1}, {0: 1}, {}],
                                           [{2: 1}, {}, {}]], [1, 0, 0]).validate()


def test_mixed_context_and_empty_basis():
    with pytest.raises(MixedContext):
        tensor_algebras(trivial_algebra(F3), trivial_algebra(CoeffRing.prime_field(5)))
    with pytest.raises(EmptyBasis):
        truncated_polynomial(F3, 0)


def test_matrix_algebra_shape_and_units():
    m = matrix_algebra(F3, 2)
    m.validate()
    assert m.rank == 4
    assert set(m.degrees) == {0}


def test_descriptor_roundtrip():
    for _, a in pool(3):
        b = GradedAlgebra.loads(a.dumps())
        assert b == a
        assert json.loads(b.dumps()) == json.loads(a.dumps())


def test_descriptor_rejects_garbage():
    with pytest.raises(InvalidInput):
        GradedAlgebra.loads("{not json")
    with pytest.raises(InvalidInput):
        Grading("Z3")


def test_degree_shifting_map_is_not_an_isomorphism():
    e = truncated_polynomial(F3, 2, 1)
    swap = GradedMap.from_images(e.module, e.module, [[0, 1], [1, 0]])
    assert not is_algebra_isomorphism(swap, e, e)
    assert is_algebra_isomorphism(GradedMap.identity(e.module), e, e)
