import pytest

from brauerkit.azumaya import (CoefficientDatum, aut_homotopy_sequence, hochschild,
                               homogeneous_unit_degrees, is_azumaya, morita_reduce_field)
from brauerkit.brauerwall import QuadraticDatum, half_quaternion, quaternion_algebra
from brauerkit.errors import NotAzumaya, TwoNotInvertible, UnsupportedCoeff, WindowEmpty
from brauerkit.exactalg import CoeffRing, IntMatrix
from brauerkit.graded import (Grading, GradedModule, end_algebra, matrix_algebra, product_algebra,
                              tensor_algebras, truncated_polynomial)

Z = CoeffRing.integers()
Z_HALF = CoeffRing.localized([2])
F2, F3, F5 = (CoeffRing.prime_field(p) for p in (2, 3, 5))


@pytest.mark.parametrize("ring", [Z, F3, Z_HALF], ids=["Z", "F3", "Z[1/2]"])
def test_endomorphism_algebras_are_azumaya(ring):
    assert is_azumaya(end_algebra(GradedModule(ring, Grading(), (0, 1))))
    assert is_azumaya(matrix_algebra(ring, 2))


def test_quaternion_and_half_quaternion_are_azumaya():
    assert is_azumaya(quaternion_algebra(F3, 1, QuadraticDatum.y2_plus(1)))
    assert is_azumaya(half_quaternion(F5, 1))
    assert is_azumaya(half_quaternion(F5, 2))


def test_negative_controls():
    assert not is_azumaya(product_algebra(F3, 2))
    assert not is_azumaya(truncated_polynomial(F3, 2, 0))
    with pytest.raises(TwoNotInvertible):
        half_quaternion(F2, 1)
    # the same presentation over F_2 is commutative, hence not central simple
    x = truncated_polynomial(F2, 2, 1, grading=Grading("Z2", -1))
    assert not is_azumaya(x)


@pytest.mark.parametrize("p", [3, 5])
def test_hochschild_of_quaternion_algebras_vanishes(p):
    r = CoeffRing.prime_field(p)
    q = quaternion_algebra(r, 1, QuadraticDatum.y2_plus(1))
    hh = hochschild(q, s_max=3)
    assert hh[0].invariant_factors == (p,)
    assert all(g.is_trivial() for g in hh[1:])


def test_hochschild_detects_derivations():
    hh = hochschild(truncated_polynomial(F3, 2, 0), s_max=1)
    assert not hh[1].is_trivial()


def test_hochschild_needs_a_field():
    with pytest.raises(UnsupportedCoeff):
        hochschild(matrix_algebra(Z, 2))


def test_morita_invariants():
    _, inv = morita_reduce_field(matrix_algebra(F3, 2))
    assert (inv.type_bit, inv.quad_class.h) == (0, (0,))
    _, inv = morita_reduce_field(half_quaternion(F5, 1))
    assert inv.type_bit == 1
    _, inv = morita_reduce_field(half_quaternion(F5, 2))
    assert (inv.type_bit, inv.quad_class.h) == (1, (1,))
    with pytest.raises(NotAzumaya):
        morita_reduce_field(product_algebra(F3, 2))


def test_morita_class_is_stable_under_matrix_twist():
    h = half_quaternion(F5, 2)
    twisted = tensor_algebras(h, end_algebra(GradedModule(F5, Grading(), (0, 1))))
    assert morita_reduce_field(twisted)[1] == morita_reduce_field(h)[1]


def test_unit_degrees():
    rep = homogeneous_unit_degrees(half_quaternion(F3, 1))
    assert rep.degrees == (0, 1) and rep.subgroup == "Z/2" and rep.exhaustive
    rep = homogeneous_unit_degrees(truncated_polynomial(F3, 2, 1))
    assert rep.subgroup == "0"


def test_aut_homotopy_sequence():
    # pi_2 KU = Z -> pi_2 M_2(KU) = Z^4 along the diagonal
    out = aut_homotopy_sequence([CoefficientDatum(2, IntMatrix.of([[1], [0], [0], [1]]))])
    assert out[2].invariant_factors == (0, 0, 0)
    with pytest.raises(WindowEmpty):
        aut_homotopy_sequence([CoefficientDatum(2, IntMatrix.of([[1]]))], window=(3, 4))
