import itertools

import pytest
from hypothesis import given, settings, strategies as st

from brauerkit.c2coh import (C2Module, ShortExactSequence, cohomology, d2_coefficient, d3_coefficient,
                             les_connecting, operation_group_bound, phi_chart_mod2, phi_chart_twisted,
                             steenrod_sq, twisted_bockstein)
from brauerkit.errors import InvalidInput, NotExact, ShapeMismatch
from brauerkit.exactalg import IntMatrix
from brauerkit.scenarios import m2ku_sequence


def periodic(s, h0, even, odd):
    return h0 if s == 0 else (even if s % 2 == 0 else odd)


ORACLE = {
    "Z": lambda s: periodic(s, (0,), (2,), ()),
    "Z-": lambda s: periodic(s, (), (), (2,)),
    "Z/2": lambda s: (2,),
    "Z[C2]": lambda s: periodic(s, (0,), (), ()),
}
MODULES = {"Z": C2Module.trivial(), "Z-": C2Module.sign(), "Z/2": C2Module.trivial(2),
           "Z[C2]": C2Module.regular()}


@pytest.mark.parametrize("name", sorted(ORACLE))
def test_canonical_values(name):
    for s in range(0, 9):
        assert cohomology(MODULES[name], s).invariant_factors == ORACLE[name](s), (name, s)


def brute_force_order(m: C2Module, s: int) -> int:
    """|H^s| for a finite module by enumerating cochains."""
    # the modules generated below have diagonal relation matrices
    rel = m.relations.to_lists()
    orders = [rel[i][i] for i in range(m.rank)]
    elems = list(itertools.product(*[range(n) for n in orders]))
    red = lambda v: tuple(x % n for x, n in zip(v, orders))
    d_in = m.d(s - 1) if s > 0 else None
    d_out = m.d(s)
    kernel = [v for v in elems if not any(red(d_out.apply(v)))]
    image = {red(d_in.apply(v)) for v in elems} if d_in is not None else {red((0,) * len(orders))}
    return len(kernel) // len(image)


@st.composite
def finite_modules(draw):
    parts = []
    for _ in range(draw(st.integers(1, 2))):
        n = draw(st.sampled_from([2, 3, 4, 6]))
        kind = draw(st.sampled_from(["trivial", "sign"]))
        parts.append(C2Module.trivial(n) if kind == "trivial" else C2Module.sign(n))
    m = parts[0]
    for p in parts[1:]:
        m = m.direct_sum(p)
    return m


@settings(max_examples=40, derandomize=True, deadline=None)
@given(finite_modules(), st.integers(0, 5))
def test_cohomology_matches_brute_force(m, s):
    assert cohomology(m, s).order == brute_force_order(m, s)


def test_induced_modules_are_acyclic():
    m = C2Module.induced(C2Module.trivial(3))
    for s in range(1, 5):
        assert cohomology(m, s).is_trivial()


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_matrix_coefficients(k):
    ses = m2ku_sequence(k)
    for s in range(1, 7):
        assert cohomology(ses.b, s).is_trivial()
        delta = les_connecting(ses, s)
        assert delta.is_isomorphism(), (k, s)


def test_twisted_bockstein():
    # H^{s+1}(C2; Z^-) is Z/2 for s even and 0 for s odd
    assert not twisted_bockstein(0).is_zero()
    assert twisted_bockstein(1).is_zero()
    assert not twisted_bockstein(2).is_zero()


def test_differential_coefficients():
    assert [d2_coefficient(s) for s in range(8)] == [0, 1, 1, 0, 0, 1, 1, 0]
    assert [steenrod_sq(2, s) for s in range(8)] == [0, 0, 1, 1, 0, 0, 1, 1]
    assert [d3_coefficient(s) for s in range(8)] == [0, 0, 1, 0, 0, 0, 1, 0]


def test_operation_bounds():
    b2 = operation_group_bound(phi_chart_mod2())
    assert b2.bound == 8 and b2.rank == 3 and b2.group.invariant_factors == (2, 2, 2)
    b3 = operation_group_bound(phi_chart_twisted())
    assert b3.bound == 4 and b3.rank == 2 and b3.group.invariant_factors == (2, 2)


def test_bad_modules_and_sequences():
    with pytest.raises(InvalidInput):
        C2Module(IntMatrix.of([[2]]), None)
    with pytest.raises(ShapeMismatch):
        C2Module(IntMatrix.of([[1, 0]]), None)
    with pytest.raises(InvalidInput):
        C2Module.from_json({"sigma": "nope"})
    z = C2Module.trivial()
    bad = ShortExactSequence(z, z, C2Module.trivial(2), IntMatrix.of([[3]]), IntMatrix.of([[1]]))
    with pytest.raises(NotExact):
        les_connecting(bad, 0)


def test_json_roundtrip():
    m = C2Module.sign(4).direct_sum(C2Module.regular())
    again = C2Module.from_json(m.to_json())
    assert [cohomology(again, s) for s in range(4)] == [cohomology(m, s) for s in range(4)]
