import pytest

from brauerkit.errors import (DeadDifferential, DSquareNonzero, Indeterminate, InvalidInput,
                              NotStabilized, RegionViolation, SlotOutsideWindow)
from brauerkit.exactalg import FinAbGroup
from brauerkit.specseq import (FRINGED, SPECTRUM, Arrow, Cell, HiddenExtension, ObstructionSlot,
                               Window, assemble_degree, e_infinity, make_sequence,
                               obstruction_groups, pages, permanent_cycle_certificate, restrict,
                               turn_page, vanishing_scan)

Z, Z2, Z4 = FinAbGroup.free(1), FinAbGroup.cyclic(2), FinAbGroup.cyclic(4)
W = Window(-4, 4, 8)


def test_d2_kills_a_pair_of_dots():
    p = make_sequence({(0, 0): Z2, (2, 1): Z2}, [Arrow(2, (0, 0))], W)
    assert (0, 0) in p.differentials
    q = turn_page(p)
    assert q.r == 3 and q.cells == {}


def test_free_source_leaves_a_multiple():
    p = make_sequence({(0, 0): Z, (2, 1): Z2}, [Arrow(2, (0, 0))], W)
    q = turn_page(p)
    c = q.cell(0, 0)
    assert c.factors == (0,) and c.reps == ((2,),)
    assert q.labels(0, 0) == ("2x",)


def test_explicit_matrix_cokernel():
    p = make_sequence({(0, 0): Z, (2, 1): Z}, [Arrow(2, (0, 0), [[2]])], W)
    q = turn_page(p)
    assert (0, 0) not in q.cells
    assert q.group(2, 1) == Z2


def test_d_squared_must_vanish():
    e2 = {(0, 0): Z, (2, 1): Z, (4, 2): Z}
    rules = [Arrow(2, (0, 0), [[1]]), Arrow(2, (2, 1), [[1]])]
    with pytest.raises(DSquareNonzero):
        make_sequence(e2, rules, W)


def test_region_violation():
    with pytest.raises(RegionViolation):
        make_sequence({(3, 0): Z2}, [], W, region=FRINGED)
    # a d_2 from a defined cell into an undefined one
    with pytest.raises(RegionViolation):
        make_sequence({(0, 0): Z2}, [Arrow(2, (0, 0))], W, region=FRINGED)


def test_fringe_region_shape():
    assert FRINGED.contains(3, 2, 2) and not FRINGED.contains(1, 0, 2)
    assert FRINGED.contains(4, 3, 2) and not FRINGED.contains(4, 3, 3)
    assert not FRINGED.contains(-1, 0, 2)
    assert SPECTRUM.contains(9, 0, 5)


def test_dead_differential():
    with pytest.raises(DeadDifferential):
        make_sequence({(0, 0): Z2}, [Arrow(2, (0, 0))], W)
    with pytest.raises(DeadDifferential):
        make_sequence({(0, 0): FinAbGroup.cyclic(3), (2, 1): Z2}, [Arrow(2, (0, 0))], W)


def test_clipping_marks_the_inside_cell():
    small = Window(0, 4, 1)
    p = make_sequence({(0, 0): Z2}, [Arrow(2, (0, 0))], small)
    assert p.clipped == ((0, 0),)
    assert p.cell(0, 0).indeterminate
    with pytest.raises(Indeterminate):
        assemble_degree(p, 0)


def test_empty_page():
    p = make_sequence({}, [], W)
    q = e_infinity(p, r_max=4)
    assert q.stable and q.cells == {}
    a = assemble_degree(q, 0)
    assert a.group.is_trivial() and not a.ambiguous


def test_assembly_ambiguity_and_extension():
    e2 = {(0, 0): Z2, (1, 1): Z2}
    p = e_infinity(make_sequence(e2, [], W), r_max=3)
    split = assemble_degree(p, 0)
    assert split.ambiguous and split.group.invariant_factors == (2, 2)
    ext = HiddenExtension(0, [(0, 1)])
    glued = assemble_degree(p, 0, [ext])
    assert not glued.ambiguous and glued.group == Z4
    with pytest.raises(InvalidInput):
        HiddenExtension(0, [(1, 0)])


def test_assembly_with_free_bottom():
    p = e_infinity(make_sequence({(0, 0): Z, (2, 2): Z2}, [], W), r_max=3)
    a = assemble_degree(p, 0)
    assert a.group.invariant_factors == (2, 0)


def test_unknown_arrows_flag_both_ends():
    e2 = {(0, 0): Z2, (3, 2): Z2}
    p = make_sequence(e2, [Arrow(3, (0, 0), status="unknown")], W)
    q = pages(p, 4)[-1]
    assert q.cell(0, 0).indeterminate and q.cell(3, 2).indeterminate
    with pytest.raises(Indeterminate):
        assemble_degree(q, 0)
    certified = make_sequence(e2, [Arrow(3, (0, 0), status="unknown")], W, certified=[(0, 0)])
    q = pages(certified, 4)[-1]
    assert not q.cell(0, 0).indeterminate
    assert q.settled_arrows


def test_certified_cycle_cannot_support_a_differential():
    with pytest.raises(DSquareNonzero):
        make_sequence({(0, 0): Z2, (2, 1): Z2}, [Arrow(2, (0, 0))], W, certified=[(0, 0)])


def test_e_infinity_needs_enough_pages():
    p = make_sequence({(0, 0): Z2, (5, 4): Z2}, [Arrow(5, (0, 0))], W)
    with pytest.raises(NotStabilized):
        e_infinity(p, r_max=4)
    assert e_infinity(p).cells == {}


def test_restrict():
    p = make_sequence({(0, 0): Z2, (1, 5): Z2}, [], W)
    q = restrict(p, Window(-1, 1, 2))
    assert list(q.cells) == [(0, 0)]
    with pytest.raises(InvalidInput):
        restrict(p, Window(-10, 10, 2))


def test_slots_and_certificate():
    e2 = {(4, 3): Z2, (5, 5): Z2, (0, 1): Cell.star("pi_0")}
    p = make_sequence(e2, [], Window(-4, 4, 12), region=FRINGED)
    seq = pages(p, 4)
    rows = obstruction_groups(seq, [ObstructionSlot("theta_even", 4, 3, 2),
                                    ObstructionSlot("lift_difference", 5, 5, 3)])
    assert rows[0]["group"]["label"] == "Z/2" and rows[0]["status"] == "determinate"
    assert rows[1]["permanent"] is True
    # every target of (0,0) lies outside the fringed region
    assert permanent_cycle_certificate(seq, (0, 0), 2)[0]
    ok, why = permanent_cycle_certificate(seq, (1, 3), 2)
    assert not ok and "no vanishing region" in why
    with pytest.raises(InvalidInput):
        ObstructionSlot("theta_even", 4, 4, 2)
    with pytest.raises(SlotOutsideWindow):
        obstruction_groups(seq, [ObstructionSlot("theta_even", 10, 9, 5)])


def test_nonabelian_slot_blocks_differentials_and_assembly():
    e2 = {(0, 1): Cell.star("pi_0"), (2, 2): Z2}
    with pytest.raises(InvalidInput):
        make_sequence(e2, [Arrow(2, (0, 1))], W, region=FRINGED)
    p = make_sequence(e2, [], W, region=FRINGED)
    with pytest.raises(Indeterminate):
        assemble_degree(p, 1)


def test_vanishing_scan_and_json():
    p = make_sequence({(5, 5): Z2, (6, 4): Z2, (1, 1): Z2}, [], Window(-4, 4, 8), region=FRINGED)
    assert vanishing_scan(p, 5, -1) == [(5, 5)]
    doc = p.to_json()
    assert doc["r"] == 2 and len(doc["cells"]) == 3


def test_bad_arrows():
    with pytest.raises(InvalidInput):
        Arrow(1, (0, 0))
    with pytest.raises(InvalidInput):
        Arrow(2, (0, 0), status="maybe")
    with pytest.raises(InvalidInput):
        Window(3, 1, 4)
    with pytest.raises(InvalidInput):
        Window.parse("x", 4)
