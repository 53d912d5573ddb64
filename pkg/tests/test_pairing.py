from fractions import Fraction

import pytest

from liesys import linalg
from liesys.core import FinVec, Window
from liesys.finitary import FinitaryOp
from liesys.mackey import MackeyOp
from liesys.pairing import (
    DegenerateWithinWindow, OutsideWindow, PairingError, PairingSpec, Side, Subsystem, complement_subsystem,
    envelope, gram, pair, pairing_matrix, perp_in_window,
)


def _swap12():
    """<u_1, w_2> = <u_2, w_1> = 1, identity on the rest."""
    swap = FinitaryOp({(1, 1): -1, (2, 2): -1, (1, 2): 1, (2, 1): 1})
    return PairingSpec.mackey(MackeyOp.identity() + MackeyOp.from_finitary(swap))


def _span_equal(left, right, n):
    columns = list(range(1, n + 1))
    rows_l = [v.as_dict() for v in left]
    rows_r = [v.as_dict() for v in right]

    return linalg.rank(rows_l, columns) == linalg.rank(rows_r, columns) == linalg.rank(rows_l + rows_r, columns)


def test_pairing_kinds_agree_on_basis():
    spec = _swap12()

    assert pairing_matrix(spec, Window(3)) == [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert pair(spec, FinVec({1: 2}), FinVec({2: 3})) == 6
    assert pair(PairingSpec.standard(), FinVec({1: 2, 2: 1}), FinVec({2: 3})) == 3

    oracle = PairingSpec.from_oracle(lambda i, j: i * j, search_bound=5)

    assert gram(oracle, [FinVec.unit(2)], [FinVec.unit(3), FinVec({1: 1, 2: 1})]) == [[6, 6]]


def test_oracle_needs_a_bound():
    with pytest.raises(PairingError):
        PairingSpec.from_oracle(lambda i, j: 0, search_bound=0)


def test_complement_of_e1():
    sub = complement_subsystem(PairingSpec.standard(), [FinVec.unit(1)], Window(5))

    assert sub.w_basis == (FinVec.unit(1),)
    assert sub.gram == ((1,),)


def test_complement_skips_degenerate_columns():
    sub = complement_subsystem(_swap12(), [FinVec.unit(1)], Window(3))

    assert sub.w_basis == (FinVec.unit(2),)


def test_complement_errors():
    with pytest.raises(PairingError):
        complement_subsystem(PairingSpec.standard(), [FinVec.unit(1), FinVec({1: 2})], Window(3))

    with pytest.raises(OutsideWindow):
        complement_subsystem(PairingSpec.standard(), [FinVec.unit(4)], Window(3))

    with pytest.raises(DegenerateWithinWindow):
        complement_subsystem(_swap12(), [FinVec.unit(1)], Window(1))


def test_perp_of_e1_and_e2():
    perp = perp_in_window(PairingSpec.standard(), Side.W, [FinVec.unit(1), FinVec.unit(2)], Window(4))

    assert _span_equal(perp, [FinVec.unit(3), FinVec.unit(4)], 4)


def test_perp_on_u_side():
    perp = perp_in_window(_swap12(), Side.U, [FinVec.unit(1)], Window(3))

    assert _span_equal(perp, [FinVec.unit(1), FinVec.unit(3)], 3)


def test_perp_of_nothing_is_the_window():
    perp = perp_in_window(PairingSpec.standard(), Side.W, [], Window(3))

    assert _span_equal(perp, [FinVec.unit(i) for i in (1, 2, 3)], 3)


def test_envelope_of_standard_operators():
    ops = [FinitaryOp({(1, 2): 1}), FinitaryOp({(3, 3): Fraction(1, 2)})]
    sub = envelope(PairingSpec.standard(), ops, Window(5))

    assert sub.dimension == 3
    assert all(sub.contains_operator(op) for op in ops)


def test_envelope_grows_w_side():
    sub = envelope(_swap12(), [FinitaryOp({(1, 1): 1})], Window(3))

    assert sub.u_basis == (FinVec.unit(1), FinVec.unit(2))
    assert sub.w_basis == (FinVec.unit(1), FinVec.unit(2))


def test_subsystem_rejects_singular_gram():
    with pytest.raises(PairingError):
        Subsystem.build(PairingSpec.standard(), [FinVec.unit(1)], [FinVec.unit(2)])


def test_coordinate_subsystem():
    sub = Subsystem.coordinate(2)

    assert sub.contains_operator(FinitaryOp({(1, 2): 3}))
    assert not sub.contains_operator(FinitaryOp({(1, 3): 3}))


def _zero_oracle():
    return PairingSpec.from_oracle(lambda i, j: 0, search_bound=5)


def test_complement_of_e1_plus_e2():
    u = FinVec({1: 1, 2: 1})
    sub = complement_subsystem(PairingSpec.standard(), [u], Window(5))

    assert sub.u_basis == (u,)
    assert sub.w_basis == (FinVec.unit(1),)
    assert sub.gram == ((1,),)


def test_complement_under_zero_pairing_is_degenerate():
    with pytest.raises(DegenerateWithinWindow):
        complement_subsystem(_zero_oracle(), [FinVec.unit(1)], Window(3))


def test_perp_under_zero_pairing_is_the_window():
    perp = perp_in_window(_zero_oracle(), Side.W, [FinVec.unit(1)], Window(3))

    assert _span_equal(perp, [FinVec.unit(i) for i in (1, 2, 3)], 3)


def test_perp_of_functional_sum_on_u_side():
    perp = perp_in_window(PairingSpec.standard(), Side.U, [FinVec({1: 1, 2: 1})], Window(3))

    assert len(perp) == 2
    assert _span_equal(perp, [FinVec({1: 1, 2: -1}), FinVec.unit(3)], 3)


def test_envelope_of_nothing_is_empty():
    sub = envelope(PairingSpec.standard(), [], Window(3))

    assert sub.dimension == 0
    assert sub.u_basis == sub.w_basis == ()


def test_envelope_of_a_column_pair():
    ops = [FinitaryOp({(1, 1): 1}), FinitaryOp({(2, 1): 1})]
    sub = envelope(PairingSpec.standard(), ops, Window(4))

    assert sub.u_basis == (FinVec.unit(1), FinVec.unit(2))
    assert sub.w_basis == (FinVec.unit(1), FinVec.unit(2))
    assert all(sub.contains_operator(op) for op in ops)
