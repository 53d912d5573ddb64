from fractions import Fraction

import pytest

from liesys.core import FinVec
from liesys.dualize import (
    DualizeError, NondegeneracySearchExhausted, gram_schmidt, induced_spec, to_standard,
)
from liesys.finitary import FinitaryOp
from liesys.mackey import MackeyOp
from liesys.pairing import PairingSpec, Side


def _mackey_pairing(block):
    n = len(block)
    correction = FinitaryOp.from_dense(block) - FinitaryOp.identity_window(n)
    return PairingSpec.mackey(MackeyOp.identity() + MackeyOp.from_finitary(correction))


def _identity(n):
    return [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]


def test_standard_pairing_is_already_dual():
    prefix = gram_schmidt(PairingSpec.standard(), 3, 3)

    assert prefix.u_rows == tuple(FinVec.unit(k) for k in (1, 2, 3))
    assert prefix.w_rows == prefix.u_rows


def test_swap_needs_repair():
    spec = _mackey_pairing([[0, 1], [1, 0]])
    prefix = gram_schmidt(spec, 2, 2)

    assert prefix.u_rows == (FinVec({1: 1}), FinVec({1: -1, 2: 1}))
    assert prefix.w_rows == (FinVec({1: 1, 2: 1}), FinVec({1: 1}))
    assert prefix.biorthogonality(spec) == _identity(2)


def test_upper_triangular_pairing():
    spec = _mackey_pairing([[1, 1], [0, 1]])
    prefix = gram_schmidt(spec, 2, 2)

    assert prefix.u_rows == (FinVec({1: 1}), FinVec({2: 1}))
    assert prefix.w_rows == (FinVec({1: 1}), FinVec({1: -1, 2: 1}))
    assert prefix.biorthogonality(spec) == _identity(2)


def test_search_exhausted():
    spec = _mackey_pairing([[0, 0], [0, 1]])

    with pytest.raises(NondegeneracySearchExhausted) as info:
        gram_schmidt(spec, 1, 2)

    assert info.value.step == 1
    assert info.value.search_bound == 2


def test_search_bound_reaches_past_the_prefix():
    spec = _mackey_pairing([[0, 1], [1, 0]])
    prefix = gram_schmidt(spec, 1, 2)

    assert prefix.length == 1
    assert prefix.w_rows == (FinVec({1: 1, 2: 1}),)


@pytest.mark.parametrize('n, bound', [(0, 3), (3, 2)])
def test_bad_arguments(n, bound):
    with pytest.raises(ValueError):
        gram_schmidt(PairingSpec.standard(), n, bound)


def test_second_pass_is_trivial():
    spec = _mackey_pairing([[2, 1, 0], [1, 0, 3], [0, 1, 1]])
    prefix = gram_schmidt(spec, 3, 3)
    again = gram_schmidt(induced_spec(spec, prefix), 3, 3)

    assert prefix.biorthogonality(spec) == _identity(3)
    assert again.u_rows == tuple(FinVec.unit(k) for k in (1, 2, 3))
    assert again.w_rows == again.u_rows


def test_to_standard():
    spec = _mackey_pairing([[0, 1], [1, 0]])
    prefix = gram_schmidt(spec, 2, 2)

    assert to_standard(spec, prefix, Side.U, prefix.u_rows[1]) == FinVec.unit(2)
    assert to_standard(spec, prefix, Side.W, FinVec({2: 1})) == FinVec({1: 1, 2: -1})

    with pytest.raises(DualizeError):
        to_standard(spec, prefix, Side.U, FinVec.unit(3))
