from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from liesys.core import DualOracle, FinVec, Window, vec_pair_std
from liesys.finitary import (
    CutoffReached, FinitaryOp, PureTensor, TensorDegreeError, TensorElement, act_dual_oracle,
    act_tensor, act_V, act_Vstar, bracket, expand_pure, commutator_span_check, commutator_span_dim, eq1_rhs, flip, in_sl,
    integrability_dim, large_annihilator_check, system_bracket, system_trace, trace,
)
from liesys.mackey import MackeyOp
from liesys.pairing import PairingSpec
from liesys.strategies import finitary_ops, finvecs, indices, tensors


def test_basis_bracket():
    assert bracket(FinitaryOp.elementary(1, 2), FinitaryOp.elementary(2, 3)) == FinitaryOp.elementary(1, 3)
    assert bracket(FinitaryOp.elementary(1, 2), FinitaryOp.elementary(2, 1)) == FinitaryOp({(1, 1): 1, (2, 2): -1})


@given(indices(), indices(), indices(), indices())
def test_structure_constants(i, j, k, l):
    assert bracket(FinitaryOp.elementary(i, j), FinitaryOp.elementary(k, l)) == eq1_rhs(i, j, k, l)


@given(finitary_ops(), finitary_ops(), finitary_ops())
def test_jacobi(a, b, c):
    assert not (bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b)))


@given(finitary_ops(), finitary_ops())
def test_bracket_is_traceless_and_antisymmetric(a, b):
    assert in_sl(bracket(a, b))
    assert bracket(a, b) == -bracket(b, a)


@given(finvecs(), finvecs(), finvecs(), finvecs())
def test_pure_tensor_bracket(u1, w1, u2, w2):
    lhs = bracket(PureTensor(u1, w1).expand(), PureTensor(u2, w2).expand())
    rhs = PureTensor(u1, w2).expand() * vec_pair_std(u2, w1) - PureTensor(u2, w1).expand() * vec_pair_std(u1, w2)

    assert lhs == rhs


def test_expand_pure():
    t = PureTensor(FinVec({1: 2}), FinVec({3: 1, 4: -1}))

    assert expand_pure(t) == FinitaryOp({(1, 3): 2, (1, 4): -2})


def test_trace_and_flip():
    a = FinitaryOp({(1, 1): 2, (2, 3): 5, (3, 3): Fraction(-1, 2)})

    assert trace(a) == Fraction(3, 2)
    assert flip(a) == FinitaryOp({(1, 1): -2, (3, 2): -5, (3, 3): Fraction(1, 2)})


@pytest.mark.parametrize('n', range(1, 9))
def test_commutators_span_the_traceless_block(n):
    assert commutator_span_dim(Window(n)) == n * n - 1
    assert commutator_span_check(Window(n))


@given(finitary_ops(), finitary_ops(), finvecs())
def test_V_and_Vstar_are_modules(a, b, v):
    assert act_V(bracket(a, b), v) == act_V(a, act_V(b, v)) - act_V(b, act_V(a, v))
    assert act_Vstar(bracket(a, b), v) == act_Vstar(a, act_Vstar(b, v)) - act_Vstar(b, act_Vstar(a, v))


@given(finitary_ops(), finvecs(), finvecs())
def test_action_preserves_the_pairing(a, v, w):
    assert vec_pair_std(act_V(a, v), w) + vec_pair_std(v, act_Vstar(a, w)) == 0


def test_pure_tensor_acts_on_dual_by_minus_pairing():
    """u (x) w sends a functional f to -<u, f> w, the sign act_Vstar uses on V_*."""
    u, w = FinVec({1: 1, 3: 2}), FinVec({2: 5})
    f = DualOracle.constant(1)

    assert act_dual_oracle(PureTensor(u, w).expand(), f) == FinVec({2: -15})

    # agrees with the V_* action when f has finite support
    g = FinVec({1: 2, 3: 1})
    a = PureTensor(u, w).expand()

    assert act_dual_oracle(a, DualOracle.from_vec(g)) == act_Vstar(a, g) == FinVec({2: -20})


def test_dual_oracle_action_extends_Vstar():
    a = FinitaryOp({(1, 2): 3, (2, 2): 1})
    w = FinVec({1: 2, 2: -1})

    assert act_dual_oracle(a, DualOracle.from_vec(w)) == act_Vstar(a, w)


@given(
    finitary_ops(n=4, max_size=3),
    finitary_ops(n=4, max_size=3),
    st.dictionaries(st.tuples(indices(4), indices(4)), st.integers(-3, 3), max_size=3),
)
def test_tensor_module_axiom(a, b, coeffs):
    t = TensorElement(1, 1, {((i,), (j,)): x for (i, j), x in coeffs.items()})

    assert act_tensor(bracket(a, b), t) == act_tensor(a, act_tensor(b, t)) - act_tensor(b, act_tensor(a, t))


@pytest.mark.parametrize('p, q', [(2, 0), (1, 1), (2, 1)])
@given(data=st.data())
def test_tensor_module_axiom_by_degree(p, q, data):
    a, b = data.draw(finitary_ops(n=4, max_size=3)), data.draw(finitary_ops(n=4, max_size=3))
    t = data.draw(tensors(p, q, 4, 3))

    assert act_tensor(bracket(a, b), t) == act_tensor(a, act_tensor(b, t)) - act_tensor(b, act_tensor(a, t))


def test_tensor_action_is_leibniz_on_two_vector_slots():
    t = TensorElement(2, 0, {((2, 2), ()): 1})

    assert act_tensor(FinitaryOp.elementary(1, 2), t) == TensorElement(2, 0, {((1, 2), ()): 1, ((2, 1), ()): 1})


def test_tensor_action_cancels_on_mixed_slots():
    t = TensorElement(1, 1, {((1,), (1,)): 1})

    assert not act_tensor(FinitaryOp.elementary(1, 1), t)


def test_tensor_of_vectors_matches_V_action():
    a = FinitaryOp({(2, 1): 1, (1, 1): 3})
    v = FinVec({1: 1, 2: 4})

    assert act_tensor(a, TensorElement.from_vector(v)) == TensorElement.from_vector(act_V(a, v))
    assert act_tensor(a, TensorElement.from_covector(v)) == TensorElement.from_covector(act_Vstar(a, v))


def test_tensor_from_terms_expands():
    t = TensorElement.from_terms(2, 0, [(2, [FinVec({1: 1, 2: 1}), FinVec.unit(3)], [])])

    assert t.as_dict() == {((1, 3), ()): 2, ((2, 3), ()): 2}
    assert t.max_index() == 3


def test_tensor_degree_cap():
    with pytest.raises(TensorDegreeError):
        TensorElement(3, 2)

    assert TensorElement(3, 2, max_degree=5).p == 3

    with pytest.raises(TensorDegreeError):
        TensorElement(1, 0, {((1, 2), ()): 1})


def test_integrability_of_a_nilpotent():
    report = integrability_dim(FinitaryOp.elementary(1, 2), TensorElement.from_vector(FinVec.unit(2)), 10)

    assert report.stabilized
    assert report.dim == 2


def test_integrability_of_a_permutation_cycle():
    cycle = FinitaryOp({(2, 1): 1, (3, 2): 1, (1, 3): 1})
    report = integrability_dim(cycle, TensorElement.from_vector(FinVec.unit(1)), 10)

    assert report.dim == 3


def test_integrability_cutoff():
    cycle = FinitaryOp({(2, 1): 1, (3, 2): 1, (1, 3): 1})
    m = TensorElement.from_vector(FinVec.unit(1))

    assert not integrability_dim(cycle, m, 1).stabilized

    with pytest.raises(CutoffReached):
        integrability_dim(cycle, m, 1, strict=True)


def test_large_annihilator():
    m = TensorElement(1, 1, {((1,), (2,)): 1, ((2,), (1,)): -1})
    report = large_annihilator_check(m, Window(5))

    assert report.bound == 2
    assert report.subsystem.dimension == 2
    assert report.checked == 9


def test_large_annihilator_window_below_bound():
    m = TensorElement.from_vector(FinVec.unit(4))

    assert large_annihilator_check(m, Window(3)).checked == 0


def test_system_bracket_reduces_to_commutator():
    a, b = FinitaryOp({(1, 2): 1}), FinitaryOp({(2, 3): 2, (1, 1): 1})

    assert system_bracket(PairingSpec.standard(), a, b) == bracket(a, b)
    assert system_trace(PairingSpec.standard(), b) == trace(b)


def test_system_bracket_uses_the_pairing():
    swap = FinitaryOp({(1, 1): -1, (2, 2): -1, (1, 2): 1, (2, 1): 1})
    spec = PairingSpec.mackey(MackeyOp.identity() + MackeyOp.from_finitary(swap))
    a, b = FinitaryOp.elementary(1, 1), FinitaryOp.elementary(2, 2)

    # <u_2, w_1> = 1, so [u_1 (x) w_1, u_2 (x) w_2] = u_1 (x) w_2 - u_2 (x) w_1
    assert system_bracket(spec, a, b) == FinitaryOp({(1, 2): 1, (2, 1): -1})
    assert system_trace(spec, a) == 0
    assert system_trace(spec, FinitaryOp.elementary(1, 2)) == 1


@pytest.mark.parametrize('m, bound, checked', [
    (TensorElement.from_vector(FinVec.unit(1)), 1, 25),
    (TensorElement.from_covector(FinVec.unit(2)), 2, 16),
    (TensorElement(1, 0), 0, 36),
])
def test_large_annihilator_examples(m, bound, checked):
    report = large_annihilator_check(m, Window(6))

    assert report.bound == bound
    assert report.subsystem.dimension == bound
    assert report.checked == checked


def test_integrability_of_zero_and_of_an_eigenvector():
    e1 = TensorElement.from_vector(FinVec.unit(1))

    assert integrability_dim(FinitaryOp.zero(), e1, 5).dim == 1
    assert integrability_dim(FinitaryOp.elementary(1, 1), e1, 5).dim == 1
