from fractions import Fraction

import pytest
from hypothesis import given

from liesys.core import (
    DualOracle, FinVec, IndexOutOfRange, Window, apply_oracle, format_rational, format_vector, parse_rational,
    parse_vector, to_rational, vec_pair_std,
)
from liesys.strategies import finvecs, rationals


def test_to_rational_rejects_inexact_values():
    assert to_rational(3) == Fraction(3)
    assert to_rational('-2/6') == Fraction(-1, 3)

    with pytest.raises(TypeError):
        to_rational(0.5)

    with pytest.raises(TypeError):
        to_rational(True)


@pytest.mark.parametrize('text', ['', '1.5', '2/0', 'a', '1/-2'])
def test_parse_rational_errors(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_rational_is_reduced():
    assert format_rational(Fraction(4, 2)) == '2'
    assert format_rational(Fraction(-3, 6)) == '-1/2'


def test_finvec_drops_zeros():
    v = FinVec({1: 2, 3: 0, 4: '1/2'})

    assert v.support() == (1, 4)
    assert v[3] == 0
    assert (v - v) == FinVec.zero()
    assert not (v - v)


def test_finvec_rejects_bad_index():
    with pytest.raises(IndexOutOfRange):
        FinVec({0: 1})


def test_vector_text():
    v = parse_vector('3:1/2 1:-2')

    assert v == FinVec({1: -2, 3: Fraction(1, 2)})
    assert format_vector(v) == '1:-2 3:1/2'


def test_window():
    window = Window(3)

    assert list(window.indices()) == [1, 2, 3]
    assert window.contains(FinVec({3: 1}))
    assert not window.contains(FinVec({4: 1}))
    assert window.grow(2) == Window(5)

    with pytest.raises(ValueError):
        Window(0)


def test_oracle_with_infinite_support():
    ones = DualOracle.constant(1)

    assert apply_oracle(ones, FinVec({1: 1, 5: 2, 9: -1})) == 2
    assert apply_oracle(DualOracle(lambda i: i), FinVec({2: 3})) == 6


@given(finvecs(), finvecs(), finvecs(), rationals())
def test_pairing_is_bilinear(v, v2, f, a):
    assert vec_pair_std(v * a + v2, f) == a * vec_pair_std(v, f) + vec_pair_std(v2, f)
    assert vec_pair_std(v, f * a + v2) == a * vec_pair_std(v, f) + vec_pair_std(v, v2)


@given(finvecs(), finvecs())
def test_add_sub_is_canonical(v, w):
    assert (v + w) - w == v
    assert hash((v + w) - w) == hash(v)


@given(finvecs(), finvecs())
def test_oracle_of_vector_matches_pairing(v, f):
    assert apply_oracle(DualOracle.from_vec(f), v) == vec_pair_std(v, f)
