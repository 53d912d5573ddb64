from fractions import Fraction

import pytest

from liesys.aut import AutPresentation, InvertiblePair, NotInvertible, TwistClass, TwistType
from liesys.codec import (
    CodecError, NonCanonicalWarning, ParseError, ScenarioFile, emit_dual_prefix, emit_finitary, emit_mackey,
    emit_pairing, emit_presentation, emit_twist_class, emit_vectors, load_pairing, load_presentation, load_vectors,
    parse_operator,
)
from liesys.core import FinVec, Window
from liesys.dualize import DualBasisPrefix
from liesys.finitary import FinitaryOp
from liesys.mackey import MackeyOp
from liesys.pairing import PairingKind, PairingSpec

SHIFT_PLUS_IDENTITY = (
    'mackey\n'
    'diag -1 : prefix 0 2 ; tail 1\n'
    'diag 0 : prefix ; tail 1\n'
)


def test_emit_finitary():
    op = FinitaryOp({(2, 1): Fraction(-1, 2), (1, 2): 3})

    assert emit_finitary(op) == 'entry 1 2 : 3\nentry 2 1 : -1/2\n'


def test_emit_mackey():
    op = MackeyOp.identity() + MackeyOp.diagonal([0, 2], 1, -1)

    assert emit_mackey(op) == SHIFT_PLUS_IDENTITY


def test_canonical_text_parses_without_warning(recwarn):
    assert parse_operator(SHIFT_PLUS_IDENTITY) == MackeyOp.identity() + MackeyOp.diagonal([0, 2], 1, -1)
    assert parse_operator(b'entry 1 2 : 3\n') == FinitaryOp({(1, 2): 3})
    assert not [w for w in recwarn if issubclass(w.category, NonCanonicalWarning)]


def test_non_canonical_text_warns():
    with pytest.warns(NonCanonicalWarning):
        op = parse_operator('entry 2 1 : 1\nentry 1 1 : 2/4\nentry 2 1 : 1\n')

    assert op == FinitaryOp({(1, 1): Fraction(1, 2), (2, 1): 2})

    with pytest.warns(NonCanonicalWarning):
        parse_operator('mackey\ndiag 0 : prefix 1 1 ; tail 1\n')


@pytest.mark.parametrize('text, line, column', [
    ('entry 1 2 : x\n', 1, 13),
    ('entry 1 2 3\n', 1, 1),
    ('entry 0 2 : 1\n', 1, 7),
    ('entry 1 2 : 1\nentri 1 1 : 1\n', 2, 1),
    ('mackey\ndiag 0 : prefix 1 tail 1\n', 2, 24),
    ('mackey\ndiag 0 : prefix ; tail 1 2\n', 2, 19),
])
def test_parse_errors_carry_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_operator(text)

    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f'line {line}, column {column}:')


def test_invalid_utf8():
    with pytest.raises(ParseError):
        parse_operator(b'entry 1 1 : \xff\n')


def test_pairing_files():
    assert load_pairing('pairing standard\n') == PairingSpec.standard()

    spec = load_pairing('pairing mackey\nentry 1 2 : 1\n')

    assert spec.kind is PairingKind.MACKEY
    assert spec.matrix == MackeyOp.elementary(1, 2)

    with pytest.raises(ParseError):
        load_pairing('pairing oracle\n')

    with pytest.raises(ParseError):
        load_pairing('vector 1:1\n')

    with pytest.raises(CodecError):
        emit_pairing(PairingSpec.from_oracle(lambda i, j: 0, 3))

    assert emit_pairing(PairingSpec.mackey(MackeyOp.identity())) == 'pairing mackey\nmackey\ndiag 0 : prefix ; tail 1\n'


def test_presentation_round_trip():
    h = AutPresentation(InvertiblePair.elementary(1, 2, 3), True)
    text = emit_presentation(h)

    assert text.startswith('aut\neps 1\ng:\nmackey\n')
    assert load_presentation(text) == h


def test_presentation_must_be_invertible():
    text = 'aut\neps 0\ng:\nmackey\ndiag 1 : prefix ; tail 1\nginv:\nmackey\ndiag -1 : prefix ; tail 1\n'

    with pytest.raises(NotInvertible):
        load_presentation(text)


def test_presentation_eps_is_checked():
    with pytest.raises(ParseError):
        load_presentation('aut\neps 2\ng:\nginv:\n')


def test_vectors():
    vectors = load_vectors('vector 1:1 3:-1/2\nvector\n')

    assert vectors == [FinVec({1: 1, 3: Fraction(-1, 2)}), FinVec.zero()]
    assert emit_vectors(vectors) == 'vector 1:1 3:-1/2\nvector\n'

    with pytest.raises(ParseError) as info:
        load_vectors('vector 1:1 0:2\n')

    assert info.value.column == 12


def test_unknown_directive():
    with pytest.raises(ParseError) as info:
        ScenarioFile.parse('vector 1:1\nfrobnicate\n')

    assert info.value.line == 2


def test_scenario_emit_round_trip():
    text = 'pairing mackey\nentry 1 1 : 2\nvector 2:1\n'

    assert ScenarioFile.parse(text).emit() == text


def test_dual_prefix_text():
    prefix = DualBasisPrefix((FinVec({1: 1}), FinVec({1: -1, 2: 1})), (FinVec({1: 1, 2: 1}), FinVec({1: 1})))

    assert emit_dual_prefix(prefix) == 'u 1 : 1:1\nu 2 : 1:-1 2:1\nw 1 : 1:1 2:1\nw 2 : 1:1\n'


def test_twist_class_text():
    result = TwistClass(TwistType.VSTAR, ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1, 2))), Window(2))

    assert emit_twist_class(result) == 'type V*\nwindow 2\n1 0\n0 1/2\n'


def test_explicit_zero_is_dropped_with_warning():
    with pytest.warns(NonCanonicalWarning):
        op = parse_operator('entry 1 1 : 0/1\n')

    assert op == FinitaryOp.zero()
