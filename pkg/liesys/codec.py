"""
Canonical line-oriented text formats.

Operators::

    entry 1 2 : 1/2            finitary, one line per nonzero entry, sorted by (i, j)

    mackey                     representable Mackey operator, offsets ascending
    diag -1 : prefix 0 2 ; tail 1
    diag 0 : prefix ; tail 1

Scenario files hold directives (``pairing``, ``aut``, ``eps``, ``g:``,
``ginv:``, ``vector``), each directive optionally followed by an operator
block. Parsing canonical text and emitting it again gives the same bytes;
anything else that parses is accepted with a NonCanonicalWarning.
"""

import logging
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Sequence, Tuple, Union

from liesys.aut import AutPresentation, InvertiblePair, TwistClass
from liesys.core import FinVec, format_rational, format_vector, parse_rational
from liesys.dualize import DualBasisPrefix
from liesys.finitary import FinitaryOp
from liesys.mackey import DiagonalSeq, MackeyOp
from liesys.pairing import PairingKind, PairingSpec

__all__ = [
    'CodecError', 'ParseError', 'NonCanonicalWarning', 'Token', 'Directive', 'ScenarioFile',
    'emit_finitary', 'emit_mackey', 'emit_operator', 'parse_operator',
    'load_pairing', 'emit_pairing', 'load_presentation', 'emit_presentation', 'load_vectors', 'emit_vectors',
    'emit_dual_prefix', 'emit_twist_class',
]

_logger = logging.getLogger('liesys').getChild('codec')

_TOKEN_RE = re.compile(r'\S+')
_INTEGER_RE = re.compile(r'^[+-]?\d+$')

_BLOCK_KEYWORDS = ('entry', 'mackey', 'diag')
_DIRECTIVES = ('pairing', 'aut', 'eps', 'g:', 'ginv:', 'vector')

Operator = Union[FinitaryOp, MackeyOp]


class CodecError(Exception):
    pass


class ParseError(CodecError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f'line {line}, column {column}: {message}')
        self.message = message
        self.line = line
        self.column = column


class NonCanonicalWarning(UserWarning):
    pass


class Token(NamedTuple):
    text: str
    line: int
    column: int


def _tokenize(line: str, number: int) -> List[Token]:
    return [Token(m.group(), number, m.start() + 1) for m in _TOKEN_RE.finditer(line)]


def _decode(text: Union[bytes, str]) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode('utf-8')
        except UnicodeDecodeError as e:
            raise ParseError(f'Input is not UTF-8 ({e.reason})', 1, e.start + 1)

    return text


def _numbered_lines(text: str, first: int = 1) -> List[Tuple[int, str]]:
    return [(first + k, line) for k, line in enumerate(text.splitlines())]


def _rational(token: Token) -> Fraction:
    try:
        return parse_rational(token.text)
    except ValueError as e:
        raise ParseError(str(e), token.line, token.column)


def _integer(token: Token) -> int:
    if not _INTEGER_RE.match(token.text):
        raise ParseError(f'Expected an integer, got "{token.text}"', token.line, token.column)

    return int(token.text)


def _index(token: Token) -> int:
    value = _integer(token)

    if value < 1:
        raise ParseError(f'Index {value} is below 1', token.line, token.column)

    return value


def _expect(tokens: List[Token], position: int, text: str, line: int) -> None:
    if position >= len(tokens):
        raise ParseError(f'Expected "{text}" at end of line', line, 1 + sum(len(t.text) + 1 for t in tokens))

    if tokens[position].text != text:
        raise ParseError(f'Expected "{text}", got "{tokens[position].text}"', line, tokens[position].column)


def emit_finitary(op: FinitaryOp) -> str:
    return ''.join(f'entry {i} {j} : {format_rational(x)}\n' for (i, j), x in op.items())


def emit_mackey(op: MackeyOp) -> str:
    lines = ['mackey\n']

    for d, seq in op.diags.items():
        prefix = ''.join(f'{format_rational(x)} ' for x in seq.prefix)
        lines.append(f'diag {d} : prefix {prefix}; tail {format_rational(seq.tail)}\n')

    return ''.join(lines)


def emit_operator(op: Operator) -> str:
    return emit_mackey(op) if isinstance(op, MackeyOp) else emit_finitary(op)


def _parse_entries(lines: Sequence[Tuple[int, str]]) -> FinitaryOp:
    entries: Dict[Tuple[int, int], Fraction] = {}

    for number, line in lines:
        tokens = _tokenize(line, number)

        if not tokens:
            continue

        _expect(tokens, 0, 'entry', number)

        if len(tokens) != 5:
            raise ParseError(f'Expected "entry i j : r", got {len(tokens)} fields', number, tokens[0].column)

        _expect(tokens, 3, ':', number)

        key = (_index(tokens[1]), _index(tokens[2]))
        entries[key] = entries.get(key, Fraction(0)) + _rational(tokens[4])

    return FinitaryOp(entries)


def _parse_diagonals(lines: Sequence[Tuple[int, str]]) -> MackeyOp:
    diags: List[Tuple[int, DiagonalSeq]] = []

    for number, line in lines:
        tokens = _tokenize(line, number)

        if not tokens:
            continue

        _expect(tokens, 0, 'diag', number)

        if len(tokens) < 2:
            raise ParseError('Missing diagonal offset', number, tokens[0].column + len(tokens[0].text))

        offset = _integer(tokens[1])
        _expect(tokens, 2, ':', number)
        _expect(tokens, 3, 'prefix', number)

        separator = next((k for k in range(4, len(tokens)) if tokens[k].text == ';'), None)

        if separator is None:
            raise ParseError('Missing ";" after the prefix', number, tokens[-1].column)

        prefix = tuple(_rational(t) for t in tokens[4:separator])

        _expect(tokens, separator + 1, 'tail', number)

        if len(tokens) != separator + 3:
            column = tokens[separator + 1].column
            raise ParseError('Expected exactly one rational after "tail"', number, column)

        diags.append((offset, DiagonalSeq(prefix, _rational(tokens[separator + 2]))))

    return MackeyOp(diags)


def _parse_block(lines: Sequence[Tuple[int, str]]) -> Operator:
    content = [(number, line) for number, line in lines if line.strip()]

    if content:
        number, line = content[0]
        tokens = _tokenize(line, number)

        if tokens[0].text == 'mackey':
            if len(tokens) != 1:
                raise ParseError('Unexpected text after "mackey"', number, tokens[1].column)

            return _parse_diagonals(content[1:])

    return _parse_entries(content)


def _warn_if_changed(original: str, emitted: str, what: str) -> None:
    if not original.endswith('\n') and original:
        original += '\n'

    if original != emitted:
        _logger.debug(f'{what} was re-serialized differently')
        warnings.warn(f'{what} is not in canonical form', NonCanonicalWarning, stacklevel=3)


def parse_operator(text: Union[bytes, str]) -> Operator:
    """
    A finitary operator (``entry`` lines) or a Mackey operator (``mackey``
    header and ``diag`` lines), in canonical form.
    """
    source = _decode(text)
    op = _parse_block(_numbered_lines(source))

    _warn_if_changed(source, emit_operator(op), 'Operator')

    return op


@dataclass(frozen=True)
class Directive:
    keyword: str
    args: Tuple[str, ...] = ()
    block: Tuple[str, ...] = ()
    line: int = 0
    arg_tokens: Tuple[Token, ...] = field(default=(), compare=False)
    block_numbers: Tuple[int, ...] = field(default=(), compare=False)

    def block_lines(self) -> List[Tuple[int, str]]:
        numbers = self.block_numbers or range(self.line + 1, self.line + 1 + len(self.block))
        return list(zip(numbers, self.block))

    def emit(self) -> str:
        head = ' '.join((self.keyword,) + self.args)
        return ''.join(f'{line}\n' for line in (head,) + self.block)


@dataclass(frozen=True)
class ScenarioFile:
    directives: Tuple[Directive, ...]

    @classmethod
    def parse(cls, text: Union[bytes, str]) -> 'ScenarioFile':
        source = _decode(text)
        heads: List[List[Token]] = []
        blocks: List[List[Tuple[int, str]]] = []

        for number, line in _numbered_lines(source):
            tokens = _tokenize(line, number)

            # blank lines are dropped, so they only cost a NonCanonicalWarning
            if not tokens:
                continue

            if tokens[0].text in _DIRECTIVES:
                heads.append(tokens)
                blocks.append([])
                continue

            if tokens[0].text not in _BLOCK_KEYWORDS:
                raise ParseError(f'Unknown directive "{tokens[0].text}"', number, tokens[0].column)

            if not heads:
                raise ParseError('Operator block without a directive', number, tokens[0].column)

            blocks[-1].append((number, line))

        directives = tuple(
            Directive(
                head[0].text,
                tuple(t.text for t in head[1:]),
                tuple(line for _, line in block),
                head[0].line,
                tuple(head[1:]),
                tuple(number for number, _ in block),
            )
            for head, block in zip(heads, blocks)
        )

        scenario = cls(directives)
        _warn_if_changed(source, scenario.emit(), 'Scenario file')

        return scenario

    def emit(self) -> str:
        return ''.join(d.emit() for d in self.directives)

    def find(self, keyword: str) -> List[Directive]:
        return [d for d in self.directives if d.keyword == keyword]

    def one(self, keyword: str) -> Directive:
        found = self.find(keyword)

        if len(found) != 1:
            line = found[1].line if found else 1
            raise ParseError(f'Expected exactly one "{keyword}" directive, found {len(found)}', line, 1)

        return found[0]


def load_pairing(text: Union[bytes, str]) -> PairingSpec:
    directive = ScenarioFile.parse(text).one('pairing')

    if len(directive.args) != 1:
        raise ParseError('Expected "pairing standard" or "pairing mackey"', directive.line, 1)

    kind = directive.args[0]

    if kind == 'standard':
        return PairingSpec.standard()

    if kind == 'mackey':
        op = _parse_block(directive.block_lines())

        if isinstance(op, FinitaryOp):
            op = MackeyOp.from_finitary(op)

        return PairingSpec.mackey(op)

    if kind == 'oracle':
        raise ParseError('Oracle pairings are not serializable', directive.line, 9)

    raise ParseError(f'Unknown pairing kind "{kind}"', directive.line, 9)


def emit_pairing(spec: PairingSpec) -> str:
    if spec.kind is PairingKind.STANDARD:
        return 'pairing standard\n'

    if spec.kind is PairingKind.MACKEY:
        return 'pairing mackey\n' + emit_mackey(spec.matrix)

    raise CodecError('Oracle pairings are not serializable')


def _mackey_block(directive: Directive) -> MackeyOp:
    op = _parse_block(directive.block_lines())

    return MackeyOp.from_finitary(op) if isinstance(op, FinitaryOp) else op


def load_presentation(text: Union[bytes, str]) -> AutPresentation:
    scenario = ScenarioFile.parse(text)
    scenario.one('aut')

    eps = scenario.one('eps')

    if eps.args not in (('0',), ('1',)):
        raise ParseError('Expected "eps 0" or "eps 1"', eps.line, 5)

    g = _mackey_block(scenario.one('g:'))
    g_inv = _mackey_block(scenario.one('ginv:'))

    return AutPresentation(InvertiblePair(g, g_inv), eps.args == ('1',))


def emit_presentation(h: AutPresentation) -> str:
    return (
        'aut\n'
        f'eps {int(h.eps)}\n'
        'g:\n' + emit_mackey(h.g.g)
        + 'ginv:\n' + emit_mackey(h.g.g_inv)
    )


def load_vectors(text: Union[bytes, str]) -> List[FinVec]:
    vectors = []

    for directive in ScenarioFile.parse(text).find('vector'):
        if directive.block:
            raise ParseError('Vectors take no operator block', directive.line + 1, 1)

        entries = []

        for token in directive.arg_tokens:
            index, sep, value = token.text.partition(':')

            if not sep:
                raise ParseError(f'Invalid vector entry "{token.text}", expected index:rational', token.line, token.column)

            entries.append((_index(Token(index, token.line, token.column)), _rational(Token(value, token.line, token.column))))

        vectors.append(FinVec(entries))

    return vectors


def emit_vectors(vectors: Sequence[FinVec]) -> str:
    return ''.join(f'vector {format_vector(v)}'.rstrip() + '\n' for v in vectors)


def emit_dual_prefix(prefix: DualBasisPrefix) -> str:
    lines = []

    for k, u in enumerate(prefix.u_rows, start=1):
        lines.append(f'u {k} : {format_vector(u)}')

    for k, w in enumerate(prefix.w_rows, start=1):
        lines.append(f'w {k} : {format_vector(w)}')

    return ''.join(f'{line}\n' for line in lines)


def emit_twist_class(result: TwistClass) -> str:
    lines = [f'type {result.kind.value}', f'window {result.window.n}']
    lines += [' '.join(format_rational(x) for x in row) for row in result.intertwiner_window]

    return ''.join(f'{line}\n' for line in lines)
