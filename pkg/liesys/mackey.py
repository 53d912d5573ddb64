"""
The Mackey Lie algebra gl^M_inf, realized by row- and column-finite matrices.

Only a decidable subclass is representable: matrices with finitely many
nonzero diagonals, each diagonal an eventually constant rational sequence.
The class contains every finitary matrix, the identity and the shifts, and is
closed under sums, products and transposition. Values are kept in canonical
form so that equality is structural.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from liesys.core import FinVec, add_into, check_index, format_rational, to_rational
from liesys.finitary import FinitaryOp, trace

__all__ = [
    'MackeyError', 'DiagonalSeq', 'MackeyOp', 'Scalar', 'Witness', 'CenterReport',
    'start_row', 'mk_entry_view', 'mul', 'bracket_m', 'transpose', 'is_finitary', 'is_scalar', 'split_scalar',
    'bracket_action', 'center_witness', 'dense_approx',
]

_logger = logging.getLogger('liesys').getChild('mackey')


class MackeyError(Exception):
    pass


def start_row(d: int) -> int:
    """First row on which the diagonal of offset d (column - row) has an entry."""
    return max(1, 1 - d)


@dataclass(frozen=True)
class DiagonalSeq:
    """
    Eventually constant sequence: prefix[k] at position k, tail afterwards.

    Trailing prefix values equal to the tail are trimmed on construction.
    """

    prefix: Tuple[Fraction, ...] = ()
    tail: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        tail = to_rational(self.tail)
        prefix = [to_rational(x) for x in self.prefix]

        while prefix and prefix[-1] == tail:
            prefix.pop()

        object.__setattr__(self, 'prefix', tuple(prefix))
        object.__setattr__(self, 'tail', tail)

    @classmethod
    def constant(cls, value: object) -> 'DiagonalSeq':
        return cls((), to_rational(value))

    def at(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(f'Negative sequence position {k}')

        return self.prefix[k] if k < len(self.prefix) else self.tail

    def __len__(self) -> int:
        return len(self.prefix)

    def __bool__(self) -> bool:
        return bool(self.prefix) or bool(self.tail)

    def combine(self, other: 'DiagonalSeq', c: Fraction = Fraction(1)) -> 'DiagonalSeq':
        """self + c * other, termwise."""
        n = max(len(self), len(other))

        return DiagonalSeq(
            tuple(self.at(k) + c * other.at(k) for k in range(n)),
            self.tail + c * other.tail,
        )

    def scaled(self, c: Fraction) -> 'DiagonalSeq':
        return DiagonalSeq(tuple(c * x for x in self.prefix), c * self.tail)


class MackeyOp:
    """
    Matrix in the representable Mackey class, canonical.

    ``diags`` maps an offset d = column - row to the DiagonalSeq read from
    row start_row(d) downwards. No stored diagonal is identically zero.
    """

    __slots__ = ('_diags',)

    def __init__(self, diags: Union[Mapping[int, DiagonalSeq], Iterable[Tuple[int, DiagonalSeq]]] = ()) -> None:
        items = diags.items() if isinstance(diags, Mapping) else diags
        acc: Dict[int, DiagonalSeq] = {}

        for d, seq in items:
            if isinstance(d, bool) or not isinstance(d, int):
                raise MackeyError(f'Offset {d!r} is not an integer')

            if not isinstance(seq, DiagonalSeq):
                raise MackeyError(f'Diagonal {d} is not a DiagonalSeq')

            if d in acc:
                seq = acc[d].combine(seq)

            acc[d] = seq

        self._diags = {d: seq for d, seq in sorted(acc.items()) if seq}

    @classmethod
    def _wrap(cls, diags: Dict[int, DiagonalSeq]) -> 'MackeyOp':
        op = cls.__new__(cls)
        op._diags = {d: seq for d, seq in sorted(diags.items()) if seq}
        return op

    @classmethod
    def zero(cls) -> 'MackeyOp':
        return cls._wrap({})

    @classmethod
    def scalar(cls, value: object) -> 'MackeyOp':
        return cls._wrap({0: DiagonalSeq.constant(value)})

    @classmethod
    def identity(cls) -> 'MackeyOp':
        return cls.scalar(1)

    @classmethod
    def shift_up(cls) -> 'MackeyOp':
        """e_{j} -> e_{j-1} (e_1 -> 0): ones on offset +1."""
        return cls._wrap({1: DiagonalSeq.constant(1)})

    @classmethod
    def shift_down(cls) -> 'MackeyOp':
        """e_j -> e_{j+1}: ones on offset -1."""
        return cls._wrap({-1: DiagonalSeq.constant(1)})

    @classmethod
    def elementary(cls, i: int, j: int, coef: object = 1) -> 'MackeyOp':
        check_index(i)
        check_index(j)
        d = j - i
        k = i - start_row(d)

        return cls._wrap({d: DiagonalSeq((Fraction(0),) * k + (to_rational(coef),))})

    @classmethod
    def diagonal(cls, prefix: Sequence[object], tail: object = 0, offset: int = 0) -> 'MackeyOp':
        return cls._wrap({offset: DiagonalSeq(tuple(prefix), tail)})

    @classmethod
    def from_finitary(cls, op: FinitaryOp) -> 'MackeyOp':
        rows: Dict[int, Dict[int, Fraction]] = {}

        for (i, j), x in op.items():
            d = j - i
            rows.setdefault(d, {})[i - start_row(d)] = x

        diags = {}

        for d, values in rows.items():
            prefix = [Fraction(0)] * (max(values) + 1)

            for k, x in values.items():
                prefix[k] = x

            diags[d] = DiagonalSeq(tuple(prefix))

        return cls._wrap(diags)

    @property
    def diags(self) -> Mapping[int, DiagonalSeq]:
        return MappingProxyType(self._diags)

    def offsets(self) -> Tuple[int, ...]:
        return tuple(self._diags)

    def entry(self, i: int, j: int) -> Fraction:
        seq = self._diags.get(j - i)

        if seq is None:
            return Fraction(0)

        return seq.at(i - start_row(j - i))

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        return self.entry(*key)

    def column(self, j: int) -> FinVec:
        return FinVec({j - d: seq.at(j - d - start_row(d)) for d, seq in self._diags.items() if j - d >= 1})

    def row(self, i: int) -> FinVec:
        return FinVec({i + d: seq.at(i - start_row(d)) for d, seq in self._diags.items() if i + d >= 1})

    def window(self, n: int) -> List[List[Fraction]]:
        return [[self.entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]

    def act(self, v: FinVec) -> FinVec:
        """a . v on V."""
        acc: Dict[int, Fraction] = {}

        for j, y in v.items():
            for d, seq in self._diags.items():
                i = j - d

                if i >= 1:
                    add_into(acc, i, seq.at(i - start_row(d)) * y)

        return FinVec(acc)

    def act_dual(self, w: FinVec) -> FinVec:
        """a . w on V_*, which is -(a^t) w."""
        acc: Dict[int, Fraction] = {}

        for i, y in w.items():
            for d, seq in self._diags.items():
                j = i + d

                if j >= 1:
                    add_into(acc, j, -seq.at(i - start_row(d)) * y)

        return FinVec(acc)

    def support_bound(self) -> int:
        """Largest row or column index touched by a non-tail prefix entry, plus one."""
        return max((start_row(d) + len(seq) + abs(d) for d, seq in self._diags.items()), default=0) + 1

    def transpose(self) -> 'MackeyOp':
        return transpose(self)

    def to_finitary(self) -> FinitaryOp:
        op = is_finitary(self)

        if op is None:
            raise MackeyError('Operator has a diagonal with nonzero tail and is not finitary')

        return op

    def __bool__(self) -> bool:
        return bool(self._diags)

    def __add__(self, other: 'MackeyOp') -> 'MackeyOp':
        if not isinstance(other, MackeyOp):
            return NotImplemented

        return self._combined(other, Fraction(1))

    def __sub__(self, other: 'MackeyOp') -> 'MackeyOp':
        if not isinstance(other, MackeyOp):
            return NotImplemented

        return self._combined(other, Fraction(-1))

    def _combined(self, other: 'MackeyOp', c: Fraction) -> 'MackeyOp':
        diags = dict(self._diags)

        for d, seq in other._diags.items():
            diags[d] = diags[d].combine(seq, c) if d in diags else seq.scaled(c)

        return MackeyOp._wrap(diags)

    def __neg__(self) -> 'MackeyOp':
        return self * -1

    def __mul__(self, scalar: object) -> 'MackeyOp':
        c = to_rational(scalar)
        return MackeyOp._wrap({d: seq.scaled(c) for d, seq in self._diags.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: 'MackeyOp') -> 'MackeyOp':
        if not isinstance(other, MackeyOp):
            return NotImplemented

        return mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MackeyOp):
            return NotImplemented

        return self._diags == other._diags

    def __hash__(self) -> int:
        return hash(tuple(self._diags.items()))

    def __repr__(self) -> str:
        body = '; '.join(
            f'{d}: [{" ".join(format_rational(x) for x in seq.prefix)}] {format_rational(seq.tail)}'
            for d, seq in self._diags.items()
        )
        return f'MackeyOp({body})'


def mk_entry_view(a: MackeyOp, i: int, j: int) -> Fraction:
    return a.entry(check_index(i), check_index(j))


def _product_diagonal(pairs: Sequence[Tuple[int, DiagonalSeq, int, DiagonalSeq]], d: int) -> DiagonalSeq:
    first = start_row(d)
    threshold = first

    for d1, s1, d2, s2 in pairs:
        threshold = max(
            threshold,
            1 - d1,
            start_row(d1) + len(s1),
            start_row(d2) + len(s2) - d1,
        )

    def value(i: int) -> Fraction:
        total = Fraction(0)

        for d1, s1, d2, s2 in pairs:
            k = i + d1

            if k < 1:
                continue

            total += s1.at(i - start_row(d1)) * s2.at(k - start_row(d2))

        return total

    return DiagonalSeq(tuple(value(i) for i in range(first, threshold)), value(threshold))


def mul(a: MackeyOp, b: MackeyOp) -> MackeyOp:
    """
    Matrix product, diagonal by diagonal.

    Row i of offset d collects a[i, i+d1] * b[i+d1, i+d] over d1 + d2 = d. Past
    every factor's prefix (and past the boundary row 1 - d1) the sum is
    constant, which gives the tail of the product diagonal.
    """
    grouped: Dict[int, List[Tuple[int, DiagonalSeq, int, DiagonalSeq]]] = {}

    for d1, s1 in a.diags.items():
        for d2, s2 in b.diags.items():
            grouped.setdefault(d1 + d2, []).append((d1, s1, d2, s2))

    return MackeyOp._wrap({d: _product_diagonal(pairs, d) for d, pairs in grouped.items()})


def bracket_m(a: MackeyOp, b: MackeyOp) -> MackeyOp:
    return mul(a, b) - mul(b, a)


def transpose(a: MackeyOp) -> MackeyOp:
    # offset d read from row start_row(d) and offset -d read from row
    # start_row(-d) visit the same entries in the same order
    return MackeyOp._wrap({-d: seq for d, seq in a.diags.items()})


def is_finitary(a: MackeyOp) -> Optional[FinitaryOp]:
    if any(seq.tail for seq in a.diags.values()):
        return None

    return FinitaryOp(
        ((start_row(d) + k, start_row(d) + k + d), x)
        for d, seq in a.diags.items()
        for k, x in enumerate(seq.prefix)
    )


def is_scalar(a: MackeyOp) -> Optional[Fraction]:
    """lambda if a = lambda * Id (the zero operator included), else None."""
    if not a:
        return Fraction(0)

    if a.offsets() == (0,) and not a.diags[0].prefix:
        return a.diags[0].tail

    return None


def split_scalar(a: MackeyOp) -> Optional[Tuple[Fraction, FinitaryOp]]:
    """(lambda, f) with a = lambda * Id + f and f finitary, if such a split exists."""
    tails = {d: seq.tail for d, seq in a.diags.items() if seq.tail}

    if set(tails) - {0}:
        return None

    value = tails.get(0, Fraction(0))

    return value, (a - MackeyOp.scalar(value)).to_finitary()


@dataclass(frozen=True)
class Scalar:
    value: Fraction


@dataclass(frozen=True)
class Witness:
    """psi and v with (a psi - psi a) . v != 0."""

    psi: FinitaryOp
    v: FinVec

    def defect(self, a: MackeyOp) -> FinVec:
        return bracket_action(a, self.psi, self.v)


CenterReport = Union[Scalar, Witness]


def _finitary_act(op: FinitaryOp, v: FinVec) -> FinVec:
    acc: Dict[int, Fraction] = {}

    for j, y in v.items():
        for i, x in op.column_entries(j):
            add_into(acc, i, x * y)

    return FinVec(acc)


def bracket_action(a: MackeyOp, psi: FinitaryOp, v: FinVec) -> FinVec:
    """(a psi - psi a) . v"""
    return a.act(_finitary_act(psi, v)) - _finitary_act(psi, a.act(v))


def center_witness(a: MackeyOp) -> CenterReport:
    """
    Scalar(lambda) if a is central, otherwise a Witness that a does not
    commute with some finitary psi.

    Basis vectors e_1, e_2, ... are probed in order. A probe that is not an
    eigenvector gives psi = E_{i,k} / a_{k,i}; if every probe is an
    eigenvector, two probes with distinct eigenvalues give u = e_i + e_j and
    psi with psi(u) = 0, psi(a u) = u.
    """
    value = is_scalar(a)

    if value is not None:
        return Scalar(value)

    bound = a.support_bound()
    eigenvalues: List[Tuple[int, Fraction]] = []

    for i in range(1, bound + 1):
        image = a.column(i)
        off = [k for k in image.support() if k != i]

        if off:
            k = off[0]
            witness = Witness(FinitaryOp.elementary(i, k, 1 / image[k]), FinVec.unit(i))
            _logger.debug(f'e_{i} is not an eigenvector; witness psi = E_{i},{k} / {format_rational(image[k])}')
            return _checked(a, witness)

        eigenvalues.append((i, image[i]))

    for s, (i, x) in enumerate(eigenvalues):
        for j, y in eigenvalues[s + 1:]:
            if x == y:
                continue

            alpha = 1 / (x - y)
            psi = FinitaryOp({(i, i): alpha, (j, i): alpha, (i, j): -alpha, (j, j): -alpha})
            witness = Witness(psi, FinVec({i: 1, j: 1}))
            _logger.debug(f'e_{i}, e_{j} have eigenvalues {format_rational(x)} != {format_rational(y)}')
            return _checked(a, witness)

    raise MackeyError(f'No witness among the first {bound} basis vectors for a non-scalar operator')


def _checked(a: MackeyOp, witness: Witness) -> Witness:
    if not witness.defect(a):
        raise MackeyError(f'Constructed witness {witness!r} commutes with the operator')

    return witness


def dense_approx(a: MackeyOp, rs: Sequence[FinVec]) -> FinitaryOp:
    """
    Traceless finitary psi agreeing with a on every r_k.

    psi_0 is a restricted to the columns supporting the r_k; its trace is then
    moved onto E_{m,m} for the first index m beyond every column and row used.
    """
    if not rs:
        raise MackeyError('dense_approx needs at least one vector')

    columns = sorted({j for r in rs for j in r.support()})

    psi = FinitaryOp(((i, j), x) for j in columns for i, x in a.column(j).items())

    fresh = 1 + max([0] + columns + [i for (i, _), _ in psi.items()])
    t = trace(psi)

    if t:
        psi = psi - FinitaryOp.elementary(fresh, fresh, t)

    if trace(psi):
        raise MackeyError('Approximation is not traceless')

    for r in rs:
        if _finitary_act(psi, r) != a.act(r):
            raise MackeyError(f'Approximation disagrees with the operator on {r!r}')

    _logger.debug(f'Dense approximation on {len(rs)} vectors uses columns {columns}, fresh index {fresh}')

    return psi
