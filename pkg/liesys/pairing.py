"""
Linear systems (U, W) with a nondegenerate pairing.

U and W are written in fixed bases {u_i} and {w_j}; a PairingSpec gives the
entries <u_i, w_j>. Nondegeneracy is never assumed globally: each operation
certifies what it needs inside a window and fails loudly otherwise.
"""

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Callable, List, Optional, Sequence, Tuple

from liesys import linalg
from liesys.core import FinVec, Window, to_rational, vec_pair_std

if TYPE_CHECKING:
    from liesys.finitary import FinitaryOp
    from liesys.mackey import MackeyOp

__all__ = [
    'PairingError', 'DegenerateWithinWindow', 'OutsideWindow', 'PairingKind', 'Side', 'PairingSpec', 'Subsystem',
    'pair', 'gram', 'pairing_matrix', 'complement_subsystem', 'perp_in_window', 'envelope',
]

_logger = logging.getLogger('liesys').getChild('pairing')


class PairingError(Exception):
    pass


class DegenerateWithinWindow(PairingError):
    pass


class OutsideWindow(PairingError):
    pass


class PairingKind(enum.Enum):
    STANDARD = 'standard'
    MACKEY = 'mackey'
    ORACLE = 'oracle'


class Side(enum.Enum):
    U = 'U'
    W = 'W'


@dataclass(frozen=True)
class PairingSpec:
    kind: PairingKind
    matrix: Optional['MackeyOp'] = None
    oracle: Optional[Callable[[int, int], object]] = field(default=None, compare=False)
    search_bound: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is PairingKind.MACKEY and self.matrix is None:
            raise PairingError('Mackey pairing needs a matrix')

        if self.kind is PairingKind.ORACLE:
            if self.oracle is None:
                raise PairingError('Oracle pairing needs an entry function')

            if not self.search_bound or self.search_bound < 1:
                raise PairingError('Oracle pairing needs a positive search bound')

    @classmethod
    def standard(cls) -> 'PairingSpec':
        return cls(PairingKind.STANDARD)

    @classmethod
    def mackey(cls, matrix: 'MackeyOp') -> 'PairingSpec':
        return cls(PairingKind.MACKEY, matrix=matrix)

    @classmethod
    def from_oracle(cls, entry: Callable[[int, int], object], search_bound: int) -> 'PairingSpec':
        return cls(PairingKind.ORACLE, oracle=entry, search_bound=search_bound)

    @property
    def serializable(self) -> bool:
        return self.kind is not PairingKind.ORACLE

    def entry(self, i: int, j: int) -> Fraction:
        """<u_i, w_j>"""
        if self.kind is PairingKind.STANDARD:
            return Fraction(1) if i == j else Fraction(0)

        if self.kind is PairingKind.MACKEY:
            return self.matrix.entry(i, j)

        return to_rational(self.oracle(i, j))


def pair(spec: PairingSpec, u: FinVec, w: FinVec) -> Fraction:
    if spec.kind is PairingKind.STANDARD:
        return vec_pair_std(u, w)

    if spec.kind is PairingKind.MACKEY:
        return vec_pair_std(u, spec.matrix.act(w))

    total = Fraction(0)

    for i, x in u.items():
        for j, y in w.items():
            total += x * spec.entry(i, j) * y

    return total


def gram(spec: PairingSpec, us: Sequence[FinVec], ws: Sequence[FinVec]) -> List[List[Fraction]]:
    return [[pair(spec, u, w) for w in ws] for u in us]


def pairing_matrix(spec: PairingSpec, window: Window) -> List[List[Fraction]]:
    """The window block of <u_i, w_j>."""
    return [[spec.entry(i, j) for j in window.indices()] for i in window.indices()]


def _as_rows(matrix: Sequence[Sequence[Fraction]]) -> List[dict]:
    return [{c: x for c, x in enumerate(row) if x} for row in matrix]


@dataclass(frozen=True)
class Subsystem:
    u_basis: Tuple[FinVec, ...]
    w_basis: Tuple[FinVec, ...]
    gram: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.u_basis)

        if len(self.w_basis) != k:
            raise PairingError(f'Subsystem sides differ in dimension ({k} != {len(self.w_basis)})')

        if len(self.gram) != k or any(len(row) != k for row in self.gram):
            raise PairingError(f'Subsystem gram must be {k}x{k}')

        if linalg.rank(_as_rows(self.gram), range(k)) != k:
            raise PairingError('Subsystem gram is singular')

    @classmethod
    def build(cls, spec: PairingSpec, us: Sequence[FinVec], ws: Sequence[FinVec]) -> 'Subsystem':
        matrix = gram(spec, us, ws)

        return cls(tuple(us), tuple(ws), tuple(tuple(row) for row in matrix))

    @classmethod
    def coordinate(cls, n: int) -> 'Subsystem':
        """(span e_1..e_n, span e^1..e^n) of the standard system."""
        basis = tuple(FinVec.unit(i) for i in range(1, n + 1))
        identity = tuple(tuple(Fraction(int(r == c)) for c in range(n)) for r in range(n))

        return cls(basis, basis, identity)

    @property
    def dimension(self) -> int:
        return len(self.u_basis)

    def contains_operator(self, op: 'FinitaryOp') -> bool:
        """Whether op (in u_i (x) w_j coordinates) lies in span(u_basis) (x) span(w_basis)."""
        columns = {}
        rows = {}

        for (i, j), x in op.items():
            columns.setdefault(j, {})[i] = x
            rows.setdefault(i, {})[j] = x

        u_rows = [vec.as_dict() for vec in self.u_basis]
        w_rows = [vec.as_dict() for vec in self.w_basis]

        return (
            linalg.rank(u_rows + list(columns.values())) == linalg.rank(u_rows)
            and linalg.rank(w_rows + list(rows.values())) == linalg.rank(w_rows)
        )


def _check_window(vectors: Sequence[FinVec], window: Window, what: str) -> None:
    for vec in vectors:
        if not window.contains(vec):
            raise OutsideWindow(f'{what} {vec!r} is not supported within window {window.n}')


def complement_subsystem(spec: PairingSpec, u_f: Sequence[FinVec], window: Window) -> Subsystem:
    """
    A subsystem (U_f, W_f) with W_f a direct complement of U_f^perp, found
    inside the window's span of w-basis vectors.

    W_f is spanned by the lexicographically smallest set of coordinate vectors
    w_j that pairs nondegenerately with U_f.
    """
    _check_window(u_f, window, 'Generator')

    k = len(u_f)

    if linalg.rank([vec.as_dict() for vec in u_f]) != k:
        raise PairingError('U_f generators are linearly dependent')

    chosen = []
    columns = linalg.EchelonBasis()

    for j in window.indices():
        if len(chosen) == k:
            break

        w_j = FinVec.unit(j)
        column = {a: pair(spec, u, w_j) for a, u in enumerate(u_f)}

        if columns.add(column):
            chosen.append(w_j)

    if len(chosen) < k:
        raise DegenerateWithinWindow(
            f'Only {len(chosen)} of {k} complement vectors found within window {window.n}'
        )

    _logger.debug(f'Complement of a {k}-dimensional U_f uses w-indices {[w.support()[0] for w in chosen]}')

    return Subsystem.build(spec, u_f, chosen)


def perp_in_window(spec: PairingSpec, side: Side, gens: Sequence[FinVec], window: Window) -> List[FinVec]:
    """
    Basis of the perpendicular space of gens, intersected with the window.

    Side.W: {w : <g, w> = 0 for all g}, gens in U.
    Side.U: {u : <u, g> = 0 for all g}, gens in W.
    """
    _check_window(gens, window, 'Generator')

    rows = []

    for g in gens:
        if side is Side.W:
            row = {j: pair(spec, g, FinVec.unit(j)) for j in window.indices()}
        else:
            row = {i: pair(spec, FinVec.unit(i), g) for i in window.indices()}

        rows.append({key: x for key, x in row.items() if x})

    return [FinVec(vec) for vec in linalg.nullspace(rows, list(window.indices()))]


def _gram_rank(spec: PairingSpec, us: Sequence[int], ws: Sequence[int]) -> int:
    rows = []

    for i in us:
        row = {}

        for b, j in enumerate(ws):
            x = spec.entry(i, j)

            if x:
                row[b] = x

        rows.append(row)

    return linalg.rank(rows, range(len(ws)))


def envelope(spec: PairingSpec, elems: Sequence['FinitaryOp'], window: Window) -> Subsystem:
    """
    A finite-dimensional subsystem (U_f, W_f) with every elem in U_f (x) W_f.

    Starts from the coordinate spans of the supports, adds w_j (ascending) until
    the gram has full row rank, then u_i (ascending) until it is square.
    """
    us = sorted({i for op in elems for (i, _), _ in op.items()})
    ws = sorted({j for op in elems for (_, j), _ in op.items()})

    if (us and us[-1] > window.n) or (ws and ws[-1] > window.n):
        raise OutsideWindow(f'Operators are not supported within window {window.n}')

    current = _gram_rank(spec, us, ws)

    for j in window.indices():
        if current == len(us):
            break

        if j in ws:
            continue

        grown = _gram_rank(spec, us, sorted(ws + [j]))

        if grown > current:
            ws = sorted(ws + [j])
            current = grown

    if current < len(us):
        raise DegenerateWithinWindow(f'W-side enlargement stalled at rank {current} < {len(us)} in window {window.n}')

    for i in window.indices():
        if current == len(ws):
            break

        if i in us:
            continue

        grown = _gram_rank(spec, sorted(us + [i]), ws)

        if grown > current:
            us = sorted(us + [i])
            current = grown

    if current < len(ws):
        raise DegenerateWithinWindow(f'U-side enlargement stalled at rank {current} < {len(ws)} in window {window.n}')

    subsystem = Subsystem.build(spec, [FinVec.unit(i) for i in us], [FinVec.unit(j) for j in ws])

    for op in elems:
        if not subsystem.contains_operator(op):
            raise PairingError(f'Envelope does not contain {op!r}')

    _logger.debug(f'Envelope of {len(elems)} operators has dimension {subsystem.dimension}')

    return subsystem
