"""
The Lie algebras gl_inf = Mat_N (finitary matrices) and sl_inf = ker tr.

A FinitaryOp is a sparse matrix with finitely many nonzero entries; entry
(i, j) is the coefficient of e_i (x) e^j. Module actions on V, V_*, V^* and on
tensor products V^{(x)p} (x) V_*^{(x)q} live here too, together with
window-level checks of integrability and of the large annihilator condition.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from liesys import linalg
from liesys.core import DualOracle, FinVec, Window, add_into, check_index, format_rational, to_rational
from liesys.pairing import PairingSpec, Subsystem

__all__ = [
    'FinitaryError', 'CutoffReached', 'AnnihilationFailure', 'TensorDegreeError', 'DEFAULT_MAX_TENSOR_DEGREE',
    'FinitaryOp', 'PureTensor', 'TensorElement', 'IntegrabilityReport', 'AnnihilatorReport',
    'expand_pure', 'bracket', 'trace', 'in_sl', 'eq1_rhs', 'flip', 'commutator_span_dim', 'commutator_span_check',
    'act_V', 'act_Vstar', 'act_dual_oracle', 'act_tensor', 'integrability_dim', 'large_annihilator_check',
    'system_bracket', 'system_trace',
]

DEFAULT_MAX_TENSOR_DEGREE = 4

_logger = logging.getLogger('liesys').getChild('finitary')

Key = Tuple[int, int]


class FinitaryError(Exception):
    pass


class CutoffReached(FinitaryError):
    def __init__(self, dim: int, cutoff: int) -> None:
        super().__init__(f'Span still growing at power {cutoff} (dimension {dim})')
        self.dim = dim
        self.cutoff = cutoff


class AnnihilationFailure(FinitaryError):
    def __init__(self, generator: Key, image: 'TensorElement') -> None:
        super().__init__(f'E_{generator[0]},{generator[1]} does not annihilate the element (image {image!r})')
        self.generator = generator
        self.image = image


class TensorDegreeError(FinitaryError):
    pass


class FinitaryOp:
    """Finitely supported matrix over N x N, canonical (no stored zeros)."""

    __slots__ = ('_entries', '_by_row', '_by_column')

    def __init__(self, entries: Union[Mapping[Key, object], Iterable[Tuple[Key, object]]] = ()) -> None:
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: Dict[Key, Fraction] = {}

        for (i, j), x in items:
            add_into(acc, (check_index(i), check_index(j)), to_rational(x))

        self._entries = acc
        self._by_row = None
        self._by_column = None

    @classmethod
    def _wrap(cls, acc: Dict[Key, Fraction]) -> 'FinitaryOp':
        op = cls.__new__(cls)
        op._entries = acc
        op._by_row = None
        op._by_column = None
        return op

    @classmethod
    def zero(cls) -> 'FinitaryOp':
        return cls._wrap({})

    @classmethod
    def elementary(cls, i: int, j: int, coef: object = 1) -> 'FinitaryOp':
        return cls({(i, j): coef})

    @classmethod
    def identity_window(cls, n: int) -> 'FinitaryOp':
        return cls({(i, i): 1 for i in range(1, n + 1)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> 'FinitaryOp':
        return cls(((r + 1, c + 1), x) for r, row in enumerate(rows) for c, x in enumerate(row))

    def __getitem__(self, key: Key) -> Fraction:
        return self._entries.get(key, Fraction(0))

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(sorted(self._entries.items()))

    def as_dict(self) -> Dict[Key, Fraction]:
        return dict(self._entries)

    def max_index(self) -> int:
        return max((max(key) for key in self._entries), default=0)

    def row_entries(self, i: int) -> List[Tuple[int, Fraction]]:
        """[(j, a_ij)] for the nonzero entries of row i."""
        if self._by_row is None:
            index: Dict[int, List[Tuple[int, Fraction]]] = {}

            for (r, c), x in self._entries.items():
                index.setdefault(r, []).append((c, x))

            self._by_row = index

        return self._by_row.get(i, [])

    def column_entries(self, j: int) -> List[Tuple[int, Fraction]]:
        """[(i, a_ij)] for the nonzero entries of column j."""
        if self._by_column is None:
            index: Dict[int, List[Tuple[int, Fraction]]] = {}

            for (r, c), x in self._entries.items():
                index.setdefault(c, []).append((r, x))

            self._by_column = index

        return self._by_column.get(j, [])

    def column(self, j: int) -> FinVec:
        return FinVec(self.column_entries(j))

    def row(self, i: int) -> FinVec:
        return FinVec(self.row_entries(i))

    def window(self, n: int) -> List[List[Fraction]]:
        return [[self[(i, j)] for j in range(1, n + 1)] for i in range(1, n + 1)]

    def transpose(self) -> 'FinitaryOp':
        return FinitaryOp._wrap({(j, i): x for (i, j), x in self._entries.items()})

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __add__(self, other: 'FinitaryOp') -> 'FinitaryOp':
        if not isinstance(other, FinitaryOp):
            return NotImplemented

        acc = dict(self._entries)

        for key, x in other._entries.items():
            add_into(acc, key, x)

        return FinitaryOp._wrap(acc)

    def __neg__(self) -> 'FinitaryOp':
        return FinitaryOp._wrap({key: -x for key, x in self._entries.items()})

    def __sub__(self, other: 'FinitaryOp') -> 'FinitaryOp':
        if not isinstance(other, FinitaryOp):
            return NotImplemented

        return self + (-other)

    def __mul__(self, scalar: object) -> 'FinitaryOp':
        c = to_rational(scalar)

        if not c:
            return FinitaryOp.zero()

        return FinitaryOp._wrap({key: c * x for key, x in self._entries.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: 'FinitaryOp') -> 'FinitaryOp':
        if not isinstance(other, FinitaryOp):
            return NotImplemented

        acc: Dict[Key, Fraction] = {}

        # walk the smaller support, look the other factor up by index
        if len(self) <= len(other):
            for (i, k), x in self._entries.items():
                for j, y in other.row_entries(k):
                    add_into(acc, (i, j), x * y)
        else:
            for (k, j), y in other._entries.items():
                for i, x in self.column_entries(k):
                    add_into(acc, (i, j), x * y)

        return FinitaryOp._wrap(acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitaryOp):
            return NotImplemented

        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    def __repr__(self) -> str:
        body = ', '.join(f'E{i},{j}:{format_rational(x)}' for (i, j), x in self.items())
        return f'FinitaryOp({body})'


@dataclass(frozen=True)
class PureTensor:
    """u (x) w, an element of V (x) V_*."""

    u: FinVec
    w: FinVec

    def expand(self) -> FinitaryOp:
        return FinitaryOp(((i, j), x * y) for i, x in self.u.items() for j, y in self.w.items())


def expand_pure(t: PureTensor) -> FinitaryOp:
    return t.expand()


def bracket(a: FinitaryOp, b: FinitaryOp) -> FinitaryOp:
    return a @ b - b @ a


def trace(a: FinitaryOp) -> Fraction:
    return sum((x for (i, j), x in a.items() if i == j), Fraction(0))


def in_sl(a: FinitaryOp) -> bool:
    return trace(a) == 0


def eq1_rhs(i: int, j: int, k: int, l: int) -> FinitaryOp:
    """delta_jk e_i (x) e^l - delta_il e_k (x) e^j"""
    acc: Dict[Key, Fraction] = {}

    if j == k:
        add_into(acc, (i, l), Fraction(1))

    if i == l:
        add_into(acc, (k, j), Fraction(-1))

    return FinitaryOp(acc)


def flip(a: FinitaryOp) -> FinitaryOp:
    """gl_{U,W} -> gl_{W,U}, u (x) w -> -w (x) u; in matrix form A -> -A^t."""
    return -a.transpose()


def commutator_span_dim(window: Window) -> int:
    n = window.n
    generators = [FinitaryOp.elementary(i, j) for i in window.indices() for j in window.indices()]
    rows = []

    for a in generators:
        for b in generators:
            c = bracket(a, b)

            if c:
                rows.append(c.as_dict())

    columns = [(i, j) for i in window.indices() for j in window.indices()]
    dim = linalg.rank(rows, columns)

    _logger.debug(f'Commutators of gl_{n} span a space of dimension {dim}')

    return dim


def commutator_span_check(window: Window) -> bool:
    """[gl_n, gl_n] equals the traceless n x n matrices (dimension n^2 - 1)."""
    return commutator_span_dim(window) == window.n * window.n - 1


def act_V(a: FinitaryOp, v: FinVec) -> FinVec:
    acc: Dict[int, Fraction] = {}

    for j, y in v.items():
        for i, x in a.column_entries(j):
            add_into(acc, i, x * y)

    return FinVec(acc)


def act_Vstar(a: FinitaryOp, w: FinVec) -> FinVec:
    """a . w = -(a^t) w, so that u (x) w . y = -<u, y> w."""
    acc: Dict[int, Fraction] = {}

    for i, y in w.items():
        for j, x in a.row_entries(i):
            add_into(acc, j, -x * y)

    return FinVec(acc)


def act_dual_oracle(a: FinitaryOp, f: DualOracle) -> FinVec:
    """
    a . f for an arbitrary functional f in V^*, (a . f)(x) = -f(a . x).

    The result is finitely supported (it lies in V_*) because a is finitary.
    """
    acc: Dict[int, Fraction] = {}

    for (i, j), x in a.items():
        add_into(acc, j, -x * f(i))

    return FinVec(acc)


class TensorElement:
    """
    Element of V^{(x)p} (x) V_*^{(x)q}, stored expanded in the basis
    e_{i1} (x) ... (x) e_{ip} (x) e^{j1} (x) ... (x) e^{jq}.
    """

    __slots__ = ('p', 'q', '_coeffs')

    def __init__(
        self,
        p: int,
        q: int,
        coeffs: Mapping[Tuple[Tuple[int, ...], Tuple[int, ...]], object] = (),
        *,
        max_degree: int = DEFAULT_MAX_TENSOR_DEGREE,
    ) -> None:
        if p < 0 or q < 0:
            raise TensorDegreeError(f'Tensor degrees must be nonnegative, got ({p}, {q})')

        if p + q > max_degree:
            raise TensorDegreeError(f'Tensor degree {p + q} exceeds the cap {max_degree}')

        self.p = p
        self.q = q

        acc: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs

        for (vs, ws), x in items:
            vs, ws = tuple(vs), tuple(ws)

            if len(vs) != p or len(ws) != q:
                raise TensorDegreeError(f'Basis term {vs}, {ws} does not have degree ({p}, {q})')

            for i in vs + ws:
                check_index(i)

            add_into(acc, (vs, ws), to_rational(x))

        self._coeffs = acc

    @classmethod
    def from_terms(
        cls,
        p: int,
        q: int,
        terms: Iterable[Tuple[object, Sequence[FinVec], Sequence[FinVec]]],
        *,
        max_degree: int = DEFAULT_MAX_TENSOR_DEGREE,
    ) -> 'TensorElement':
        acc: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction] = {}

        for coef, vs, ws in terms:
            c = to_rational(coef)

            if len(vs) != p or len(ws) != q:
                raise TensorDegreeError(f'Term has {len(vs)} V-slots and {len(ws)} V_*-slots, expected ({p}, {q})')

            for factors in itertools.product(*(vec.items() for vec in list(vs) + list(ws))):
                value = c

                for _, x in factors:
                    value *= x

                indices = tuple(i for i, _ in factors)
                add_into(acc, (indices[:p], indices[p:]), value)

        return cls(p, q, acc, max_degree=max_degree)

    @classmethod
    def from_vector(cls, v: FinVec) -> 'TensorElement':
        return cls(1, 0, {((i,), ()): x for i, x in v.items()})

    @classmethod
    def from_covector(cls, w: FinVec) -> 'TensorElement':
        return cls(0, 1, {((), (j,)): x for j, x in w.items()})

    @property
    def terms(self) -> List[Tuple[Fraction, List[FinVec], List[FinVec]]]:
        return [
            (x, [FinVec.unit(i) for i in vs], [FinVec.unit(j) for j in ws])
            for (vs, ws), x in self.items()
        ]

    def items(self) -> Iterator[Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction]]:
        return iter(sorted(self._coeffs.items()))

    def as_dict(self) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction]:
        return dict(self._coeffs)

    def max_index(self) -> int:
        return max((max(vs + ws) for vs, ws in self._coeffs), default=0)

    def _same_shape(self, other: 'TensorElement') -> None:
        if (self.p, self.q) != (other.p, other.q):
            raise TensorDegreeError(f'Degrees differ: ({self.p}, {self.q}) vs ({other.p}, {other.q})')

    def __add__(self, other: 'TensorElement') -> 'TensorElement':
        self._same_shape(other)
        acc = dict(self._coeffs)

        for key, x in other._coeffs.items():
            add_into(acc, key, x)

        return TensorElement(self.p, self.q, acc, max_degree=self.p + self.q)

    def __neg__(self) -> 'TensorElement':
        return TensorElement(self.p, self.q, {key: -x for key, x in self._coeffs.items()}, max_degree=self.p + self.q)

    def __sub__(self, other: 'TensorElement') -> 'TensorElement':
        return self + (-other)

    def __mul__(self, scalar: object) -> 'TensorElement':
        c = to_rational(scalar)
        return TensorElement(self.p, self.q, {key: c * x for key, x in self._coeffs.items()}, max_degree=self.p + self.q)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented

        return (self.p, self.q, self._coeffs) == (other.p, other.q, other._coeffs)

    def __hash__(self) -> int:
        return hash((self.p, self.q, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        body = ' + '.join(
            f'{format_rational(x)}*' + '(x)'.join([f'e{i}' for i in vs] + [f'e^{j}' for j in ws])
            for (vs, ws), x in self.items()
        )
        return f'TensorElement({self.p}, {self.q}: {body or "0"})'


def act_tensor(a: FinitaryOp, t: TensorElement) -> TensorElement:
    """Leibniz action: a on each slot in turn, by act_V on V-slots and act_Vstar on V_*-slots."""
    acc: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction] = {}

    for (vs, ws), c in t.items():
        for s, k in enumerate(vs):
            for i, x in a.column_entries(k):
                add_into(acc, (vs[:s] + (i,) + vs[s + 1:], ws), c * x)

        for s, k in enumerate(ws):
            for j, x in a.row_entries(k):
                add_into(acc, (vs, ws[:s] + (j,) + ws[s + 1:]), -c * x)

    return TensorElement(t.p, t.q, acc, max_degree=t.p + t.q)


@dataclass(frozen=True)
class IntegrabilityReport:
    dim: int
    power: int
    stabilized: bool


def integrability_dim(a: FinitaryOp, m: TensorElement, cutoff: int, *, strict: bool = False) -> IntegrabilityReport:
    """
    dim span{m, a.m, a^2.m, ...}, found by growing an echelon basis until the
    next power falls into the span.

    If the span still grows at power ``cutoff`` the report has
    ``stabilized=False``; with ``strict`` CutoffReached is raised instead.
    """
    if cutoff < 1:
        raise ValueError(f'Cutoff must be positive, got {cutoff}')

    basis = linalg.EchelonBasis()
    current = m

    for k in range(cutoff + 1):
        if not basis.add(current.as_dict()):
            return IntegrabilityReport(dim=len(basis), power=k, stabilized=True)

        current = act_tensor(a, current)

    if strict:
        raise CutoffReached(len(basis), cutoff)

    _logger.warning(f'Span not stabilized after {cutoff} powers (dimension {len(basis)})')

    return IntegrabilityReport(dim=len(basis), power=cutoff, stabilized=False)


@dataclass(frozen=True)
class AnnihilatorReport:
    bound: int
    subsystem: Subsystem
    checked: int


def large_annihilator_check(m: TensorElement, window: Window) -> AnnihilatorReport:
    """
    Every E_ij with N < i, j <= window.n kills m, N the largest index in m.

    The witnessing finite subsystem is (span e_1..e_N, span e^1..e^N); its
    perpendicular block is where the checked generators live.
    """
    bound = m.max_index()
    checked = 0

    for i in range(bound + 1, window.n + 1):
        for j in range(bound + 1, window.n + 1):
            image = act_tensor(FinitaryOp.elementary(i, j), m)

            if image:
                raise AnnihilationFailure((i, j), image)

            checked += 1

    return AnnihilatorReport(bound=bound, subsystem=Subsystem.coordinate(bound), checked=checked)


def system_bracket(spec: PairingSpec, a: FinitaryOp, b: FinitaryOp) -> FinitaryOp:
    """
    Bracket of gl_{U,W} in u_i (x) w_j coordinates:
    [u1 (x) w1, u2 (x) w2] = <u2, w1> u1 (x) w2 - <u1, w2> u2 (x) w1.
    """

    def product(x: FinitaryOp, y: FinitaryOp) -> Dict[Key, Fraction]:
        acc: Dict[Key, Fraction] = {}

        for (i, j), s in x.items():
            for (k, l), t in y.items():
                p = spec.entry(k, j)

                if p:
                    add_into(acc, (i, l), s * p * t)

        return acc

    forward = FinitaryOp(product(a, b))
    backward = FinitaryOp(product(b, a))

    return forward - backward


def system_trace(spec: PairingSpec, a: FinitaryOp) -> Fraction:
    """The pairing contracted on a; sl_{U,W} is its kernel."""
    return sum((x * spec.entry(i, j) for (i, j), x in a.items()), Fraction(0))
