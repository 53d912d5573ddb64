"""
Exact scalars, finitely supported vectors and functionals, and windows.

All values here are rationals (``fractions.Fraction``): the ground field of the
algebra is restricted to its computable subfield, so every result is a rational
point of the corresponding complex statement. Basis indices are 1-based, as in
``e_1, e_2, ...``.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, Iterator, Mapping, Optional, Tuple, Union

__all__ = [
    'Rational', 'Index', 'CoreError', 'IndexOutOfRange', 'Window', 'FinVec', 'DualOracle',
    'to_rational', 'check_index', 'add_into', 'parse_rational', 'format_rational',
    'parse_vector', 'format_vector', 'vec_pair_std', 'apply_oracle',
]

Rational = Fraction
Index = int

_logger = logging.getLogger('liesys').getChild('core')

_RATIONAL_RE = re.compile(r'^[+-]?\d+(/\d+)?$')


class CoreError(Exception):
    pass


class IndexOutOfRange(CoreError):
    pass


def to_rational(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value

    # bool is an int subclass, and floats would silently lose exactness
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f'{value!r} is not an exact rational')

    if isinstance(value, int):
        return Fraction(value)

    if isinstance(value, str):
        return parse_rational(value)

    raise TypeError(f'{value!r} is not an exact rational')


def check_index(i: object) -> int:
    if isinstance(i, bool) or not isinstance(i, int):
        raise IndexOutOfRange(f'Index {i!r} is not an integer')

    if i < 1:
        raise IndexOutOfRange(f'Index {i} is below 1')

    return i


def add_into(acc: Dict[Hashable, Fraction], key: Hashable, value: Fraction) -> None:
    """acc[key] += value, keeping acc free of zero entries."""
    if not value:
        return

    total = acc.get(key, 0) + value

    if total:
        acc[key] = total
    else:
        del acc[key]


def parse_rational(text: str) -> Fraction:
    text = text.strip()

    if not _RATIONAL_RE.match(text):
        raise ValueError(f'Invalid rational "{text}"')

    if '/' in text:
        num, den = text.split('/')

        if int(den) == 0:
            raise ValueError(f'Zero denominator in "{text}"')

        return Fraction(int(num), int(den))

    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)

    return f'{value.numerator}/{value.denominator}'


@dataclass(frozen=True)
class Window:
    n: int

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f'Window size must be a positive integer, got {self.n!r}')

    def indices(self) -> range:
        return range(1, self.n + 1)

    def contains(self, vec: 'FinVec') -> bool:
        return vec.max_index() <= self.n

    def grow(self, by: int) -> 'Window':
        return Window(self.n + by)


class FinVec:
    """
    Finitely supported rational vector over the index set {1, 2, ...}.

    Serves both for elements of V (coordinates in e_i) and of V_* (coordinates
    in e^i); which one is meant is up to the caller. Zero entries are never
    stored, so equality is plain map equality.
    """

    __slots__ = ('_entries',)

    def __init__(self, entries: Union[Mapping[int, object], Iterable[Tuple[int, object]]] = ()) -> None:
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: Dict[int, Fraction] = {}

        for i, x in items:
            add_into(acc, check_index(i), to_rational(x))

        self._entries = acc

    @classmethod
    def _wrap(cls, acc: Dict[int, Fraction]) -> 'FinVec':
        vec = cls.__new__(cls)
        vec._entries = acc
        return vec

    @classmethod
    def unit(cls, i: int, coef: object = 1) -> 'FinVec':
        return cls({i: coef})

    @classmethod
    def zero(cls) -> 'FinVec':
        return cls._wrap({})

    @classmethod
    def from_dense(cls, values: Iterable[object], start: int = 1) -> 'FinVec':
        return cls((start + k, x) for k, x in enumerate(values))

    @classmethod
    def combine(cls, terms: Iterable[Tuple[object, 'FinVec']]) -> 'FinVec':
        """Linear combination sum(c * v) of (c, v) pairs."""
        acc: Dict[int, Fraction] = {}

        for coef, vec in terms:
            c = to_rational(coef)

            if not c:
                continue

            for i, x in vec._entries.items():
                add_into(acc, i, c * x)

        return cls._wrap(acc)

    def __getitem__(self, i: int) -> Fraction:
        return self._entries.get(i, Fraction(0))

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self._entries.items()))

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self._entries)

    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self._entries))

    def max_index(self) -> int:
        return max(self._entries, default=0)

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __add__(self, other: 'FinVec') -> 'FinVec':
        if not isinstance(other, FinVec):
            return NotImplemented

        acc = dict(self._entries)

        for i, x in other._entries.items():
            add_into(acc, i, x)

        return FinVec._wrap(acc)

    def __neg__(self) -> 'FinVec':
        return FinVec._wrap({i: -x for i, x in self._entries.items()})

    def __sub__(self, other: 'FinVec') -> 'FinVec':
        if not isinstance(other, FinVec):
            return NotImplemented

        return self + (-other)

    def __mul__(self, scalar: object) -> 'FinVec':
        c = to_rational(scalar)

        if not c:
            return FinVec.zero()

        return FinVec._wrap({i: c * x for i, x in self._entries.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: object) -> 'FinVec':
        return self * (1 / to_rational(scalar))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinVec):
            return NotImplemented

        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    def __repr__(self) -> str:
        return f"FinVec('{format_vector(self)}')"


def format_vector(vec: FinVec) -> str:
    return ' '.join(f'{i}:{format_rational(x)}' for i, x in vec.items())


def parse_vector(text: str) -> FinVec:
    pairs = []

    for token in text.split():
        index, sep, value = token.partition(':')

        if not sep or not index.isdigit():
            raise ValueError(f'Invalid vector entry "{token}", expected index:rational')

        pairs.append((int(index), parse_rational(value)))

    return FinVec(pairs)


def vec_pair_std(v: FinVec, f: FinVec) -> Fraction:
    """The standard pairing of V with V_*: e^i(e_j) = delta_ij."""
    small, large = (v, f) if len(v) <= len(f) else (f, v)

    return sum((x * large[i] for i, x in small._entries.items()), Fraction(0))


@dataclass(frozen=True)
class DualOracle:
    """
    An arbitrary functional on V, given by its values on the basis e_i.

    Elements of V^* need not have finite support; ``support_hint`` records one
    when it is known.
    """

    entry: Callable[[int], object]
    support_hint: Optional[frozenset] = None

    def __call__(self, i: int) -> Fraction:
        if self.support_hint is not None and i not in self.support_hint:
            return Fraction(0)

        return to_rational(self.entry(check_index(i)))

    @classmethod
    def from_vec(cls, vec: FinVec) -> 'DualOracle':
        return cls(vec.__getitem__, frozenset(vec.support()))

    @classmethod
    def constant(cls, value: object) -> 'DualOracle':
        c = to_rational(value)
        return cls(lambda i: c)


def apply_oracle(f: DualOracle, v: FinVec) -> Fraction:
    return sum((f(i) * x for i, x in v.items()), Fraction(0))
