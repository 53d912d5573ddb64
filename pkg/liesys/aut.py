"""
Automorphisms of gl^M_inf and the twisted modules they define.

Every automorphism is presented as h(a) = g . tau^eps(a) . g^{-1}, with g an
invertible Mackey matrix carried together with its inverse, and tau the
involution a -> -a^t. classify_twist decides whether V^h is isomorphic to V or
to V_* by solving for an intertwiner on growing windows, looking at h only
through its values on the generators E_ij.
"""

import enum
import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from liesys import linalg
from liesys.core import FinVec, Window, to_rational
from liesys.finitary import FinitaryOp, trace
from liesys.mackey import MackeyOp, dense_approx, is_finitary, mul, transpose

__all__ = [
    'AutError', 'NotInvertible', 'Inconclusive', 'InvertiblePair', 'AutPresentation', 'TwistType', 'TwistClass',
    'DEFAULT_START_WINDOW', 'DEFAULT_WINDOW_STEP', 'DEFAULT_MAX_WINDOW',
    'tau', 'apply_aut', 'compose_aut', 'invert_aut', 'twist_act_V', 'twist_act_Vstar',
    'classify_twist', 'verify_intertwiner', 'dense_approx_twisted',
]

DEFAULT_START_WINDOW = 4
DEFAULT_WINDOW_STEP = 5
DEFAULT_MAX_WINDOW = 30

_logger = logging.getLogger('liesys').getChild('aut')

Matrix = List[List[Fraction]]


class AutError(Exception):
    pass


class NotInvertible(AutError):
    pass


class Inconclusive(AutError):
    def __init__(self, max_window: Window) -> None:
        super().__init__(f'No stable intertwiner for h or h o tau up to window {max_window.n}')
        self.max_window = max_window


@dataclass(frozen=True)
class InvertiblePair:
    """g together with a certified two-sided inverse."""

    g: MackeyOp
    g_inv: MackeyOp

    def __post_init__(self) -> None:
        identity = MackeyOp.identity()

        if mul(self.g, self.g_inv) != identity or mul(self.g_inv, self.g) != identity:
            raise NotInvertible(f'{self.g_inv!r} is not a two-sided inverse of {self.g!r}')

    @classmethod
    def identity(cls) -> 'InvertiblePair':
        return cls(MackeyOp.identity(), MackeyOp.identity())

    @classmethod
    def scalar(cls, value: object) -> 'InvertiblePair':
        c = to_rational(value)

        if not c:
            raise NotInvertible('Zero scalar')

        return cls(MackeyOp.scalar(c), MackeyOp.scalar(1 / c))

    @classmethod
    def permutation(cls, mapping: Mapping[int, int]) -> 'InvertiblePair':
        """g e_j = e_{mapping[j]}; indices missing from mapping are fixed."""
        moved = {j: k for j, k in mapping.items() if j != k}

        if sorted(moved) != sorted(moved.values()):
            raise NotInvertible(f'{dict(mapping)} is not a permutation of its support')

        g = MackeyOp.identity()

        for j, k in moved.items():
            g = g - MackeyOp.elementary(j, j) + MackeyOp.elementary(k, j)

        return cls(g, transpose(g))

    @classmethod
    def elementary(cls, i: int, j: int, coef: object) -> 'InvertiblePair':
        """I + c E_ij, i != j."""
        if i == j:
            raise NotInvertible('Elementary transvections need i != j')

        e = MackeyOp.elementary(i, j, coef)
        identity = MackeyOp.identity()

        return cls(identity + e, identity - e)

    @classmethod
    def unipotent(cls, nilpotent: FinitaryOp) -> 'InvertiblePair':
        """I + N for a strictly triangular finitary N; the inverse is the finite series sum (-N)^k."""
        keys = [key for key, _ in nilpotent.items()]

        if not (all(i < j for i, j in keys) or all(i > j for i, j in keys)):
            raise NotInvertible('Only strictly triangular parts give a finite inverse series')

        n = MackeyOp.from_finitary(nilpotent)
        inverse = MackeyOp.identity()
        power = MackeyOp.identity()

        while True:
            power = mul(power, -n)

            if not power:
                break

            inverse = inverse + power

        return cls(MackeyOp.identity() + n, inverse)

    @classmethod
    def diagonal(cls, prefix: Sequence[object], tail: object = 1) -> 'InvertiblePair':
        values = [to_rational(x) for x in prefix]
        tail = to_rational(tail)

        if not tail or not all(values):
            raise NotInvertible('Diagonal with a zero entry')

        return cls(MackeyOp.diagonal(values, tail), MackeyOp.diagonal([1 / x for x in values], 1 / tail))

    def inverse(self) -> 'InvertiblePair':
        return InvertiblePair(self.g_inv, self.g)

    def transpose_inverse(self) -> 'InvertiblePair':
        """sigma(g) = (g^t)^{-1}."""
        return InvertiblePair(transpose(self.g_inv), transpose(self.g))

    def __matmul__(self, other: 'InvertiblePair') -> 'InvertiblePair':
        if not isinstance(other, InvertiblePair):
            return NotImplemented

        return InvertiblePair(mul(self.g, other.g), mul(other.g_inv, self.g_inv))


def tau(a: MackeyOp) -> MackeyOp:
    return -transpose(a)


@dataclass(frozen=True)
class AutPresentation:
    """h(a) = g . tau^eps(a) . g^{-1}"""

    g: InvertiblePair
    eps: bool = False

    @classmethod
    def identity(cls) -> 'AutPresentation':
        return cls(InvertiblePair.identity(), False)

    @classmethod
    def tau_only(cls) -> 'AutPresentation':
        return cls(InvertiblePair.identity(), True)

    @classmethod
    def conjugation(cls, g: InvertiblePair) -> 'AutPresentation':
        return cls(g, False)

    def __call__(self, a: MackeyOp) -> MackeyOp:
        return apply_aut(self, a)


def apply_aut(h: AutPresentation, a: MackeyOp) -> MackeyOp:
    inner = tau(a) if h.eps else a

    return mul(mul(h.g.g, inner), h.g.g_inv)


def _sigma(g: InvertiblePair, times: bool) -> InvertiblePair:
    return g.transpose_inverse() if times else g


def compose_aut(h1: AutPresentation, h2: AutPresentation) -> AutPresentation:
    """
    h1 o h2. Moving tau^eps1 past the conjugation by g2 turns g2 into
    sigma^eps1(g2), so the result is (g1 . sigma^eps1(g2), eps1 xor eps2).
    """
    return AutPresentation(h1.g @ _sigma(h2.g, h1.eps), h1.eps != h2.eps)


def invert_aut(h: AutPresentation) -> AutPresentation:
    return AutPresentation(_sigma(h.g.inverse(), h.eps), h.eps)


def twist_act_V(h: AutPresentation, a: MackeyOp, v: FinVec) -> FinVec:
    """a acting on V^h."""
    return apply_aut(h, a).act(v)


def twist_act_Vstar(h: AutPresentation, a: MackeyOp, w: FinVec) -> FinVec:
    """a acting on (V_*)^h."""
    return apply_aut(h, a).act_dual(w)


class TwistType(enum.Enum):
    V = 'V'
    VSTAR = 'V*'


@dataclass(frozen=True)
class TwistClass:
    kind: TwistType
    intertwiner_window: Tuple[Tuple[Fraction, ...], ...]
    window: Window


Automorphism = Union[AutPresentation, Callable[[MackeyOp], MackeyOp]]


def _generator_images(h: Automorphism, kind: TwistType) -> Callable[[int, int], FinitaryOp]:
    apply = functools.partial(apply_aut, h) if isinstance(h, AutPresentation) else h

    @functools.lru_cache(maxsize=None)
    def image(i: int, j: int) -> FinitaryOp:
        # (h o tau)(E_ij) = -h(E_ji)
        if kind is TwistType.V:
            value = apply(MackeyOp.elementary(i, j))
        else:
            value = -apply(MackeyOp.elementary(j, i))

        op = is_finitary(value)

        if op is None:
            raise AutError(f'Image of E_{i},{j} is not finitary')

        return op

    return image


def _fits(op: FinitaryOp, n: int) -> bool:
    return op.max_index() <= n


def _hub(n: int) -> List[Tuple[int, int]]:
    return [(1, 1)] + [g for j in range(2, n + 1) for g in ((1, j), (j, 1))]


def _core_size(image: Callable[[int, int], FinitaryOp], n: int) -> int:
    """Largest m such that E_11, E_1j, E_j1 (j <= m) all have images inside the n x n window."""
    if not _fits(image(1, 1), n):
        return 0

    m = 1

    while m < n and _fits(image(1, m + 1), n) and _fits(image(m + 1, 1), n):
        m += 1

    return m


def _equations(generators: Sequence[Tuple[int, int]], image: Callable[[int, int], FinitaryOp], n: int) -> List[Dict]:
    """Rows of f . h(E_ij) - E_ij . f = 0 over the unknowns f[r, c], r, c <= n."""
    rows = []

    for i, j in generators:
        h_e = image(i, j)
        columns = sorted({c for (_, c), _ in h_e.items()})

        for r in range(1, n + 1):
            targets = range(1, n + 1) if r == i else columns

            for c in targets:
                row: Dict[Tuple[int, int], Fraction] = {}

                for k, x in h_e.column_entries(c):
                    row[(r, k)] = row.get((r, k), Fraction(0)) + x

                if r == i:
                    row[(j, c)] = row.get((j, c), Fraction(0)) - 1

                row = {key: x for key, x in row.items() if x}

                if row:
                    rows.append(row)

    return rows


def _normalized(core: Matrix) -> Matrix:
    m = len(core)

    for c in range(m):
        for r in range(m):
            if core[r][c]:
                pivot = core[r][c]
                return [[x / pivot for x in row] for row in core]

    return core


def _solve_window(image: Callable[[int, int], FinitaryOp], n: int) -> Optional[Matrix]:
    m = _core_size(image, n)

    if m < 1:
        return None

    unknowns = [(r, c) for r in range(1, n + 1) for c in range(1, n + 1)]
    solutions = linalg.nullspace(_equations(_hub(m), image, n), unknowns)

    projected = [{key: x for key, x in vec.items() if key[0] <= m and key[1] <= m} for vec in solutions]
    projected = [vec for vec in projected if vec]

    if linalg.rank(projected) != 1:
        _logger.debug(f'Window {n}: core {m} has a {linalg.rank(projected)}-dimensional solution projection')
        return None

    core = [[projected[0].get((r, c), Fraction(0)) for c in range(1, m + 1)] for r in range(1, m + 1)]

    if linalg.rank([{c: x for c, x in enumerate(row) if x} for row in core], range(m)) != m:
        _logger.debug(f'Window {n}: core {m} intertwiner is singular')
        return None

    return _normalized(core)


def _proportional(a: Matrix, b: Matrix) -> bool:
    m = min(len(a), len(b))
    ratio = None

    for r in range(m):
        for c in range(m):
            x, y = a[r][c], b[r][c]

            if bool(x) != bool(y):
                return False

            if x:
                if ratio is None:
                    ratio = x / y
                elif x / y != ratio:
                    return False

    return ratio is not None


def _window_starts(start_window: Window, max_window: Window, step: int) -> List[int]:
    """Starts n of the triples n, n + 1, n + 2; the last triple always ends at max_window."""
    last = max_window.n - 2
    starts = list(range(start_window.n, last + 1, step))

    if starts[-1] != last:
        starts.append(last)

    return starts


def _stable_intertwiner(
    image: Callable[[int, int], FinitaryOp],
    start_window: Window,
    max_window: Window,
    step: int,
) -> Optional[Matrix]:
    for n in _window_starts(start_window, max_window, step):
        solves = []

        for size in (n, n + 1, n + 2):
            core = _solve_window(image, size)

            if core is None:
                break

            solves.append(core)

        if len(solves) == 3 and all(_proportional(solves[0], other) for other in solves[1:]):
            _logger.debug(f'Intertwiner stable on windows {n}..{n + 2} with core {len(solves[-1])}')
            return solves[-1]

        _logger.debug(f'No stable intertwiner at window {n}')

    return None


def classify_twist(
    h: Automorphism,
    start_window: Window = Window(DEFAULT_START_WINDOW),
    max_window: Window = Window(DEFAULT_MAX_WINDOW),
    step: int = DEFAULT_WINDOW_STEP,
) -> TwistClass:
    """
    V^h ~ V if some invertible f satisfies f . h(a) = a . f; otherwise try h o tau,
    whose success means V^h ~ V_*.

    The equations are imposed for E_11, E_1j and E_j1 (which generate gl_m)
    as long as their images fit in the window; the solution restricted to the
    leading m x m block must be unique up to scalar, invertible, and agree
    over three consecutive window sizes.
    """
    if step < 1:
        raise ValueError(f'Window step must be positive, got {step}')

    if max_window.n < start_window.n + 2:
        raise ValueError(f'Max window {max_window.n} leaves no room for windows {start_window.n}..{start_window.n + 2}')

    for kind in (TwistType.V, TwistType.VSTAR):
        image = _generator_images(h, kind)
        core = _stable_intertwiner(image, start_window, max_window, step)

        if core is None:
            _logger.debug(f'No intertwiner of type {kind.value} up to window {max_window.n}')
            continue

        if not _verify(image, core):
            raise AutError(f'Type {kind.value} intertwiner fails its own equations')

        return TwistClass(kind, tuple(tuple(row) for row in core), Window(len(core)))

    raise Inconclusive(max_window)


def _verify(image: Callable[[int, int], FinitaryOp], f: Matrix) -> bool:
    m = len(f)

    for i in range(1, m + 1):
        for j in range(1, m + 1):
            h_e = image(i, j)

            if not _fits(h_e, m):
                continue

            for r in range(1, m + 1):
                for c in range(1, m + 1):
                    lhs = sum((f[r - 1][k - 1] * x for k, x in h_e.column_entries(c)), Fraction(0))
                    rhs = f[j - 1][c - 1] if r == i else Fraction(0)

                    if lhs != rhs:
                        return False

    return True


def verify_intertwiner(
    h: Automorphism,
    f: Sequence[Sequence[object]],
    kind: TwistType = TwistType.V,
) -> bool:
    """
    Exact check of f . h'(E_ij) = E_ij . f on the square window of f, for every
    E_ij whose image fits there; h' is h for type V and h o tau for type V*.
    """
    matrix = [[to_rational(x) for x in row] for row in f]

    if any(len(row) != len(matrix) for row in matrix):
        raise AutError('Intertwiner window must be square')

    return _verify(_generator_images(h, kind), matrix)


def dense_approx_twisted(h: AutPresentation, a: MackeyOp, rs: Sequence[FinVec]) -> FinitaryOp:
    """Traceless finitary psi with psi . r = a . r in V^h for every r in rs."""
    eta = MackeyOp.from_finitary(dense_approx(apply_aut(h, a), rs))
    psi = is_finitary(apply_aut(invert_aut(h), eta))

    if psi is None or trace(psi):
        raise AutError('Pulled-back approximation is not a traceless finitary operator')

    for r in rs:
        if twist_act_V(h, MackeyOp.from_finitary(psi), r) != twist_act_V(h, a, r):
            raise AutError(f'Twisted approximation disagrees on {r!r}')

    return psi
