"""
Dual bases of a countable linear system by Gram-Schmidt.

Step k reduces u_k against the earlier w-rows, finds a w-side partner with
nonzero pairing (repairing w_k by w_k + w_j when needed), scales the pairing
to 1 and finally reduces the w-row against the earlier u-rows.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from liesys.core import FinVec
from liesys.pairing import PairingSpec, Side, pair

__all__ = [
    'DualizeError', 'NondegeneracySearchExhausted', 'DualBasisPrefix', 'gram_schmidt', 'induced_spec', 'to_standard',
]

_logger = logging.getLogger('liesys').getChild('dualize')


class DualizeError(Exception):
    pass


class NondegeneracySearchExhausted(DualizeError):
    def __init__(self, step: int, search_bound: int) -> None:
        super().__init__(f'No pairing partner for step {step} among w_1..w_{search_bound}')
        self.step = step
        self.search_bound = search_bound


@dataclass(frozen=True)
class DualBasisPrefix:
    """
    The first ``length`` dual pairs: u_rows[k] is u~_{k+1} in u-coordinates and
    w_rows[k] is w~_{k+1} in w-coordinates.
    """

    u_rows: Tuple[FinVec, ...]
    w_rows: Tuple[FinVec, ...]

    @property
    def length(self) -> int:
        return len(self.u_rows)

    def biorthogonality(self, spec: PairingSpec) -> List[List[Fraction]]:
        return [[pair(spec, u, w) for w in self.w_rows] for u in self.u_rows]


def gram_schmidt(spec: PairingSpec, n: int, search_bound: int) -> DualBasisPrefix:
    if n < 1:
        raise ValueError(f'Prefix length must be positive, got {n}')

    if search_bound < n:
        raise ValueError(f'Search bound {search_bound} is below the prefix length {n}')

    u_rows: List[FinVec] = []
    w_rows: List[FinVec] = []

    for k in range(1, n + 1):
        u_k = FinVec.unit(k)
        u_tilde = u_k - FinVec.combine((pair(spec, u_k, w), u) for u, w in zip(u_rows, w_rows))

        w = FinVec.unit(k)
        value = pair(spec, u_tilde, w)

        if not value:
            for j in range(1, search_bound + 1):
                if j == k:
                    continue

                value = pair(spec, u_tilde, FinVec.unit(j))

                if value:
                    _logger.debug(f'Step {k}: repaired w_{k} by w_{j}')
                    w = w + FinVec.unit(j)
                    break
            else:
                raise NondegeneracySearchExhausted(k, search_bound)

        w = w / value
        w_tilde = w - FinVec.combine((pair(spec, u, w), prev) for u, prev in zip(u_rows, w_rows))

        u_rows.append(u_tilde)
        w_rows.append(w_tilde)

    return DualBasisPrefix(tuple(u_rows), tuple(w_rows))


def _rebased(prefix: DualBasisPrefix, vectors: Tuple[FinVec, ...], i: int) -> FinVec:
    return vectors[i - 1] if i <= prefix.length else FinVec.unit(i)


def induced_spec(spec: PairingSpec, prefix: DualBasisPrefix) -> PairingSpec:
    """
    The same system written in the bases u~_1..u~_n, u_{n+1}, ... and
    w~_1..w~_n, w_{n+1}, ...; its leading n x n block is the identity.
    """

    def entry(i: int, j: int) -> Fraction:
        return pair(spec, _rebased(prefix, prefix.u_rows, i), _rebased(prefix, prefix.w_rows, j))

    bound = max(prefix.length, spec.search_bound or 0, max((w.max_index() for w in prefix.w_rows), default=0))

    return PairingSpec.from_oracle(entry, bound)


def to_standard(spec: PairingSpec, prefix: DualBasisPrefix, side: Side, vec: FinVec) -> FinVec:
    """
    The isomorphism onto (V, V_*) sending u~_k -> e_k and w~_k -> e^k, for
    vectors in the span of the prefix.
    """
    if side is Side.U:
        coords = [pair(spec, vec, w) for w in prefix.w_rows]
        basis = prefix.u_rows
    else:
        coords = [pair(spec, u, vec) for u in prefix.u_rows]
        basis = prefix.w_rows

    if FinVec.combine(zip(coords, basis)) != vec:
        raise DualizeError(f'{vec!r} is not in the span of the first {prefix.length} dual vectors')

    return FinVec.from_dense(coords)
