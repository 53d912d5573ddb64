"""
Exact linear algebra over QQ.

Rows are sparse mappings ``key -> Fraction``; keys are anything sortable
(indices, index pairs, tensor index tuples). Batch operations go through
sympy's sparse domain matrices, incremental reduction through EchelonBasis.
"""

import logging
from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices.sdm import SDM

from liesys.core import add_into

__all__ = ['LinalgError', 'SingularMatrix', 'rank', 'rref', 'nullspace', 'inverse', 'EchelonBasis']

_logger = logging.getLogger('liesys').getChild('linalg')

Row = Mapping[Hashable, Fraction]


class LinalgError(Exception):
    pass


class SingularMatrix(LinalgError):
    pass


def _to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def _from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _columns_of(rows: Sequence[Row]) -> List[Hashable]:
    return sorted({key for row in rows for key in row})


def _to_sdm(rows: Sequence[Row], columns: Sequence[Hashable]) -> SDM:
    position = {key: c for c, key in enumerate(columns)}
    elems = {}

    for r, row in enumerate(rows):
        packed = {}

        for key, value in row.items():
            if not value:
                continue

            if key not in position:
                raise LinalgError(f'Row entry {key!r} is outside the given columns')

            packed[position[key]] = _to_qq(value)

        if packed:
            elems[r] = packed

    return SDM(elems, (len(rows), len(columns)), QQ)


def rank(rows: Sequence[Row], columns: Optional[Sequence[Hashable]] = None) -> int:
    columns = _columns_of(rows) if columns is None else columns

    if not rows or not columns:
        return 0

    _, pivots = _to_sdm(rows, columns).rref()

    return len(pivots)


def rref(rows: Sequence[Row], columns: Optional[Sequence[Hashable]] = None) -> Tuple[List[Dict[Hashable, Fraction]], List[Hashable]]:
    """Reduced row echelon form: the nonzero reduced rows and their pivot keys."""
    columns = _columns_of(rows) if columns is None else list(columns)

    if not rows or not columns:
        return [], []

    reduced, pivots = _to_sdm(rows, columns).rref()

    out = []

    for r in range(len(pivots)):
        out.append({columns[c]: _from_qq(x) for c, x in reduced.get(r, {}).items()})

    return out, [columns[c] for c in pivots]


def nullspace(rows: Sequence[Row], columns: Sequence[Hashable]) -> List[Dict[Hashable, Fraction]]:
    """Basis of {x : row . x = 0 for every row}, with x supported on columns."""
    columns = list(columns)

    if not columns:
        return []

    if not any(rows):
        return [{key: Fraction(1)} for key in columns]

    basis, _ = _to_sdm(rows, columns).nullspace()

    out = []

    for r in range(basis.shape[0]):
        out.append({columns[c]: _from_qq(x) for c, x in basis.get(r, {}).items()})

    _logger.debug(f'Nullspace of {len(rows)} rows over {len(columns)} columns has dimension {len(out)}')

    return out


def inverse(matrix: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    n = len(matrix)

    if any(len(row) != n for row in matrix):
        raise LinalgError('Only square matrices can be inverted')

    if n == 0:
        return []

    rows = [{c: x for c, x in enumerate(row) if x} for row in matrix]

    if rank(rows, range(n)) < n:
        raise SingularMatrix(f'{n}x{n} matrix is singular')

    inv = _to_sdm(rows, range(n)).inv()

    return [[_from_qq(inv.get(r, {}).get(c, QQ.zero)) for c in range(n)] for r in range(n)]


class EchelonBasis:
    """
    Incrementally grown, fully reduced row echelon basis.

    Each stored row has a pivot key with coefficient 1 that appears in no other
    stored row.
    """

    def __init__(self) -> None:
        self._rows: List[Tuple[Hashable, Dict[Hashable, Fraction]]] = []

    def reduce(self, vector: Row) -> Dict[Hashable, Fraction]:
        residual: Dict[Hashable, Fraction] = {k: v for k, v in vector.items() if v}

        for pivot, row in self._rows:
            c = residual.get(pivot)

            if c:
                for key, value in row.items():
                    add_into(residual, key, -c * value)

        return residual

    def add(self, vector: Row) -> bool:
        """Add vector to the span; returns False if it was already in it."""
        residual = self.reduce(vector)

        if not residual:
            return False

        pivot = min(residual)
        scale = residual[pivot]
        new_row = {key: value / scale for key, value in residual.items()}

        for _, row in self._rows:
            c = row.get(pivot)

            if c:
                for key, value in new_row.items():
                    add_into(row, key, -c * value)

        self._rows.append((pivot, new_row))

        return True

    def contains(self, vector: Row) -> bool:
        return not self.reduce(vector)

    def rows(self) -> List[Dict[Hashable, Fraction]]:
        return [dict(row) for _, row in self._rows]

    def __len__(self) -> int:
        return len(self._rows)
