"""Hypothesis strategies for every value type, shared by the property suites and the test-suite."""

from fractions import Fraction
from typing import Optional

from hypothesis import strategies as st

from liesys.aut import AutPresentation, InvertiblePair
from liesys.core import FinVec
from liesys.finitary import FinitaryOp, TensorElement
from liesys.mackey import DiagonalSeq, MackeyOp
from liesys.pairing import PairingSpec

WINDOW = 6

FACTOR_KINDS = ('permutation', 'elementary', 'diagonal', 'unipotent')


def rationals(max_numerator: int = 5, max_denominator: int = 4):
    return st.builds(
        Fraction,
        st.integers(-max_numerator, max_numerator),
        st.integers(1, max_denominator),
    )


def nonzero_rationals():
    return rationals().filter(bool)


def indices(n: int = WINDOW):
    return st.integers(1, n)


def finvecs(n: int = WINDOW, max_size: int = 4):
    return st.dictionaries(indices(n), rationals(), max_size=max_size).map(FinVec)


def nonzero_finvecs(n: int = WINDOW, max_size: int = 4):
    return finvecs(n, max(max_size, 1)).filter(bool)


def vector_lists(n: int = WINDOW, min_size: int = 1, max_size: int = 4):
    return st.lists(nonzero_finvecs(n), min_size=min_size, max_size=max_size)


def finitary_ops(n: int = WINDOW, max_size: int = 5):
    return st.dictionaries(st.tuples(indices(n), indices(n)), rationals(), max_size=max_size).map(FinitaryOp)


@st.composite
def diagonals(draw, max_prefix: int = 4):
    prefix = draw(st.lists(rationals(), max_size=max_prefix))
    tail = draw(rationals())
    return DiagonalSeq(tuple(prefix), tail)


@st.composite
def mackey_ops(draw, max_offset: int = 2, max_diagonals: int = 3, max_prefix: int = 4):
    offsets = draw(st.lists(st.integers(-max_offset, max_offset), unique=True, max_size=max_diagonals))
    op = MackeyOp.zero()

    for d in offsets:
        seq = draw(diagonals(max_prefix))
        op = op + MackeyOp.diagonal(seq.prefix, seq.tail, d)

    return op


@st.composite
def tensors(draw, p: int, q: int, n: int = WINDOW, max_terms: int = 4):
    terms = draw(st.lists(
        st.tuples(rationals(), st.lists(indices(n), min_size=p, max_size=p), st.lists(indices(n), min_size=q, max_size=q)),
        max_size=max_terms,
    ))

    return TensorElement.from_terms(p, q, [
        (coef, [FinVec.unit(i) for i in vs], [FinVec.unit(j) for j in ws])
        for coef, vs, ws in terms
    ])


def shaped_tensors(shapes, n: int = WINDOW):
    """A tensor whose degree (p, q) is drawn from ``shapes``."""
    return st.sampled_from(shapes).flatmap(lambda pq: tensors(pq[0], pq[1], n))


@st.composite
def invertible_pairs(draw, support: int = 4, max_factors: int = 3):
    """Products of permutations, transvections, diagonal pairs and unipotents, all acting on e_1..e_support."""
    g = InvertiblePair.identity()
    kinds = FACTOR_KINDS if support > 1 else ('diagonal',)
    points = list(range(1, support + 1))

    for _ in range(draw(st.integers(0, max_factors))):
        kind = draw(st.sampled_from(kinds))

        if kind == 'permutation':
            images = draw(st.permutations(points))
            factor = InvertiblePair.permutation(dict(zip(points, images)))
        elif kind == 'elementary':
            i = draw(st.integers(1, support))
            j = draw(st.integers(1, support).filter(lambda x: x != i))
            factor = InvertiblePair.elementary(i, j, draw(rationals()))
        elif kind == 'diagonal':
            prefix = draw(st.lists(nonzero_rationals(), max_size=support))
            factor = InvertiblePair.diagonal(tuple(prefix), draw(nonzero_rationals()))
        else:
            pairs = st.tuples(indices(support), indices(support)).filter(lambda ij: ij[0] < ij[1])
            factor = InvertiblePair.unipotent(FinitaryOp(draw(st.dictionaries(pairs, rationals(), min_size=1, max_size=support))))

        g = g @ factor

    return g


@st.composite
def presentations(draw, eps: Optional[bool] = None):
    g = draw(invertible_pairs())
    return AutPresentation(g, draw(st.booleans()) if eps is None else eps)


@st.composite
def window_pairings(draw, n: int):
    """Mackey pairing whose leading n x n block is an exactly invertible matrix, identity beyond."""
    g = draw(invertible_pairs(support=n))
    block = [[g.g.entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    ops = FinitaryOp.from_dense(block) - FinitaryOp.identity_window(n)

    return PairingSpec.mackey(MackeyOp.identity() + MackeyOp.from_finitary(ops))


def pairing_specs(n: int):
    return st.one_of(st.just(PairingSpec.standard()), window_pairings(n))
