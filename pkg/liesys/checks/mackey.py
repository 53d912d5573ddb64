from fractions import Fraction

from liesys import strategies
from liesys.checks.base import Counterexample, Property, Suite, arguments
from liesys.codec import emit_mackey, emit_vectors
from liesys.finitary import FinitaryOp, trace
from liesys.mackey import (
    MackeyOp, Scalar, Witness, bracket_m, center_witness, dense_approx, is_finitary, mul, split_scalar, transpose,
)

ORACLE_WINDOW = 40
MAX_DIAGONALS = 5
MAX_PREFIX = 6
MAX_OFFSET = 4


def _mackey(window):
    return strategies.mackey_ops(min(window.n - 1, MAX_OFFSET), MAX_DIAGONALS, MAX_PREFIX)


def _finitary(window):
    return strategies.finitary_ops(window.n, 4)


def _rational(window):
    return strategies.rationals()


def _vectors(window):
    return strategies.vector_lists(window.n, 1, 4)


def _ops(*ops: MackeyOp) -> str:
    return ''.join(emit_mackey(op) for op in ops)


class MackeySuite(Suite):
    name = 'mackey'

    def properties(self):
        return [
            Property('product_window_oracle', arguments(_mackey, _mackey), self._window_oracle),
            Property('shift_boundary', arguments(), self._boundary, max_cases=1),
            Property('canonical_congruence', arguments(_mackey, _mackey, _mackey), self._congruence),
            Property('finitary_ideal', arguments(_mackey, _finitary), self._ideal),
            Property('transpose_anti_automorphism', arguments(_mackey, _mackey), self._transpose),
            Property('jacobi', arguments(_mackey, _mackey, _mackey), self._jacobi),
            Property('split_scalar', arguments(_rational, _finitary), self._split),
            Property('center_scalar', arguments(_rational), self._center_scalar),
            Property('center_witness', arguments(_mackey), self._center_witness),
            Property('dense_approx', arguments(_mackey, _vectors), self._dense_approx),
        ]

    def _window_oracle(self, window, a, b):
        product = mul(a, b)

        for i in range(1, ORACLE_WINDOW + 1):
            row = a.row(i)

            for j in range(1, ORACLE_WINDOW + 1):
                expected = sum((x * b.entry(k, j) for k, x in row.items()), Fraction(0))

                if product.entry(i, j) != expected:
                    raise Counterexample(f'entry ({i}, {j}) of the product differs from the convolution', _ops(a, b))

    def _boundary(self, window):
        up, down = MackeyOp.shift_up(), MackeyOp.shift_down()

        if mul(up, down) != MackeyOp.identity():
            raise Counterexample('shift_up . shift_down != Id')

        if mul(down, up) != MackeyOp.identity() - MackeyOp.elementary(1, 1):
            raise Counterexample('shift_down . shift_up != Id - E_1,1')

    def _congruence(self, window, a, b, c):
        a2 = (a + c) - c

        if a2 != a or mul(a2, b) != mul(a, b) or mul(b, a2) != mul(b, a):
            raise Counterexample('canonical equality is not a congruence', _ops(a, b, c))

    def _ideal(self, window, a, f):
        f = MackeyOp.from_finitary(f)

        if is_finitary(bracket_m(a, f)) is None:
            raise Counterexample('[a, f] left the finitary ideal', _ops(a, f))

    def _transpose(self, window, a, b):
        if transpose(mul(a, b)) != mul(transpose(b), transpose(a)) or transpose(transpose(a)) != a:
            raise Counterexample('transpose is not an involutive anti-automorphism', _ops(a, b))

        t = transpose(a)

        for i in range(1, window.n + 1):
            for j in range(1, window.n + 1):
                if t.entry(i, j) != a.entry(j, i):
                    raise Counterexample(f'transpose entry ({i}, {j})', _ops(a))

    def _jacobi(self, window, a, b, c):
        total = bracket_m(a, bracket_m(b, c)) + bracket_m(b, bracket_m(c, a)) + bracket_m(c, bracket_m(a, b))

        if total or bracket_m(a, b) != -bracket_m(b, a):
            raise Counterexample('Jacobi or antisymmetry fails', _ops(a, b, c))

    def _split(self, window, value, f):
        a = MackeyOp.scalar(value) + MackeyOp.from_finitary(f)

        if split_scalar(a) != (value, f):
            raise Counterexample('lambda Id + f was not recovered', _ops(a))

    def _center_scalar(self, window, value):
        if center_witness(MackeyOp.scalar(value)) != Scalar(value):
            raise Counterexample(f'{value} Id was not reported as scalar')

    def _center_witness(self, window, a):
        if split_scalar(a) is not None and split_scalar(a)[1] == FinitaryOp.zero():
            a = a + MackeyOp.shift_up()

        report = center_witness(a)

        if not isinstance(report, Witness) or not report.defect(a):
            raise Counterexample('no valid witness for a non-scalar operator', _ops(a))

    def _dense_approx(self, window, a, rs):
        psi = dense_approx(a, rs)

        if trace(psi) or any(MackeyOp.from_finitary(psi).act(r) != a.act(r) for r in rs):
            raise Counterexample('approximation is not traceless and interpolating', _ops(a) + emit_vectors(rs))
