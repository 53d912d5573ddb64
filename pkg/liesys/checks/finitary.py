from fractions import Fraction

from hypothesis import strategies as st

from liesys import strategies
from liesys.checks.base import Counterexample, Property, Suite, arguments
from liesys.codec import emit_finitary
from liesys.core import DualOracle, Window, apply_oracle, format_vector, vec_pair_std
from liesys.finitary import (
    FinitaryOp, PureTensor, act_dual_oracle, act_tensor, act_V, act_Vstar, bracket, commutator_span_check,
    eq1_rhs, integrability_dim, large_annihilator_check, trace,
)

TENSOR_SHAPES = ((2, 0), (1, 1), (2, 1))
MAX_SPAN_WINDOW = 8


def _op(window):
    return strategies.finitary_ops(window.n, 4)


def _vec(window):
    return strategies.finvecs(window.n)


def _index(window):
    return strategies.indices(window.n)


def _coefficient(window):
    return st.integers(-3, 3)


def _ops(*ops: FinitaryOp) -> str:
    return '\n'.join(f'op {k}:\n{emit_finitary(op)}' for k, op in enumerate(ops, start=1))


class FinitarySuite(Suite):
    name = 'finitary'

    def properties(self):
        return [
            Property('jacobi', arguments(_op, _op, _op), self._jacobi),
            Property('antisymmetry', arguments(_op, _op), self._antisymmetry),
            Property('trace_of_bracket', arguments(_op, _op), self._trace),
            Property('basis_bracket', arguments(_index, _index, _index, _index), self._basis_bracket),
            Property('pure_tensor_bracket', arguments(_vec, _vec, _vec, _vec), self._pure_tensor_bracket),
            Property(
                'commutator_span',
                arguments(lambda window: st.integers(2, MAX_SPAN_WINDOW)),
                self._commutator_span,
                max_cases=MAX_SPAN_WINDOW - 1,
            ),
            Property('module_axiom_V', arguments(_op, _op, _vec), self._module_V),
            Property('module_axiom_Vstar', arguments(_op, _op, _vec), self._module_Vstar),
            Property(
                'module_axiom_tensor',
                arguments(_op, _op, lambda window: strategies.shaped_tensors(TENSOR_SHAPES, window.n)),
                self._module_tensor,
            ),
            Property('pairing_compatibility', arguments(_op, _vec, _vec), self._duality),
            Property('socle_action', arguments(_vec, _vec, _coefficient, _coefficient), self._socle),
            Property(
                'large_annihilator',
                arguments(lambda window: strategies.shaped_tensors(((1, 0), (0, 1)) + TENSOR_SHAPES, window.n)),
                self._annihilator,
            ),
            Property(
                'integrability',
                arguments(_op, lambda window: strategies.shaped_tensors(((1, 0), (0, 1), (1, 1)), window.n)),
                self._integrability,
            ),
        ]

    def _jacobi(self, window, a, b, c):
        total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))

        if total:
            raise Counterexample('Jacobi sum is nonzero', _ops(a, b, c))

    def _antisymmetry(self, window, a, b):
        if bracket(a, b) != -bracket(b, a) or bracket(a, a):
            raise Counterexample('bracket is not antisymmetric', _ops(a, b))

    def _trace(self, window, a, b):
        if trace(bracket(a, b)):
            raise Counterexample('commutator has nonzero trace', _ops(a, b))

    def _basis_bracket(self, window, i, j, k, l):
        if bracket(FinitaryOp.elementary(i, j), FinitaryOp.elementary(k, l)) != eq1_rhs(i, j, k, l):
            raise Counterexample(f'[E_{i},{j}, E_{k},{l}] disagrees with the structure constants')

    def _pure_tensor_bracket(self, window, u1, w1, u2, w2):
        lhs = bracket(PureTensor(u1, w1).expand(), PureTensor(u2, w2).expand())
        rhs = PureTensor(u1, w2).expand() * vec_pair_std(u2, w1) - PureTensor(u2, w1).expand() * vec_pair_std(u1, w2)

        if lhs != rhs:
            raise Counterexample(
                'bracket of pure tensors',
                '\n'.join(format_vector(v) for v in (u1, w1, u2, w2)),
            )

    def _commutator_span(self, window, n):
        if not commutator_span_check(Window(n)):
            raise Counterexample(f'[gl_{n}, gl_{n}] is not the traceless block')

    def _module_V(self, window, a, b, v):
        if act_V(bracket(a, b), v) != act_V(a, act_V(b, v)) - act_V(b, act_V(a, v)):
            raise Counterexample('V is not a module', _ops(a, b) + f'\nv {format_vector(v)}')

    def _module_Vstar(self, window, a, b, w):
        if act_Vstar(bracket(a, b), w) != act_Vstar(a, act_Vstar(b, w)) - act_Vstar(b, act_Vstar(a, w)):
            raise Counterexample('V_* is not a module', _ops(a, b) + f'\nw {format_vector(w)}')

    def _module_tensor(self, window, a, b, t):
        if act_tensor(bracket(a, b), t) != act_tensor(a, act_tensor(b, t)) - act_tensor(b, act_tensor(a, t)):
            raise Counterexample(f'tensor ({t.p}, {t.q}) is not a module', _ops(a, b) + f'\n{t!r}')

    def _duality(self, window, a, v, w):
        if vec_pair_std(act_V(a, v), w) + vec_pair_std(v, act_Vstar(a, w)):
            raise Counterexample('<a v, w> + <v, a w> != 0', _ops(a) + f'\nv {format_vector(v)}\nw {format_vector(w)}')

    def _socle(self, window, u, w, c1, c2):
        f = DualOracle(lambda i: Fraction((c1 * i + c2) % 7 - 3))
        image = act_dual_oracle(PureTensor(u, w).expand(), f)

        if image != w * -apply_oracle(f, u):
            raise Counterexample(
                'u (x) w does not act on V^* by -<u, f> w',
                f'u {format_vector(u)}\nw {format_vector(w)}\nf(i) = ({c1} i + {c2}) mod 7 - 3',
            )

    def _annihilator(self, window, m):
        report = large_annihilator_check(m, Window(2 * max(1, m.max_index())))

        if report.subsystem.dimension != m.max_index():
            raise Counterexample('witness subsystem does not match the support bound', repr(m))

    def _integrability(self, window, a, m):
        cutoff = window.n ** (m.p + m.q) + 1
        report = integrability_dim(a, m, cutoff)

        if not report.stabilized:
            raise Counterexample(f'span did not stabilize within {cutoff} powers', _ops(a) + f'\n{m!r}')
