from hypothesis import strategies as st

from liesys import strategies
from liesys.checks.base import Counterexample, Property, Suite, arguments
from liesys.core import DualOracle, FinVec, apply_oracle, format_rational, format_vector, vec_pair_std


def _rational(window):
    return strategies.rationals()


def _vec(window):
    return strategies.finvecs(window.n)


class CoreSuite(Suite):
    name = 'core'

    def properties(self):
        return [
            Property('rational_field_axioms', arguments(_rational, _rational, _rational), self._field_axioms),
            Property('pairing_bilinear', arguments(_rational, _vec, _vec, _vec), self._bilinear),
            Property('canonical_add_sub', arguments(_vec, _vec), self._canonical),
            Property('oracle_agrees_with_pairing', arguments(_vec, _vec, lambda window: st.integers(-3, 3)), self._oracle),
        ]

    def _field_axioms(self, window, a, b, c):
        if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            raise Counterexample('field axiom violated', ' '.join(format_rational(x) for x in (a, b, c)))

    def _bilinear(self, window, a, v, v2, f):
        if vec_pair_std(a * v + v2, f) != a * vec_pair_std(v, f) + vec_pair_std(v2, f):
            raise Counterexample(
                'vec_pair_std is not linear in V',
                f'a = {format_rational(a)}\nv = {format_vector(v)}\nv2 = {format_vector(v2)}\nf = {format_vector(f)}',
            )

    def _canonical(self, window, v, w):
        back = (v + w) - w

        if back.as_dict() != v.as_dict() or any(not x for _, x in back.items()):
            raise Counterexample('v + w - w is not stored as v', f'v = {format_vector(v)}\nw = {format_vector(w)}')

    def _oracle(self, window, v, f, shift):
        if apply_oracle(DualOracle.from_vec(f), v) != vec_pair_std(v, f):
            raise Counterexample('oracle of f disagrees with e^i(e_j)', f'v = {format_vector(v)}\nf = {format_vector(f)}')

        oracle = DualOracle(lambda i: i + shift)

        if apply_oracle(oracle, v) != sum(((i + shift) * x for i, x in v.items()), 0):
            raise Counterexample(f'f(i) = i + {shift} evaluated wrongly', f'v = {format_vector(v)}')

        if apply_oracle(oracle, FinVec.zero()) != 0:
            raise Counterexample('oracle is nonzero on the zero vector')
