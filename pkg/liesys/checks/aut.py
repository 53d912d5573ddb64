from liesys import strategies
from liesys.aut import (
    AutPresentation, TwistType, apply_aut, classify_twist, compose_aut, dense_approx_twisted, invert_aut, tau,
    twist_act_V, verify_intertwiner,
)
from liesys.checks.base import Counterexample, Property, Suite, arguments
from liesys.codec import emit_mackey, emit_presentation
from liesys.core import Window
from liesys.finitary import trace
from liesys.mackey import MackeyOp, bracket_m, is_finitary

CLASSIFY_CASES = 30
CLASSIFY_START = Window(4)
CLASSIFY_MAX = Window(14)


def _mackey(window):
    return strategies.mackey_ops(min(window.n - 1, 4), 5, 6)


def _presentation(window):
    return strategies.presentations()


def _vec(window):
    return strategies.finvecs(window.n)


class AutSuite(Suite):
    name = 'aut'

    def properties(self):
        return [
            Property('tau_involution', arguments(_mackey, _mackey), self._tau_involution),
            Property('tau_preserves_finitary', arguments(_mackey), self._tau_finitary),
            Property('homomorphism', arguments(_presentation, _mackey, _mackey), self._homomorphism),
            Property('composition_law', arguments(_presentation, _presentation, _mackey), self._composition),
            Property('inverse', arguments(_presentation, _mackey), self._inverse),
            Property('twist_functoriality', arguments(_presentation, _presentation, _mackey, _vec), self._functoriality),
            Property(
                'classification',
                arguments(lambda window: strategies.invertible_pairs()),
                self._classification,
                max_cases=CLASSIFY_CASES,
            ),
            Property(
                'twisted_dense_approx',
                arguments(_presentation, _mackey, lambda window: strategies.vector_lists(window.n, 1, 4)),
                self._twisted_dense,
            ),
        ]

    def _tau_involution(self, window, a, b):
        if tau(tau(a)) != a or tau(bracket_m(a, b)) != bracket_m(tau(a), tau(b)):
            raise Counterexample('tau is not an involutive automorphism', emit_mackey(a) + emit_mackey(b))

    def _tau_finitary(self, window, a):
        if (is_finitary(tau(a)) is None) != (is_finitary(a) is None):
            raise Counterexample('tau moved a across the finitary ideal', emit_mackey(a))

    def _homomorphism(self, window, h, a, b):
        if apply_aut(h, bracket_m(a, b)) != bracket_m(apply_aut(h, a), apply_aut(h, b)):
            raise Counterexample('h does not preserve the bracket', emit_presentation(h) + emit_mackey(a) + emit_mackey(b))

    def _composition(self, window, h1, h2, a):
        if apply_aut(compose_aut(h1, h2), a) != apply_aut(h1, apply_aut(h2, a)):
            raise Counterexample('compose_aut breaks the evaluation law', emit_presentation(h1) + emit_presentation(h2) + emit_mackey(a))

    def _inverse(self, window, h, a):
        if apply_aut(invert_aut(h), apply_aut(h, a)) != a:
            raise Counterexample('invert_aut does not undo h', emit_presentation(h) + emit_mackey(a))

    def _functoriality(self, window, h1, h2, a, v):
        # twisting V^{h2} by h1 routes a through h1 first
        if twist_act_V(h2, apply_aut(h1, a), v) != twist_act_V(compose_aut(h2, h1), a, v):
            raise Counterexample('twists do not compose', emit_presentation(h1) + emit_presentation(h2) + emit_mackey(a))

    def _classification(self, window, g):
        for eps, expected in ((False, TwistType.V), (True, TwistType.VSTAR)):
            h = AutPresentation(g, eps)
            result = classify_twist(h, CLASSIFY_START, CLASSIFY_MAX)

            if result.kind is not expected:
                raise Counterexample(f'classified as {result.kind.value}, expected {expected.value}', emit_presentation(h))

            if not verify_intertwiner(h, result.intertwiner_window, result.kind):
                raise Counterexample('witness fails its intertwiner equations', emit_presentation(h))

    def _twisted_dense(self, window, h, a, rs):
        psi = dense_approx_twisted(h, a, rs)

        if trace(psi) or any(twist_act_V(h, MackeyOp.from_finitary(psi), r) != twist_act_V(h, a, r) for r in rs):
            raise Counterexample('twisted approximation fails', emit_presentation(h) + emit_mackey(a))
