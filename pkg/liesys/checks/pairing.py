from hypothesis import strategies as st

from liesys import linalg, strategies
from liesys.checks.base import Counterexample, Property, Suite, arguments
from liesys.codec import emit_finitary
from liesys.core import FinVec, Window, format_vector
from liesys.pairing import Side, complement_subsystem, envelope, pair, perp_in_window

MAX_SPEC_WINDOW = 5


def _spec(window):
    return strategies.pairing_specs(min(window.n, MAX_SPEC_WINDOW))


def _independent(vectors):
    basis = linalg.EchelonBasis()
    return [vec for vec in vectors if basis.add(vec.as_dict())]


class PairingSuite(Suite):
    name = 'pairing'

    def properties(self):
        return [
            Property(
                'complement_is_direct',
                arguments(_spec, lambda window: strategies.vector_lists(window.n, 1, min(3, window.n))),
                self._complement,
            ),
            Property(
                'perp_is_perpendicular',
                arguments(_spec, lambda window: st.sampled_from((Side.U, Side.W)), lambda window: strategies.vector_lists(window.n, 0, 3)),
                self._perp,
            ),
            Property(
                'envelope_contains_inputs',
                arguments(_spec, lambda window: st.lists(strategies.finitary_ops(max(1, window.n // 2), 4), max_size=3)),
                self._envelope,
            ),
        ]

    def _complement(self, window, spec, vectors):
        u_f = _independent(vectors)
        sub = complement_subsystem(spec, u_f, window)
        perp = perp_in_window(spec, Side.W, u_f, window)

        rows = [v.as_dict() for v in perp] + [w.as_dict() for w in sub.w_basis]

        if len(perp) + sub.dimension != window.n or linalg.rank(rows, list(window.indices())) != window.n:
            raise Counterexample(
                'W-window is not perp(U_f) + W_f',
                '\n'.join(f'u_f {format_vector(u)}' for u in u_f),
            )

    def _perp(self, window, spec, side, gens):
        perp = perp_in_window(spec, side, gens, window)

        for vec in perp:
            for g in gens:
                value = pair(spec, g, vec) if side is Side.W else pair(spec, vec, g)

                if value:
                    raise Counterexample(f'{format_vector(vec)} is not perpendicular', f'gen {format_vector(g)}')

        if side is Side.W:
            rows = [{j: pair(spec, g, FinVec.unit(j)) for j in window.indices()} for g in gens]
        else:
            rows = [{i: pair(spec, FinVec.unit(i), g) for i in window.indices()} for g in gens]

        rows = [{k: x for k, x in row.items() if x} for row in rows]

        if len(perp) != window.n - linalg.rank(rows, list(window.indices())):
            raise Counterexample('perpendicular basis has the wrong dimension')

    def _envelope(self, window, spec, elems):
        sub = envelope(spec, elems, window)

        for op in elems:
            if not sub.contains_operator(op):
                raise Counterexample('envelope misses an input', emit_finitary(op))
