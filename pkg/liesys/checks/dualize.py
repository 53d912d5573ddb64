from fractions import Fraction

from liesys import strategies
from liesys.checks.base import Counterexample, Property, Suite, arguments
from liesys.codec import emit_pairing
from liesys.core import FinVec
from liesys.dualize import gram_schmidt, induced_spec

MAX_PREFIX = 10


def _prefix_length(window):
    return min(window.n, MAX_PREFIX)


def _spec(window):
    return strategies.window_pairings(_prefix_length(window))


class DualizeSuite(Suite):
    name = 'dualize'

    def properties(self):
        return [
            Property('biorthogonal', arguments(_spec), self._biorthogonal),
            Property('unit_triangular', arguments(_spec), self._triangular),
            Property('idempotent', arguments(_spec), self._idempotent),
        ]

    def _biorthogonal(self, window, spec):
        n = _prefix_length(window)
        prefix = gram_schmidt(spec, n, n)
        identity = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]

        if prefix.biorthogonality(spec) != identity:
            raise Counterexample('dual prefix is not biorthogonal', emit_pairing(spec))

    def _triangular(self, window, spec):
        n = _prefix_length(window)

        for k, u in enumerate(gram_schmidt(spec, n, n).u_rows, start=1):
            if u.max_index() != k or u[k] != 1:
                raise Counterexample(f'u~_{k} is not unit lower triangular', emit_pairing(spec))

    def _idempotent(self, window, spec):
        n = _prefix_length(window)
        prefix = gram_schmidt(spec, n, n)
        again = gram_schmidt(induced_spec(spec, prefix), n, n)

        for k in range(n):
            unit = FinVec.unit(k + 1)

            if again.u_rows[k] != unit or again.w_rows[k] != unit:
                raise Counterexample(f'second pass changed pair {k + 1}', emit_pairing(spec))
