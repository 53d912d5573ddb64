import logging
from typing import Optional

from .aut import AutSuite
from .base import CheckError, CheckReport, Suite, UnknownSuite
from .core import CoreSuite
from .dualize import DualizeSuite
from .finitary import FinitarySuite
from .mackey import MackeySuite
from .pairing import PairingSuite
from liesys.core import Window

__all__ = ['suites', 'run_suite', 'CheckError', 'CheckReport', 'UnknownSuite']

suites = {
    'core': CoreSuite,
    'pairing': PairingSuite,
    'dualize': DualizeSuite,
    'finitary': FinitarySuite,
    'mackey': MackeySuite,
    'aut': AutSuite,
}


def run_suite(name: str, seed: int, window: Window, cases: int, *, logger: Optional[logging.Logger] = None) -> CheckReport:
    logger = logger or logging.getLogger('liesys')

    if name == 'all':
        reports = [suites[x](logger=logger).run(seed, window, cases) for x in suites]
        return CheckReport.merge('all', reports)

    if name not in suites:
        raise UnknownSuite(f'Suite "{name}" not found (available: {", ".join(list(suites) + ["all"])})')

    return suites[name](logger=logger).run(seed, window, cases)
