import logging
import zlib
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Tuple

import hypothesis
from hypothesis import HealthCheck, Phase, Verbosity, given, settings
from hypothesis import strategies as st
from hypothesis.strategies import SearchStrategy

from liesys.core import Window

__all__ = [
    'CheckError', 'UnknownSuite', 'Counterexample', 'Property', 'CaseFailure', 'CheckReport', 'Suite', 'arguments',
]

SUPPRESSED_HEALTH_CHECKS = [HealthCheck.too_slow, HealthCheck.filter_too_much, HealthCheck.data_too_large]


class CheckError(Exception):
    pass


class UnknownSuite(CheckError):
    pass


class Counterexample(CheckError):
    """Raised by a property body; ``serialized`` is the failing input in text form."""

    def __init__(self, description: str, serialized: str = '') -> None:
        super().__init__(description)
        self.description = description
        self.serialized = serialized


@dataclass(frozen=True)
class Property:
    """``strategy(window)`` draws a tuple of arguments, passed to ``body(window, *args)``."""

    name: str
    strategy: Callable[[Window], SearchStrategy]
    body: Callable[..., None]
    max_cases: Optional[int] = None


@dataclass(frozen=True)
class CaseFailure:
    property: str
    description: str
    counterexample: str


@dataclass(frozen=True)
class CheckReport:
    suite: str
    seed: int
    window: Window
    cases: int
    properties: Tuple[str, ...] = ()
    failures: Tuple[CaseFailure, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures

    @classmethod
    def merge(cls, suite: str, reports: Sequence['CheckReport']) -> 'CheckReport':
        first = reports[0]

        return cls(
            suite,
            first.seed,
            first.window,
            first.cases,
            tuple(name for report in reports for name in report.properties),
            tuple(failure for report in reports for failure in report.failures),
        )

    def render(self) -> str:
        """Test-anything-protocol style text, one ok / not ok line per property."""
        lines = [
            f'# suite {self.suite} seed {self.seed} window {self.window.n} cases {self.cases}',
            f'1..{len(self.properties)}',
        ]

        by_property = {failure.property: failure for failure in self.failures}

        for number, name in enumerate(self.properties, start=1):
            failure = by_property.get(name)

            if failure is None:
                lines.append(f'ok {number} - {name}')
                continue

            lines.append(f'not ok {number} - {name}')
            lines.append(f'#   {failure.description}')

            for text in failure.counterexample.splitlines():
                lines.append(f'#     {text}')

        lines.append(f'# {len(self.failures)} failing propert{"y" if len(self.failures) == 1 else "ies"}')

        return ''.join(f'{line}\n' for line in lines)


def arguments(*makers: Callable[[Window], SearchStrategy]) -> Callable[[Window], SearchStrategy]:
    """Property strategy drawing one argument from each ``maker(window)``."""
    return lambda window: st.tuples(*(maker(window) for maker in makers))


def property_seed(seed: int, name: str) -> int:
    """Per-property hypothesis seed, so one property can be replayed alone."""
    return (seed << 32) | zlib.crc32(name.encode())


def _describe(args: Sequence[Any]) -> str:
    return '\n'.join(f'arg {k} = {arg!r}' for k, arg in enumerate(args, start=1))


class Suite:
    """
    A named list of properties, each run as a hypothesis test seeded from
    (seed, suite, property). A failure is reported with the example hypothesis
    shrank it to.
    """

    name = ''

    def __init__(self, *, logger: logging.Logger) -> None:
        self._logger = logger.getChild(self.name)

    def properties(self) -> List[Property]:
        raise NotImplementedError

    def qualified(self, prop: Property) -> str:
        return f'{self.name}/{prop.name}'

    def _check(self, seed: int, prop: Property, window: Window, cases: int) -> Optional[CaseFailure]:
        name = self.qualified(prop)
        falsifying: List[Tuple[Any, ...]] = []

        @hypothesis.seed(property_seed(seed, name))
        @settings(
            max_examples=cases,
            database=None,
            derandomize=False,
            deadline=None,
            phases=[Phase.explicit, Phase.generate, Phase.shrink],
            report_multiple_bugs=False,
            suppress_health_check=SUPPRESSED_HEALTH_CHECKS,
            verbosity=Verbosity.quiet,
        )
        @given(prop.strategy(window))
        def check(args):
            try:
                prop.body(window, *args)
            except Exception:
                # the last failing call is the shrunk example
                falsifying[:] = [args]
                raise

        try:
            check()
        except Counterexample as e:
            found = e
        except Exception as e:
            found = Counterexample(f'{type(e).__name__}: {e}')
        else:
            return None

        serialized = found.serialized or (_describe(falsifying[0]) if falsifying else '')

        return CaseFailure(name, found.description, serialized)

    def run(self, seed: int, window: Window, cases: int) -> CheckReport:
        failures = []
        properties = self.properties()

        for prop in properties:
            count = cases if prop.max_cases is None else min(cases, prop.max_cases)
            name = self.qualified(prop)

            if count < 1:
                self._logger.debug(f'Skipping {name}: no cases requested')
                continue

            self._logger.debug(f'Running {name} on up to {count} cases')

            failure = self._check(seed, prop, window, count)

            if failure is not None:
                self._logger.warning(f'{name} failed: {failure.description}')
                failures.append(failure)

        return CheckReport(self.name, seed, window, cases, tuple(self.qualified(p) for p in properties), tuple(failures))
