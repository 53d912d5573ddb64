import os
import sys
import glob
import logging
import warnings
from configparser import ConfigParser, Error as ConfigParserError
from typing import List, Union

from liesys import codec
from liesys.aut import AutError, DEFAULT_MAX_WINDOW, DEFAULT_START_WINDOW, DEFAULT_WINDOW_STEP, Inconclusive, NotInvertible, classify_twist
from liesys.checks import CheckError, UnknownSuite, run_suite
from liesys.core import CoreError, Window, format_rational
from liesys.dualize import DualizeError, gram_schmidt
from liesys.finitary import FinitaryError, FinitaryOp, bracket, trace
from liesys.linalg import LinalgError
from liesys.mackey import MackeyError, MackeyOp, bracket_m, dense_approx, is_finitary, mul
from liesys.pairing import PairingError

__all__ = ['LieSysCalculator', 'LieSysError', 'LieSysConfigError']

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

SEED_ENV = 'LIESYS_SEED'

DEFAULTS = {
    'check': {'seed': 0, 'window': 10, 'cases': 100},
    'classify': {'start_window': DEFAULT_START_WINDOW, 'window_step': DEFAULT_WINDOW_STEP, 'max_window': DEFAULT_MAX_WINDOW},
    'dualize': {'search_bound': 0},
}

Operator = Union[FinitaryOp, MackeyOp]


class LieSysError(Exception):
    pass


class LieSysConfigError(Exception):
    pass


class LieSysCalculator:
    def __init__(self, params: dict) -> None:
        self._params = params
        self._config_dirs = self._gen_config_dirs(params.get('config_dirs', ''))
        self._config = self._parse_config()

        self._logger: logging.Logger = self._gen_logger(params.get('log_file', ''), params.get('log_level', 'INFO'))

    def run(self) -> int:
        command = self._params.get('command', '')
        handler = getattr(self, f'_cmd_{command}', None)

        if handler is None:
            raise LieSysError(f'Unknown command "{command}"')

        self._logger.debug(f'Running command "{command}"')

        try:
            return handler()
        except (codec.CodecError, CoreError, NotInvertible, UnknownSuite, LieSysError, OSError) as e:
            self._logger.error(f'{command}: {e}')
            sys.stderr.write(f'error: {e}\n')
            return EXIT_USAGE
        except Inconclusive as e:
            self._logger.error(f'{command}: {e}')
            sys.stderr.write(f'inconclusive: {e}\n')
            return EXIT_FAILURE
        except (PairingError, DualizeError, FinitaryError, MackeyError, AutError, CheckError, LinalgError) as e:
            self._logger.error(f'{command}: {e}')
            sys.stderr.write(f'failed: {e}\n')
            return EXIT_FAILURE

    def _gen_config_dirs(self, dirs: list) -> list:
        if dirs:
            return dirs

        return [
            '/etc/liesys',
            '/etc/opt/liesys',
            os.path.expanduser('~/.config/liesys'),
        ]

    def _parse_config(self) -> dict:
        config_files = []

        for config_dir in self._config_dirs:
            dir_files = [
                os.path.join(config_dir, 'config.conf'),
                *sorted(glob.glob(os.path.join(config_dir, 'config.d', '*.conf'))),
            ]

            config_files += dir_files

        config_inst = ConfigParser()

        try:
            config_inst.read(config_files)
        except ConfigParserError as e:
            raise LieSysConfigError(f'Malformed config file ({e})')

        config = {section: dict(values) for section, values in DEFAULTS.items()}

        for section in config_inst.sections():
            if section not in DEFAULTS:
                raise LieSysConfigError(f'Unknown config section "{section}"')

            for key, value in config_inst.items(section):
                if key not in DEFAULTS[section]:
                    raise LieSysConfigError(f'Config section "{section}" has unknown option "{key}"')

                try:
                    config[section][key] = int(value)
                except ValueError:
                    raise LieSysConfigError(f'Config option "{section}.{key}" must be an integer, got "{value}"')

        return config

    def _gen_logger(self, log_file: str, log_level: str) -> logging.Logger:
        levels = {
            "DEBUG": logging.DEBUG,
            "INFO": logging.INFO,
            "WARNING": logging.WARNING,
            "ERROR": logging.ERROR,
            "CRITICAL": logging.CRITICAL,
        }

        format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

        if not log_level in levels:
            log_level = "INFO"

        logger = logging.getLogger('liesys')
        logger.setLevel(levels[log_level])

        # stdout carries results only, so logs go to a file or stderr
        if log_file:
            handler = logging.FileHandler(log_file)
        else:
            handler = logging.StreamHandler(sys.stderr)

        handler.setLevel(levels[log_level])
        handler.setFormatter(logging.Formatter(format))

        for old in list(logger.handlers):
            logger.removeHandler(old)

        logger.addHandler(handler)

        return logger

    def _option(self, name: str, section: str, key: str) -> int:
        value = self._params.get(name)

        return self._config[section][key] if value is None else value

    def _read(self, path: str) -> bytes:
        with open(path, 'rb') as f:
            return f.read()

    def _load(self, loader, path: str):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always', codec.NonCanonicalWarning)
            value = loader(self._read(path))

        for warning in caught:
            self._logger.warning(f'{path}: {warning.message}')

        return value

    def _operands(self) -> List[Operator]:
        return [self._load(codec.parse_operator, path) for path in (self._params['a'], self._params['b'])]

    def _emit(self, text: str) -> int:
        sys.stdout.write(text)
        sys.stdout.flush()

        return EXIT_OK

    def _cmd_bracket(self) -> int:
        a, b = self._operands()

        if isinstance(a, FinitaryOp) and isinstance(b, FinitaryOp):
            return self._emit(codec.emit_finitary(bracket(a, b)))

        return self._emit(codec.emit_mackey(bracket_m(_promote(a), _promote(b))))

    def _cmd_mul(self) -> int:
        a, b = self._operands()

        if isinstance(a, FinitaryOp) and isinstance(b, FinitaryOp):
            return self._emit(codec.emit_finitary(a @ b))

        return self._emit(codec.emit_mackey(mul(_promote(a), _promote(b))))

    def _cmd_trace(self) -> int:
        a = self._load(codec.parse_operator, self._params['a'])

        if isinstance(a, MackeyOp):
            finitary = is_finitary(a)

            if finitary is None:
                raise LieSysError('Trace is only defined for finitary operators')

            a = finitary

        return self._emit(f'{format_rational(trace(a))}\n')

    def _cmd_dualize(self) -> int:
        spec = self._load(codec.load_pairing, self._params['spec'])
        n = self._params['n']

        if n < 1:
            raise LieSysError(f'--n must be positive, got {n}')

        search_bound = self._option('search_bound', 'dualize', 'search_bound') or n

        if search_bound < n:
            raise LieSysError(f'--search-bound {search_bound} is below --n {n}')

        return self._emit(codec.emit_dual_prefix(gram_schmidt(spec, n, search_bound)))

    def _cmd_classify(self) -> int:
        h = self._load(codec.load_presentation, self._params['aut'])

        start = self._config['classify']['start_window']
        step = self._config['classify']['window_step']
        max_window = self._option('max_window', 'classify', 'max_window')

        try:
            start_window, last_window = Window(start), Window(max_window)
        except ValueError as e:
            raise LieSysError(str(e))

        if last_window.n < start_window.n + 2:
            raise LieSysError(f'--max-window {last_window.n} is below start window {start_window.n} + 2')

        if step < 1:
            raise LieSysError(f'Window step must be positive, got {step}')

        result = classify_twist(h, start_window, last_window, step)

        return self._emit(codec.emit_twist_class(result))

    def _cmd_approx(self) -> int:
        a = self._load(codec.parse_operator, self._params['op'])
        rs = self._load(codec.load_vectors, self._params['vectors'])

        if not rs:
            raise LieSysError('No vectors given')

        return self._emit(codec.emit_finitary(dense_approx(_promote(a), rs)))

    def _cmd_check(self) -> int:
        seed = self._seed()
        window = self._option('window', 'check', 'window')
        cases = self._option('cases', 'check', 'cases')

        if cases < 0:
            raise LieSysError(f'--cases must not be negative, got {cases}')

        try:
            window = Window(window)
        except ValueError as e:
            raise LieSysError(str(e))

        report = run_suite(self._params['suite'], seed, window, cases, logger=self._logger)
        self._emit(report.render())

        return EXIT_OK if report.ok else EXIT_FAILURE

    def _seed(self) -> int:
        env = os.environ.get(SEED_ENV)

        if env is not None:
            try:
                seed = int(env)
            except ValueError:
                raise LieSysError(f'{SEED_ENV} must be an integer, got "{env}"')

            self._logger.info(f'Seed {seed} taken from {SEED_ENV}')
        else:
            seed = self._option('seed', 'check', 'seed')

        if not 0 <= seed < 2 ** 64:
            raise LieSysError(f'Seed {seed} is not an unsigned 64-bit integer')

        return seed


def _promote(op: Operator) -> MackeyOp:
    return MackeyOp.from_finitary(op) if isinstance(op, FinitaryOp) else op
