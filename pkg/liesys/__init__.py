import sys
import argparse
from liesys.calculator import LieSysCalculator, LieSysError, LieSysConfigError
from liesys.info import __app_name__, __version__, __description__


def _add_operands(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('a', help='First operator file')
    parser.add_argument('b', help='Second operator file')


def main():
    # get args from command line
    parser = argparse.ArgumentParser(description=__description__)

    parser.add_argument('--config-dir', dest='config_dirs', help='Config file(s) directory', action='append')
    parser.add_argument('--log', dest='log_file', help='Log file where to write logs')
    parser.add_argument('--log-level', dest='log_level', help='Log level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], default='INFO')
    parser.add_argument('--version', action='version', version=f'{__app_name__} {__version__}')

    subparsers = parser.add_subparsers(dest='command', metavar='command', required=True)

    bracket_parser = subparsers.add_parser('bracket', help='Bracket [a, b] of two operators')
    _add_operands(bracket_parser)

    mul_parser = subparsers.add_parser('mul', help='Product a b of two operators')
    _add_operands(mul_parser)

    trace_parser = subparsers.add_parser('trace', help='Trace of a finitary operator')
    trace_parser.add_argument('a', help='Operator file')

    dualize_parser = subparsers.add_parser('dualize', help='Dual basis prefix of a pairing')
    dualize_parser.add_argument('--spec', dest='spec', help='Pairing scenario file', required=True)
    dualize_parser.add_argument('--n', dest='n', help='Prefix length', type=int, required=True)
    dualize_parser.add_argument('--search-bound', dest='search_bound', help='Largest index tried when repairing a degenerate step', type=int)

    classify_parser = subparsers.add_parser('classify', help='Classify the twist of V by an automorphism')
    classify_parser.add_argument('--aut', dest='aut', help='Automorphism scenario file', required=True)
    classify_parser.add_argument('--max-window', dest='max_window', help='Largest window tried', type=int)

    approx_parser = subparsers.add_parser('approx', help='Traceless finitary operator agreeing with a on given vectors')
    approx_parser.add_argument('--op', dest='op', help='Operator file', required=True)
    approx_parser.add_argument('--vectors', dest='vectors', help='Vectors scenario file', required=True)

    check_parser = subparsers.add_parser('check', help='Run a property suite')
    check_parser.add_argument('--suite', dest='suite', help='Suite name or "all"', required=True)
    check_parser.add_argument('--seed', dest='seed', help='Random seed (overridden by LIESYS_SEED)', type=int)
    check_parser.add_argument('--window', dest='window', help='Index window', type=int)
    check_parser.add_argument('--cases', dest='cases', help='Cases per property', type=int)

    args = parser.parse_args()

    try:
        calculator = LieSysCalculator(vars(args))
    except LieSysConfigError as e:
        print(f"Config error: {e}\nCheck documentation for more information on how to configure {__app_name__}", file=sys.stderr)
        sys.exit(2)

    try:
        code = calculator.run()
    except LieSysError as e:
        print(f"error: {e}", file=sys.stderr)
        code = 2

    sys.exit(code)
