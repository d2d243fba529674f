"""
PyIDCap Command-Line Interface (CLI) Module

Commands:
    pyidcap bounds            - Bound curves over a p-grid (CSV/JSON)
    pyidcap verify-reduction  - Check the depolarized product measurement against BSC_{p/2}
    pyidcap soft-cover        - Monte Carlo check of the soft-covering bound
    pyidcap finite-n          - Finite block-length bounds next to their limits
    pyidcap --version         - Show version information

Exit codes: 0 success, 1 claim violation, 2 usage error, 3 I/O error.

License: MIT
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pyidcap._version import __description__, __title__, print_version_info
from pyidcap.config import build_config
from pyidcap.errors import IdcapError
from pyidcap.experiments import render, run_experiment
from pyidcap.mapping import EXIT_USAGE, exit_code_for, get_error_mapping

logger = logging.getLogger(__name__)

# Keys of the argparse namespace that are not RunConfig fields
_CONTROL_KEYS = ('command', 'config', 'verbose', 'version')


def _shared_options() -> argparse.ArgumentParser:
    """Flags accepted by every subcommand."""
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument('--seed', type=int, default=None, help='Master seed (default 0)')
    shared.add_argument('--out', type=str, default=None, help='Write the artifact to this path instead of stdout')
    shared.add_argument('--format', dest='fmt', choices=('csv', 'json'), default=None,
                        help='Artifact format (default csv)')
    shared.add_argument('--config', type=str, default=None, help='Flat key = value config file; flags override it')
    shared.add_argument('--threads', type=int, default=None,
                        help='Worker threads, 0 = one per CPU (default from IDCAP_THREADS)')
    shared.add_argument('-v', '--verbose', action='count', default=0,
                        help='Log progress to stderr (-v info, -vv debug)')
    return shared


def _add_lambdas(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--lambda1', type=float, default=None, help='Type-I error level (default 0.1)')
    parser.add_argument('--lambda2', type=float, default=None, help='Type-II error level (default 0.1)')


def create_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser for the CLI."""
    parser = argparse.ArgumentParser(
        prog='pyidcap',
        description=f'{__title__} - {__description__}',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
Examples:
  pyidcap bounds --p-grid 0:0.99:0.01 --out curves.csv
  pyidcap verify-reduction --n 3 --p 0.5 --trials 100 --seed 42
  pyidcap soft-cover --n 6 --p 0.5 --eps 0.1 --trials 200
  pyidcap finite-n --p 0.9 --n-list 50,100,200,400 --thetas 0.1,0.25,0.4
        '''
    )
    parser.add_argument('--version', action='store_true', help='Show version information and exit')
    parser.add_argument('-v', '--verbose', action='count', default=0, help=argparse.SUPPRESS)
    shared = _shared_options()
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')

    bounds = sub.add_parser('bounds', parents=[shared], help='Bound curves over a p-grid',
                            description='Bound curves over a p-grid. The crossing point is printed to stderr '
                                        'when the table goes to stdout, and is kept in the JSON metadata '
                                        'as crossing_p.')
    bounds.add_argument('--p-grid', dest='p_grid', default=None,
                        help='start:stop:step (stop excluded) or a comma list')
    bounds.add_argument('--theta', type=float, default=None, help='Partition parameter in (0, 1/2)')
    bounds.add_argument('--alpha', type=float, default=None, help='Renyi order in (1, 2)')
    bounds.add_argument('--finite-n', dest='finite_n', type=int, default=None,
                        help='Also fill the finite_n_bound column at this block length')
    _add_lambdas(bounds)

    reduction = sub.add_parser('verify-reduction', parents=[shared],
                               help='Check the BSC reduction on random states and bases')
    reduction.add_argument('--n', type=int, default=None, help='Qubits, at most 5 (default 3)')
    reduction.add_argument('--p', type=float, default=None, help='Depolarizing parameter (default 0.5)')
    reduction.add_argument('--trials', type=int, default=None, help='Random (state, basis) pairs (default 100)')

    soft = sub.add_parser('soft-cover', parents=[shared], help='Monte Carlo soft-covering check')
    soft.add_argument('--n', type=int, default=None, help='Block length (default 6)')
    soft.add_argument('--p', type=float, default=None, help='Depolarizing parameter (default 0.5)')
    soft.add_argument('--alphas', type=str, default=None, help='Comma list of orders (default 1.25,1.5,1.75)')
    soft.add_argument('--eps', type=float, default=None, help='Covering target used to size M (default 0.1)')
    soft.add_argument('--m', type=int, default=None, help='Fixed codebook size instead of the sufficient M')
    soft.add_argument('--trials', type=int, default=None, help='Random codebooks, at least 30 (default 200)')
    soft.add_argument('--source', choices=('uniform', 'point'), default=None,
                      help='Codeword distribution (default uniform)')

    finite = sub.add_parser('finite-n', parents=[shared], help='Finite block-length bounds')
    finite.add_argument('--p', type=float, default=None, help='Depolarizing parameter (default 0.9)')
    finite.add_argument('--n-list', dest='n_list', default=None, help='Comma list of block lengths')
    finite.add_argument('--theta', type=float, default=None, help='Partition parameter in (0, 1/2)')
    finite.add_argument('--thetas', type=str, default=None, help='Comma list of theta values to sweep')
    finite.add_argument('--alpha', type=float, default=None, help='Renyi order for the simultaneous bound')
    finite.add_argument('--eps', type=float, default=None,
                        help='Covering target, default 0.9 (1 - lambda1 - lambda2)/2')
    _add_lambdas(finite)

    return parser


def configure_logging(verbosity: int) -> None:
    """Send log records to stderr: WARNING by default, INFO with -v, DEBUG with -vv."""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s', force=True)


def report_error(exc: BaseException) -> int:
    """Print an exception with its explanation to stderr and return its exit code."""
    mapping = get_error_mapping(type(exc).__name__)
    print(f"❌ Error: {exc}", file=sys.stderr)
    print(f"💡 {mapping['simple_explanation']}", file=sys.stderr)
    print(f"🔧 {mapping['fix_suggestion']}", file=sys.stderr)
    return exit_code_for(exc)


def run_command(args: argparse.Namespace) -> int:
    """Build the RunConfig for a parsed command line, run it and write the artifact."""
    flags = {k: v for k, v in vars(args).items() if k not in _CONTROL_KEYS}
    cfg = build_config(args.command, flags, args.config)
    logger.info("running %s with seed %d", cfg.command, cfg.seed)
    result = run_experiment(cfg)
    text = render(result, cfg.fmt)
    if cfg.out:
        Path(cfg.out).write_text(text, encoding='utf-8')
        print(result.summary)
    else:
        sys.stdout.write(text)
        print(result.summary, file=sys.stderr)
    return result.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.version:
        print_version_info()
        return 0

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    configure_logging(args.verbose)
    try:
        return run_command(args)
    except (IdcapError, OSError) as exc:
        return report_error(exc)
    except Exception as exc:
        logger.debug("unexpected failure in %s", args.command, exc_info=True)
        return report_error(exc)


def cli_entry_point():
    """Entry point for console script (used by setuptools)."""
    sys.exit(main())


if __name__ == '__main__':
    sys.exit(main())


__all__ = [
    'main',
    'cli_entry_point',
    'create_parser',
    'configure_logging',
    'report_error',
    'run_command',
]
