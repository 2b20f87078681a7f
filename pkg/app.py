"""
permknock: permutation knockoffs for L1-penalised regressions
Main command-line entry point
"""
import logging
import sys

import click
import numpy as np

# Import configuration and logging
from config import get_config
from logging_config import LOGGER_NAME, setup_logging
from models.errors import (
    ConfigError,
    ConstantColumnError,
    ConvergenceError,
    DataFormatError,
    DegenerateLambdaError,
)

logger = logging.getLogger(LOGGER_NAME)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


class PermknockGroup(click.Group):
    """Command group with exception-to-exit-code handlers"""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.error_handlers = []

    def errorhandler(self, *exception_types):
        def decorator(handler):
            self.error_handlers.append((exception_types, handler))
            return handler
        return decorator

    def handle_error(self, error):
        for exception_types, handler in self.error_handlers:
            if isinstance(error, exception_types):
                return handler(error)
        raise error


def create_cli(config_name=None):
    """Application factory"""
    app_config = get_config(config_name)

    @click.group(cls=PermknockGroup, context_settings={'help_option_names': ['-h', '--help']})
    @click.option('-v', '--verbose', is_flag=True, help='Log debug messages to the console.')
    @click.pass_context
    def cli(ctx, verbose):
        """Permutation-knockoff variable selection for L1-penalised regressions."""
        setup_logging(app_config, verbose)
        ctx.obj = {'config': app_config}

    # Register error handlers
    register_error_handlers(cli)

    # Import commands
    from commands import fit, selection, simulate

    # Register commands
    cli.add_command(fit.command)
    cli.add_command(selection.command)
    cli.add_command(simulate.command)

    return cli


def register_error_handlers(cli):
    """Register error handlers"""

    @cli.errorhandler(click.exceptions.Abort)
    def aborted(error):
        click.echo('Aborted!', err=True)
        return EXIT_USAGE

    @cli.errorhandler(click.ClickException)
    def usage_error(error):
        """Bad flags or arguments"""
        logger.warning(f'Usage error: {error.format_message()}')
        error.show()
        return EXIT_USAGE

    @cli.errorhandler(DataFormatError, ConfigError, ConstantColumnError)
    def input_error(error):
        """Malformed data or experiment documents"""
        logger.warning(f'Input error: {error}')
        click.echo(f'Error: {error}', err=True)
        return EXIT_USAGE

    @cli.errorhandler(ConvergenceError, DegenerateLambdaError, np.linalg.LinAlgError)
    def numerical_error(error):
        """Solver or factorisation failures"""
        logger.error(f'Numerical failure: {error}', exc_info=True)
        click.echo(f'Numerical failure: {error}', err=True)
        return EXIT_NUMERICAL

    @cli.errorhandler(ValueError)
    def invalid_value(error):
        logger.warning(f'Invalid value: {error}')
        click.echo(f'Error: {error}', err=True)
        return EXIT_USAGE

    @cli.errorhandler(Exception)
    def unhandled(error):
        """Handle uncaught exceptions"""
        logger.error(f'Unhandled exception: {error}', exc_info=True)
        click.echo(f'Unexpected error: {error}', err=True)
        return EXIT_USAGE


def main(argv=None, config_name=None):
    """Run the command line and return the process exit code"""
    cli = create_cli(config_name)
    try:
        result = cli.main(args=argv, prog_name='permknock', standalone_mode=False)
    except Exception as error:
        return cli.handle_error(error)
    return result if isinstance(result, int) else EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
