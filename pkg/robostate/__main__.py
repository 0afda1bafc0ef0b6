# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import sys

from knack import CLI, CLICommandsLoader
from knack.log import get_logger
from knack.parser import CLICommandParser
from knack.util import CLIError

from robostate.help import helps  # pylint: disable=unused-import
from robostate.utilities import CLI_NAME, dumps, get_robostate_config_dir
from robostate.utilities.const import CONFIG_ENV_VAR_PREFIX

logger = get_logger(__name__)

EXIT_USAGE = 1
EXIT_RUNTIME = 2


def _error_line(code, message):
    sys.stderr.write(dumps({'error': {'code': code, 'message': message}}) + '\n')


class RobotStateParser(CLICommandParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        _error_line('usage-error', message)
        self.exit(EXIT_USAGE)

    def _check_value(self, action, value):
        import argparse

        if action.choices is None or value in action.choices:
            return
        if action.dest in ('_command', '_subcommand'):
            self.error("'{}' is not in the '{}' command group. See '{} --help'.".format(value, self.prog, self.prog))
        self.error("'{}' is not a valid value for '{}'. Allowed values: {}".format(
            value, argparse._get_action_name(action),  # pylint: disable=protected-access
            ', '.join(str(choice) for choice in action.choices)))


class RobotStateCli(CLI):

    def get_cli_version(self):
        from robostate import __VERSION__
        return __VERSION__

    def exception_handler(self, ex):  # pylint: disable=no-self-use
        from robostate.core.exceptions import RobotStateError

        if isinstance(ex, RobotStateError):
            _error_line(ex.code, str(ex))
            return EXIT_RUNTIME
        if isinstance(ex, CLIError):
            _error_line(getattr(ex, 'code', 'usage-error'), str(ex))
            return EXIT_USAGE
        logger.debug('Unexpected error', exc_info=ex)
        _error_line('internal-error', '{}: {}'.format(type(ex).__name__, ex))
        return EXIT_RUNTIME


class RobotStateCommandsLoader(CLICommandsLoader):
    def load_command_table(self, args):
        from robostate.commands import load_command_table

        load_command_table(self, args)
        return super().load_command_table(args)

    def load_arguments(self, command):
        from robostate.params import load_arguments

        load_arguments(self, command)
        super().load_arguments(command)


def get_cli(out_file=sys.stdout):
    return RobotStateCli(cli_name=CLI_NAME, commands_loader_cls=RobotStateCommandsLoader,
                         config_dir=get_robostate_config_dir(), config_env_var_prefix=CONFIG_ENV_VAR_PREFIX,
                         parser_cls=RobotStateParser, out_file=out_file)


def main():
    try:
        robostate = get_cli()
        exit_code = robostate.invoke(sys.argv[1:])
        sys.exit(exit_code)
    except KeyboardInterrupt:
        sys.exit(1)


if __name__ == "__main__":
    main()
