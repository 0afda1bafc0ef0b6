# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import io
import shlex


def run_cli(args):
    """ Invoke the robostate CLI in-process.

    :param args: command line without the program name, as a string or a list.
    :returns: (exit_code, stdout text).
    """
    from robostate.__main__ import get_cli

    if isinstance(args, str):
        args = shlex.split(args)
    out = io.StringIO()
    cli = get_cli(out_file=out)
    try:
        exit_code = cli.invoke(args, out_file=out)
    except SystemExit as ex:
        exit_code = ex.code
    return exit_code, out.getvalue()
