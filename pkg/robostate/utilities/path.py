# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import os
from glob import glob

from knack.util import CLIError


class MissingFileError(CLIError):
    code = 'file-not-found'


def get_robostate_package_path():
    """ Return the path to the installed robostate package. """
    return os.path.dirname(os.path.dirname(os.path.realpath(__file__)))


def get_shipped_robots():
    """ Returns {NAME: PATH} for the robot descriptions shipped with the package. """
    pattern = os.path.join(get_robostate_package_path(), 'config', '*.json')
    return {os.path.splitext(os.path.basename(path))[0]: path for path in sorted(glob(pattern))}


def resolve_robot_path(robot):
    """ Path of a robot description given a file path or a shipped robot name.

    :returns: Path (str) to a JSON robot description.
    """
    if robot is None:
        raise CLIError('no robot given. Use --robot or set ROBOSTATE_DEFAULTS_ROBOT.')
    if os.path.isfile(robot):
        return robot
    shipped = get_shipped_robots()
    if robot in shipped:
        return shipped[robot]
    raise MissingFileError("robot '{}' is neither a file nor one of: {}".format(robot, ', '.join(shipped)))


def require_file(path):
    if not os.path.isfile(path):
        raise MissingFileError('file not found: {}'.format(path))
    return path


def make_dirs(path):
    """ Create directories recursively. """
    os.makedirs(os.path.expanduser(path), exist_ok=True)


def make_parent_dirs(file_path):
    parent = os.path.dirname(os.path.abspath(file_path))
    make_dirs(parent)
