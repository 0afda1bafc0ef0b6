# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

from .config import (
    get_robostate_config_dir
)
from .const import (
    CLI_NAME,
    SCHEMA_VERSION,
    DEFAULT_CAMERA
)
from .display import (
    display,
    heading,
    subheading,
    progress
)
from .jsonl import (
    KIND_SCENES,
    KIND_TRACES,
    KIND_REPORT,
    KIND_OVERLAY,
    dumps,
    make_header,
    read_jsonl,
    write_jsonl
)
from .path import (
    MissingFileError,
    get_robostate_package_path,
    get_shipped_robots,
    make_dirs,
    make_parent_dirs,
    require_file,
    resolve_robot_path
)
from .testing import run_cli


__all__ = [
    'get_robostate_config_dir',
    'CLI_NAME',
    'SCHEMA_VERSION',
    'DEFAULT_CAMERA',
    'display',
    'heading',
    'subheading',
    'progress',
    'KIND_SCENES',
    'KIND_TRACES',
    'KIND_REPORT',
    'KIND_OVERLAY',
    'dumps',
    'make_header',
    'read_jsonl',
    'write_jsonl',
    'MissingFileError',
    'get_robostate_package_path',
    'get_shipped_robots',
    'make_dirs',
    'make_parent_dirs',
    'require_file',
    'resolve_robot_path',
    'run_cli'
]
