# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import os

from .const import ENV_VAR_CONFIG_DIR


def get_robostate_config_dir():
    """ Returns the user's .robostate directory. """
    return os.getenv(ENV_VAR_CONFIG_DIR, None) or os.path.expanduser(os.path.join('~', '.robostate'))
