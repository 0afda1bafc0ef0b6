# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

# library defaults, re-exported from the modules that use them
from robostate.core.camera import CROP_RATIO, CROP_ENLARGEMENT, MIN_CROP_SIZE
from robostate.core.estimator import DEFAULT_ITERATIONS as K_TEST, DEFAULT_LARGEST as N_LARGEST, Z_GUESS
from robostate.core.metrics import ADD_THRESHOLD, LOSS_LAMBDA, PCK_FRACTION
from robostate.core.renderer import DEFAULT_RESOLUTION as CROP_RESOLUTION, DEPTH_EPSILON, SPLAT_RADIUS

CLI_NAME = 'robostate'
CONFIG_ENV_VAR_PREFIX = 'ROBOSTATE'
ENV_VAR_CONFIG_DIR = 'ROBOSTATE_CONFIG_DIR'     # overrides ~/.robostate
SCHEMA_VERSION = 1                              # JSON Lines header of scenes and traces files

K_TRAIN = 3

# initial-state perturbation (--init perturb)
PERTURB_TRANSLATION_SIGMA = 0.10
PERTURB_ROTATION_SIGMA_DEG = 60.0
PERTURB_JOINT_SIGMA = 0.05

# default camera of generated scenes
DEFAULT_CAMERA = {'f_x': 600.0, 'f_y': 600.0, 'c_x': 320.0, 'c_y': 240.0, 'width': 640, 'height': 480}

__all__ = [
    'CROP_RATIO', 'CROP_ENLARGEMENT', 'MIN_CROP_SIZE', 'CROP_RESOLUTION', 'DEPTH_EPSILON', 'SPLAT_RADIUS',
    'K_TEST', 'K_TRAIN', 'N_LARGEST', 'Z_GUESS', 'ADD_THRESHOLD', 'LOSS_LAMBDA', 'PCK_FRACTION',
    'CLI_NAME', 'CONFIG_ENV_VAR_PREFIX', 'ENV_VAR_CONFIG_DIR', 'SCHEMA_VERSION',
    'PERTURB_TRANSLATION_SIGMA', 'PERTURB_ROTATION_SIGMA_DEG', 'PERTURB_JOINT_SIGMA', 'DEFAULT_CAMERA',
]
