# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import numpy as np

from robostate.utilities import get_shipped_robots

from .common import load_model


def show_robot(robot=None):
    """ Parts ranked by volume, joint limits and the mid-range configuration of a robot. """
    from robostate.core.kinematics import largest_parts, midrange_config

    model = load_model(robot)
    ranking = largest_parts(model, model.num_parts)
    return {
        'name': model.name,
        'parts': [{'id': part.id, 'name': part.name, 'points': len(part.points), 'volume_cm3': part.volume,
                   'rank': ranking.index(part.id) + 1} for part in model.parts],
        'joints': [{'name': joint.name, 'parent': joint.parent, 'child': joint.child,
                    'lower_deg': float(np.degrees(joint.lower)), 'upper_deg': float(np.degrees(joint.upper))}
                   for joint in model.joints],
        'midrange': [float(v) for v in midrange_config(model)],
    }


def list_robots():
    return [{'name': name, 'path': path} for name, path in get_shipped_robots().items()]
