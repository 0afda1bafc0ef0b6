# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import os

import numpy as np
from scipy.spatial.transform import Rotation

from robostate.core.camera import Intrinsics
from robostate.core.geometry import RigidTransform
from robostate.core.kinematics import load_robot, robot_from_dict

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), 'config')

CAMERA = Intrinsics(600.0, 600.0, 320.0, 240.0, 640, 480)


def panda():
    return load_robot(os.path.join(CONFIG_DIR, 'panda.json'))


def planar_arm():
    return load_robot(os.path.join(CONFIG_DIR, 'planar_arm.json'))


def box_points(center=(0.0, 0.0, 0.0), half=(0.05, 0.05, 0.05)):
    center = np.asarray(center, dtype=float)
    corners = [[sx, sy, sz] for sz in (-1, 1) for sy in (-1, 1) for sx in (-1, 1)]
    return (np.array(corners) * np.asarray(half) + center).tolist() + [center.tolist()]


def rigid_box():
    """ Single part, no joint. """
    return robot_from_dict({'name': 'box', 'parts': [{'name': 'body', 'points': box_points(half=(0.1, 0.06, 0.04))}]})


def serial_chain(dof, length=0.2):
    """ Straight chain of `dof` revolute joints alternating about z and y. """
    parts = [{'name': 'p0', 'points': box_points()}]
    joints = []
    for index in range(dof):
        parts.append({'name': 'p{}'.format(index + 1),
                      'points': box_points((0.0, 0.0, length / 2), (0.03, 0.03, length / 2))})
        axis = [0, 0, 1] if index % 2 == 0 else [0, 1, 0]
        origin = np.eye(4)
        origin[2, 3] = length if index else 0.05
        joints.append({'parent': index, 'child': index + 1, 'axis': axis, 'limits': [-2.0, 2.0],
                       'origin': origin.tolist()})
    return robot_from_dict({'name': 'chain{}'.format(dof), 'parts': parts, 'joints': joints})


def random_rotation(rng):
    return Rotation.random(random_state=rng).as_matrix()


def random_transform(rng, scale=1.0):
    return RigidTransform(random_rotation(rng), rng.normal(0.0, scale, 3))


def random_state(model, rng, depth=(1.0, 2.0)):
    """ Random anchor, rotation and joints, anchor placed in front of the camera. """
    from robostate.core.estimator import RobotState
    from robostate.core.kinematics import sample_joint_config

    anchor = int(rng.integers(model.num_parts))
    translation = np.array([rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(*depth)])
    return RobotState(anchor, RigidTransform(random_rotation(rng), translation), sample_joint_config(model, rng))


def assert_transform_close(test, first, second, tol):
    test.assertLess(np.abs(first.rotation - second.rotation).max(), tol)
    test.assertLess(np.abs(first.translation - second.translation).max(), tol)
