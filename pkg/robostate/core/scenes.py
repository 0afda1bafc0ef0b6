# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""Synthetic scenes: ground-truth sampling, observations and state perturbation."""

from dataclasses import dataclass

import numpy as np
from knack.log import get_logger
from scipy.spatial.transform import Rotation

from .camera import BoundingBox, Intrinsics, project, tight_bbox
from .estimator import Observation, RobotState, part_poses_in_camera
from .exceptions import (
    DegenerateParamError, DimensionMismatchError, FrustumRejectionError, InvalidPartError, ParseError)
from .geometry import RigidTransform
from .kinematics import robot_centroid, sample_joint_config
from .renderer import rasterize

logger = get_logger(__name__)

MAX_TRIES = 1000
MIN_IN_IMAGE = 0.5
DISTANCE_RANGE = (0.8, 2.4)


@dataclass(frozen=True)
class PerturbationConfig:
    translation_sigma: float = 0.10
    rotation_sigma_deg: float = 60.0
    joint_sigma: float = 0.05

    def __post_init__(self):
        if min(self.translation_sigma, self.rotation_sigma_deg, self.joint_sigma) < 0:
            raise ParseError('perturbation standard deviations must be >= 0')


def observed_points(model, state, camera):
    """ Camera-frame points, projections and visibility of every part, in model-point order. """
    poses = part_poses_in_camera(model, state)
    points = [poses[part.id].apply(part.points) for part in model.parts]
    labels = np.concatenate([np.full(len(part.points), part.id) for part in model.parts])
    projection = project(np.concatenate(points), camera)
    raster = rasterize(projection.uv, projection.depth, labels, camera.width, camera.height)
    uv, visible = [], []
    start = 0
    for chunk in points:
        stop = start + len(chunk)
        uv.append(projection.uv[start:stop])
        visible.append(raster.visible[start:stop])
        start = stop
    return tuple(points), tuple(uv), tuple(visible)


@dataclass(frozen=True, eq=False)
class Scene:
    scene_id: int
    seed: int
    camera: Intrinsics
    gt_state: RobotState
    detection: BoundingBox
    part_points: tuple
    part_uv: tuple
    part_visible: tuple

    @classmethod
    def build(cls, model, camera, gt_state, scene_id=0, seed=0, detection=None):
        points, uv, visible = observed_points(model, gt_state, camera)
        if detection is None:
            detection = tight_bbox(np.concatenate([u[v] for u, v in zip(uv, visible)]))
        return cls(scene_id, seed, camera, gt_state, detection, points, uv, visible)

    def observation(self, joint_measurement=None):
        return Observation(camera=self.camera, detection=self.detection, part_points=self.part_points,
                           part_uv=self.part_uv, part_visible=self.part_visible, gt_state=self.gt_state,
                           joint_measurement=self.gt_state.q if joint_measurement is None else joint_measurement,
                           scene_id=self.scene_id)

    def to_dict(self):
        return {
            'scene_id': self.scene_id,
            'seed': self.seed,
            'camera': self.camera.to_dict(),
            'gt_state': self.gt_state.to_dict(),
            'detection': self.detection.to_dict(),
            'visible': [[int(v) for v in part] for part in self.part_visible],
        }

    @classmethod
    def from_dict(cls, data, model):
        """ Points and projections are regenerated from the ground truth; visibility is kept as stored. """
        try:
            camera = Intrinsics.from_dict(data['camera'])
            gt_state = RobotState.from_dict(data['gt_state'])
            scene = cls.build(model, camera, gt_state, int(data['scene_id']), int(data.get('seed', 0)),
                              BoundingBox.from_dict(data['detection']))
            visible = tuple(np.asarray(part, dtype=bool) for part in data['visible'])
        except (DegenerateParamError, DimensionMismatchError, InvalidPartError) as ex:
            raise ParseError('scene record does not match robot `{}`: {}'.format(model.name, ex), field='gt_state')
        except (KeyError, TypeError, ValueError) as ex:
            raise ParseError('malformed scene record: {}'.format(ex))
        if [len(v) for v in visible] != [len(p.points) for p in model.parts]:
            raise ParseError('scene {} does not match robot `{}`'.format(scene.scene_id, model.name),
                             field='visible')
        return cls(scene.scene_id, scene.seed, camera, gt_state, scene.detection, scene.part_points,
                   scene.part_uv, visible)


def _place(model, q, rotation, target):
    centroid = robot_centroid(model, RobotState(0, RigidTransform(rotation), q))
    return RobotState(0, RigidTransform(rotation, target - centroid), q)


def sample_scene(model, camera, rng, scene_id=0, seed=0, max_tries=MAX_TRIES):
    """ Random ground-truth scene with the robot in view.

    Joints are uniform within limits, the base rotation uniform over SO(3) and
    the centroid placed along a random pixel ray at a uniform distance.
    """
    for attempt in range(max_tries):
        if attempt == max_tries // 2:
            logger.warning('Scene %s: %d samples rejected so far', scene_id, attempt)
        q = sample_joint_config(model, rng)
        rotation = Rotation.random(random_state=rng).as_matrix()
        u, v = rng.uniform(0, camera.width), rng.uniform(0, camera.height)
        ray = np.array([(u - camera.c_x) / camera.f_x, (v - camera.c_y) / camera.f_y, 1.0])
        distance = rng.uniform(*DISTANCE_RANGE)
        state = _place(model, q, rotation, ray / np.linalg.norm(ray) * distance)

        points, uv, visible = observed_points(model, state, camera)
        uv_all = np.concatenate(uv)
        inside = (np.all(np.isfinite(uv_all), axis=1) & (uv_all[:, 0] >= 0) & (uv_all[:, 0] < camera.width) &
                  (uv_all[:, 1] >= 0) & (uv_all[:, 1] < camera.height))
        if inside.mean() < MIN_IN_IMAGE:
            continue
        seen = np.concatenate([u_[v_] for u_, v_ in zip(uv, visible)])
        if not len(seen):
            continue
        detection = tight_bbox(seen)
        if not all(s > 0 for s in detection.size):
            continue
        logger.debug('Scene %s accepted after %d tries', scene_id, attempt + 1)
        return Scene(scene_id, seed, camera, state, detection, points, uv, visible)
    raise FrustumRejectionError('no in-view sample for scene {} after {} tries'.format(scene_id, max_tries))


def generate_scenes(model, camera, count, seed):
    """ Scenes 0..count-1, each drawn from its own stream seeded with seed ^ scene id. """
    return [sample_scene(model, camera, np.random.default_rng(seed ^ scene_id), scene_id, seed)
            for scene_id in range(count)]


def perturb_state(state, config, rng, model):
    """ Gaussian translation noise per axis, Euler-angle rotation noise and joint noise scaled by range. """
    translation = state.pose.translation + rng.normal(0.0, 1.0, 3) * config.translation_sigma
    angles = rng.normal(0.0, 1.0, 3) * config.rotation_sigma_deg
    rotation = state.pose.rotation
    if np.any(angles):
        rotation = rotation @ Rotation.from_euler('xyz', angles, degrees=True).as_matrix()
    q = np.asarray(state.q, dtype=float)
    if len(q):
        q = model.clamp(q + rng.normal(0.0, 1.0, len(q)) * config.joint_sigma * (model.upper - model.lower))
    return RobotState(state.anchor, RigidTransform(rotation, translation), q)
