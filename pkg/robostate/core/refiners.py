# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""Refiner implementations: an exact oracle, a noisy oracle and a damped Gauss-Newton aligner."""

from dataclasses import dataclass

import numpy as np
from knack.log import get_logger
from scipy.spatial.transform import Rotation

from .estimator import Refiner
from .exceptions import MissingCorrespondencesError, ParseError, RobotStateError
from .geometry import PoseUpdate, apply_pose_update, reference_motion, solve_exact_update, update_from_motion
from .kinematics import forward_kinematics

logger = get_logger(__name__)

RESIDUAL_POINT3D = 'point3d'
RESIDUAL_REPROJECTION = 'reprojection'

MAX_DAMPING_RETRIES = 5
DAMPING_FACTOR = 10.0


@dataclass(frozen=True)
class OracleConfig:
    rotation_sigma_deg: float = 0.0
    translation_sigma: float = 0.0
    joint_sigma: float = 0.0
    step_fraction: float = 1.0

    def __post_init__(self):
        if min(self.rotation_sigma_deg, self.translation_sigma, self.joint_sigma) < 0:
            raise ParseError('noise standard deviations must be >= 0')
        if not 0 < self.step_fraction <= 1:
            raise ParseError('step_fraction must be within (0, 1]')

    @property
    def noiseless(self):
        return self.rotation_sigma_deg == 0 and self.translation_sigma == 0 and self.joint_sigma == 0


# per-prediction noise of the noisy oracle, far below the initial-state perturbation scales
# (0.10 m, 60 deg, 5 % of range); `refine --oracle-noise` overrides it
NOISY_ORACLE = OracleConfig(rotation_sigma_deg=0.5, translation_sigma=0.002, joint_sigma=0.001, step_fraction=0.5)


def _scale_update(update, fraction):
    if fraction == 1.0:
        return update
    rotvec = Rotation.from_matrix(update.delta_R).as_rotvec() * fraction
    return PoseUpdate(update.v_x * fraction, update.v_y * fraction, update.v_z ** fraction,
                      Rotation.from_rotvec(rotvec).as_matrix())


def oracle_predict(state, gt_state, reference, focal, config, model=None, rng=None):
    """ The update taking `state` to `gt_state`, scaled by `config.step_fraction`, plus noise.

    `gt_state` must be expressed for the anchor of `state`.
    """
    update = _scale_update(solve_exact_update(state.pose, gt_state.pose, reference, focal), config.step_fraction)
    dq = (np.asarray(gt_state.q, dtype=float) - state.q) * config.step_fraction
    if config.noiseless:
        return update, dq

    rng = rng if rng is not None else np.random.default_rng()
    moved = reference_motion(update, reference, focal) + rng.normal(0.0, config.translation_sigma, 3)
    noise = Rotation.from_euler('xyz', rng.normal(0.0, config.rotation_sigma_deg, 3), degrees=True).as_matrix()
    update = update_from_motion(reference, moved, noise @ update.delta_R, focal)
    if len(dq):
        ranges = model.upper - model.lower if model is not None else np.ones(len(dq))
        dq = dq + rng.normal(0.0, 1.0, len(dq)) * config.joint_sigma * ranges
    return update, dq


class OracleRefiner(Refiner):
    """ Reads the ground truth carried by the observation. """

    name = 'oracle'

    def __init__(self, model, config=None):
        self.model = model
        self.config = config or OracleConfig()

    def predict(self, render_output, observation, state, focal, reference, known_joints, rng=None):
        if observation.gt_state is None:
            raise MissingCorrespondencesError('the oracle refiner needs a ground-truth state')
        update, dq = oracle_predict(state, observation.gt_state, reference, focal, self.config, self.model, rng)
        if known_joints:
            dq = np.zeros_like(dq)
        return update, dq


@dataclass(frozen=True)
class LsqConfig:
    max_iterations: int = 10
    damping: float = 1e-3
    fd_step: float = 1e-6
    residual: str = RESIDUAL_POINT3D
    visible_only: bool = False

    def __post_init__(self):
        if self.damping < 0:
            raise ParseError('damping must be >= 0')
        if self.max_iterations < 1 or self.fd_step <= 0:
            raise ParseError('iteration count and finite-difference step must be positive')
        if self.residual not in (RESIDUAL_POINT3D, RESIDUAL_REPROJECTION):
            raise ParseError('unknown residual type `{}`'.format(self.residual))


class AlignmentProblem:
    """ Residuals of the model points placed by an update, against observed points.

    Parameters are [v_x, v_y, log v_z, rotation vector (3), dq (dof, omitted with known joints)].
    """

    def __init__(self, model, state, observation, reference, focal, known_joints, config):
        self.model = model
        self.state = state
        self.reference = np.asarray(reference, dtype=float)
        self.focal = focal
        self.known_joints = known_joints
        self.config = config
        self.camera = observation.camera
        self._targets, self._masks = self._collect_targets(observation)

    @property
    def size(self):
        return 6 + (0 if self.known_joints else self.model.dof)

    def _collect_targets(self, observation):
        source = observation.part_points if self.config.residual == RESIDUAL_POINT3D else observation.part_uv
        if source is None:
            raise MissingCorrespondencesError('observation has no {} targets'.format(self.config.residual))
        if len(source) != self.model.num_parts:
            raise MissingCorrespondencesError('observation has targets for {} of {} parts'.format(
                len(source), self.model.num_parts))
        use_visible = self.config.visible_only or self.config.residual == RESIDUAL_REPROJECTION
        targets, masks = [], []
        for part in self.model.parts:
            target = np.asarray(source[part.id], dtype=float)
            if len(target) != len(part.points):
                raise MissingCorrespondencesError('part {} has {} targets for {} model points'.format(
                    part.id, len(target), len(part.points)))
            mask = np.all(np.isfinite(target), axis=1)
            if use_visible and observation.part_visible is not None:
                mask &= np.asarray(observation.part_visible[part.id], dtype=bool)
            targets.append(target[mask])
            masks.append(mask)
        if not sum(int(m.sum()) for m in masks):
            raise MissingCorrespondencesError('no usable point correspondence')
        return targets, masks

    def unpack(self, theta):
        update = PoseUpdate(theta[0], theta[1], np.exp(theta[2]), Rotation.from_rotvec(theta[3:6]).as_matrix())
        dq = np.zeros(self.model.dof) if self.known_joints else np.asarray(theta[6:], dtype=float)
        return update, dq

    def residuals(self, theta):
        update, dq = self.unpack(theta)
        pose = apply_pose_update(self.state.pose, update, self.reference, self.focal)
        q = self.state.q + dq
        poses = forward_kinematics(self.model, q)
        camera_root = pose @ poses[self.state.anchor].inverse()
        chunks = []
        for part, target, mask in zip(self.model.parts, self._targets, self._masks):
            if not len(target):
                continue
            points = (camera_root @ poses[part.id]).apply(part.points[mask])
            if self.config.residual == RESIDUAL_POINT3D:
                chunks.append((points - target).ravel())
            else:
                z = np.maximum(points[:, 2], 1e-9)
                uv = np.stack([self.camera.f_x * points[:, 0] / z + self.camera.c_x,
                               self.camera.f_y * points[:, 1] / z + self.camera.c_y], axis=1)
                chunks.append((uv - target).ravel())
        return np.concatenate(chunks)

    def cost(self, theta):
        r = self.residuals(theta)
        return 0.5 * float(r @ r)

    def jacobian(self, theta):
        """ Central finite differences, one column per parameter. """
        step = self.config.fd_step
        columns = []
        for index in range(len(theta)):
            offset = np.zeros(len(theta))
            offset[index] = step
            columns.append((self.residuals(theta + offset) - self.residuals(theta - offset)) / (2.0 * step))
        return np.stack(columns, axis=1)


def lsq_solve(problem, config):
    """ Levenberg-Marquardt over the problem parameters starting from the identity update.

    :returns: (theta, costs) where costs lists the cost after every accepted step.
    """
    theta = np.zeros(problem.size)
    cost = problem.cost(theta)
    costs = [cost]
    damping = config.damping
    for _ in range(config.max_iterations):
        residual = problem.residuals(theta)
        jac = problem.jacobian(theta)
        gradient = jac.T @ residual
        if not np.any(gradient):
            break
        normal = jac.T @ jac
        accepted = False
        for _ in range(MAX_DAMPING_RETRIES + 1):
            system = normal + damping * np.diag(np.diag(normal) + 1e-12)
            try:
                step = np.linalg.solve(system, -gradient)
            except np.linalg.LinAlgError:
                logger.warning('Singular normal equations; returning the identity update')
                return np.zeros(problem.size), costs
            candidate = theta + step
            try:
                new_cost = problem.cost(candidate)
            except (RobotStateError, ValueError, FloatingPointError):
                new_cost = np.inf
            if new_cost <= cost:
                theta, cost = candidate, new_cost
                damping = max(damping / DAMPING_FACTOR, 1e-12)
                accepted = True
                break
            damping *= DAMPING_FACTOR
        if not accepted:
            break
        costs.append(cost)
        if cost < 1e-24:
            break
    return theta, costs


class LsqRefiner(Refiner):
    """ Aligns the model to observed points with known correspondences (part-point identity). """

    name = 'lsq'

    def __init__(self, model, config=None):
        self.model = model
        self.config = config or LsqConfig()

    def predict(self, render_output, observation, state, focal, reference, known_joints, rng=None):
        problem = AlignmentProblem(self.model, state, observation, reference, focal, known_joints, self.config)
        theta, costs = lsq_solve(problem, self.config)
        logger.debug('lsq: cost %.3e -> %.3e in %d steps', costs[0], costs[-1], len(costs) - 1)
        return problem.unpack(theta)


REFINERS = {
    'oracle': lambda model: OracleRefiner(model),
    'noisy-oracle': lambda model: OracleRefiner(model, NOISY_ORACLE),
    'lsq': lambda model: LsqRefiner(model),
}


def make_refiner(name, model, step_fraction=None, noise=None):
    """ Refiner by name. `step_fraction` and `noise` (rotation degrees, translation meters, joint range
    fraction) override the oracle configuration and are ignored by the other refiners.
    """
    try:
        refiner = REFINERS[name](model)
    except KeyError:
        raise ParseError('unknown refiner `{}`; expected one of {}'.format(name, ', '.join(sorted(REFINERS))))
    if isinstance(refiner, OracleRefiner) and (step_fraction is not None or noise is not None):
        config = refiner.config
        rotation, translation, joint = noise if noise is not None else (
            config.rotation_sigma_deg, config.translation_sigma, config.joint_sigma)
        refiner.config = OracleConfig(float(rotation), float(translation), float(joint),
                                      config.step_fraction if step_fraction is None else step_fraction)
    return refiner
