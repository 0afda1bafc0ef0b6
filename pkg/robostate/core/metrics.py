# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""Training losses and evaluation metrics."""

import math
from dataclasses import dataclass, field

import numpy as np
from knack.log import get_logger
from scipy.spatial.transform import Rotation

from .camera import project
from .exceptions import EmptyInputError, EmptyPointSetError, NoVisibleKeypointsError, RobotStateError
from .geometry import apply_pose_update, solve_exact_update
from .kinematics import joint_keypoints

logger = get_logger(__name__)

LOSS_LAMBDA = 1.0
ADD_THRESHOLD = 0.1
PCK_FRACTION = 0.2
EULER_CONVENTION = 'XYZ'


@dataclass(frozen=True)
class LossBreakdown:
    loss_xy: float
    loss_z: float
    loss_R: float
    loss_q: float
    lam: float = LOSS_LAMBDA

    @property
    def total(self):
        return self.loss_xy + self.loss_z + self.loss_R + self.lam * self.loss_q

    def to_dict(self):
        return {'loss_xy': self.loss_xy, 'loss_z': self.loss_z, 'loss_R': self.loss_R, 'loss_q': self.loss_q,
                'total': self.total}

    @classmethod
    def from_dict(cls, data, lam=LOSS_LAMBDA):
        return cls(data['loss_xy'], data['loss_z'], data['loss_R'], data['loss_q'], lam)


def anchor_distance(first, second, points):
    """ Mean L1 distance between anchor points placed by two transforms. """
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    if not len(points):
        raise EmptyPointSetError('anchor point set is empty')
    return float(np.abs(first.apply(points) - second.apply(points)).sum(axis=1).mean())


def disentangled_pose_loss(prediction, gt_update, current, reference, focal, points):
    """ (loss_xy, loss_z, loss_R): each term swaps one parameter block of the
    ground-truth update for the predicted one and measures the anchor distance
    to the ground-truth pose.
    """
    target = apply_pose_update(current, gt_update, reference, focal)

    def _distance(update):
        return anchor_distance(apply_pose_update(current, update, reference, focal), target, points)

    loss_xy = _distance(gt_update.replace(v_x=prediction.v_x, v_y=prediction.v_y))
    loss_z = _distance(gt_update.replace(v_z=prediction.v_z))
    loss_r = _distance(gt_update.replace(delta_R=prediction.delta_R))
    return loss_xy, loss_z, loss_r


def joint_loss(q, dq, q_gt):
    residual = np.asarray(q, dtype=float) + np.asarray(dq, dtype=float) - np.asarray(q_gt, dtype=float)
    return float(residual @ residual)


def total_loss(breakdowns, lam=LOSS_LAMBDA):
    """ Sum over iterations of the pose terms plus lam times the joint term. """
    return float(sum(b.loss_xy + b.loss_z + b.loss_R + lam * b.loss_q for b in breakdowns))


def step_losses(model, state, gt_state, update, dq, reference, focal, lam=LOSS_LAMBDA):
    """ LossBreakdown of one refinement iteration, or None without a usable ground truth. """
    if gt_state is None:
        return None
    try:
        gt_update = solve_exact_update(state.pose, gt_state.pose, reference, focal)
    except RobotStateError as ex:
        logger.debug('No loss for this iteration: %s', ex)
        return None
    points = model.parts[state.anchor].points
    loss_xy, loss_z, loss_r = disentangled_pose_loss(update, gt_update, state.pose, reference, focal, points)
    return LossBreakdown(loss_xy, loss_z, loss_r, joint_loss(state.q, dq, gt_state.q), lam)


def add_error(model, pred, gt):
    """ Mean 3D distance between joint keypoints placed by two states (meters). """
    distances = np.linalg.norm(joint_keypoints(model, pred) - joint_keypoints(model, gt), axis=1)
    return float(distances.mean())


def add_auc(errors, threshold_max=ADD_THRESHOLD):
    """ Area under the ADD pass-rate curve on [0, threshold_max], normalized to [0, 1].

    The pass rate is a step function of the sorted errors, so the integral is exact:
    each error e contributes max(0, threshold_max - e).
    """
    errors = np.asarray(errors, dtype=float).reshape(-1)
    if not len(errors):
        raise EmptyInputError('no ADD errors to integrate')
    if not threshold_max > 0:
        raise EmptyInputError('threshold_max must be positive')
    return float(np.maximum(0.0, threshold_max - errors).mean() / threshold_max)


def pck(pred, gt, normalizer=None, fraction=PCK_FRACTION, visible=None):
    """ Fraction of visible keypoints whose pixel error is below fraction * normalizer.

    :param normalizer: pixels; defaults to the larger side of the visible ground-truth keypoint box.
    """
    pred = np.asarray(pred, dtype=float).reshape(-1, 2)
    gt = np.asarray(gt, dtype=float).reshape(-1, 2)
    if pred.shape != gt.shape:
        raise EmptyInputError('keypoint lists differ in length ({} vs {})'.format(len(pred), len(gt)))
    mask = np.all(np.isfinite(gt), axis=1)
    if visible is not None:
        mask &= np.asarray(visible, dtype=bool)
    if not mask.any():
        raise NoVisibleKeypointsError('no visible keypoint')
    if normalizer is None:
        normalizer = float((gt[mask].max(axis=0) - gt[mask].min(axis=0)).max())
    error = np.linalg.norm(pred[mask] - gt[mask], axis=1)
    error[~np.isfinite(error)] = np.inf
    return float(np.mean(error < fraction * normalizer))


def euler_error_deg(pred_rotation, gt_rotation):
    """ Absolute intrinsic XYZ Euler angles of the relative rotation, in degrees within [0, 180]. """
    relative = Rotation.from_matrix(np.asarray(gt_rotation).T @ np.asarray(pred_rotation))
    angles = relative.as_euler(EULER_CONVENTION, degrees=True)
    angles = (angles + 180.0) % 360.0 - 180.0
    return np.abs(angles)


def pose_error_report(pred, gt, model):
    """ Base-part translation (cm), rotation (degrees) and joint (degrees) errors. """
    from .estimator import part_poses_in_camera

    pred_base = part_poses_in_camera(model, pred)[0]
    gt_base = part_poses_in_camera(model, gt)[0]
    delta_cm = (pred_base.translation - gt_base.translation) * 100.0
    joints = np.degrees(np.abs(np.asarray(pred.q) - np.asarray(gt.q)))
    return {
        'trans_xyz': float(np.abs(delta_cm).mean()),
        'trans_norm': float(np.linalg.norm(delta_cm)),
        'rot_euler': float(euler_error_deg(pred_base.rotation, gt_base.rotation).mean()),
        'joint_deg': float(joints.mean()) if len(joints) else 0.0,
    }


def keypoints_2d(model, state, camera):
    projection = project(joint_keypoints(model, state), camera)
    inside = (projection.valid & (projection.uv[:, 0] >= 0) & (projection.uv[:, 0] < camera.width) &
              (projection.uv[:, 1] >= 0) & (projection.uv[:, 1] < camera.height))
    return projection.uv, inside


@dataclass
class MetricReport:
    add_errors: list = field(default_factory=list)
    add_auc: float = None
    pck: float = None
    trans_xyz: float = None
    trans_norm: float = None
    rot_euler: float = None
    joint_deg: float = None
    add_per_iteration: list = field(default_factory=list)
    total_loss: float = None
    top_fraction: dict = None
    threshold_max: float = ADD_THRESHOLD
    scene_ids: list = field(default_factory=list)

    def to_dict(self, percent=True):
        """ JSON-ready report; AUC and PCK are scaled by 100 when `percent`. """
        scale = 100.0 if percent else 1.0
        return {
            'scenes': len(self.add_errors),
            'add_auc': None if self.add_auc is None else self.add_auc * scale,
            'add_threshold_m': self.threshold_max,
            'pck': None if self.pck is None else self.pck * scale,
            'trans_xyz_cm': self.trans_xyz,
            'trans_norm_cm': self.trans_norm,
            'rot_euler_deg': self.rot_euler,
            'joint_deg': self.joint_deg,
            'add_median_per_iteration': self.add_per_iteration,
            'total_loss': self.total_loss,
            'top_fraction': self.top_fraction,
            'add_errors': dict(zip((str(s) for s in self.scene_ids), self.add_errors)),
        }


def _mean_errors(rows):
    return {key: float(np.mean([row[key] for row in rows])) for key in ('trans_xyz', 'trans_norm', 'rot_euler',
                                                                        'joint_deg')}


def evaluate(model, scenes, traces, threshold_max=ADD_THRESHOLD, top_fraction=None, pck_fraction=PCK_FRACTION,
             lam=LOSS_LAMBDA):
    """ Aggregate a MetricReport over traces matched to scenes by scene id.

    :param scenes: mapping scene id -> Scene.
    :param traces: iterable of RefinementTrace.
    :param top_fraction: optionally also average the pose errors over the best
        fraction of scenes ranked by joint error.
    """
    traces = sorted(traces, key=lambda t: t.scene_id)
    if not traces:
        raise EmptyInputError('no trace to evaluate')
    report = MetricReport(threshold_max=threshold_max)
    rows, pcks, losses, per_iteration = [], [], [], {}
    for trace in traces:
        try:
            scene = scenes[trace.scene_id]
        except KeyError:
            raise EmptyInputError('trace references unknown scene {}'.format(trace.scene_id))
        final = trace.final_state
        report.scene_ids.append(trace.scene_id)
        report.add_errors.append(add_error(model, final, scene.gt_state))
        rows.append(pose_error_report(final, scene.gt_state, model))

        gt_uv, visible = keypoints_2d(model, scene.gt_state, scene.camera)
        pred_uv, _ = keypoints_2d(model, final, scene.camera)
        try:
            pcks.append(pck(pred_uv, gt_uv, fraction=pck_fraction, visible=visible))
        except NoVisibleKeypointsError:
            logger.info('Scene %s has no visible keypoint; skipped for PCK', trace.scene_id)

        for k, state in enumerate(trace.states):
            per_iteration.setdefault(k, []).append(add_error(model, state, scene.gt_state))
        breakdowns = [step.losses for step in trace.steps if step.losses is not None]
        if breakdowns:
            losses.append(total_loss(breakdowns, lam))

    report.add_auc = add_auc(report.add_errors, threshold_max)
    report.pck = float(np.mean(pcks)) if pcks else None
    for key, value in _mean_errors(rows).items():
        setattr(report, key, value)
    report.add_per_iteration = [float(np.median(per_iteration[k])) for k in sorted(per_iteration)]
    report.total_loss = float(np.mean(losses)) if losses else None
    if top_fraction is not None:
        if not 0 < top_fraction <= 1:
            raise EmptyInputError('top fraction must be within (0, 1]')
        count = max(1, int(math.ceil(top_fraction * len(rows))))
        best = sorted(rows, key=lambda row: row['joint_deg'])[:count]
        report.top_fraction = dict(fraction=top_fraction, scenes=count, **_mean_errors(best))
    return report

