# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""The iterative render & compare loop.

A state is (anchor part, camera-to-anchor pose, joint angles). Each iteration
picks an anchor, rewrites the state for it, picks a reference point O, renders
the state inside a crop around the robot and asks a refiner for a pose update
(about O) and a joint update.
"""

from dataclasses import dataclass, field, replace

import numpy as np
from knack.log import get_logger

from .camera import check_detection, compute_crop, crop_camera, project, project_point
from .exceptions import DegenerateParamError, EmptyProjectionError, ParseError, RefinementError, RobotStateError
from .geometry import RigidTransform, apply_pose_update
from .kinematics import forward_kinematics, largest_parts, midrange_config, relative_part_transform, robot_centroid
from .renderer import DEFAULT_RESOLUTION, SPLAT_RADIUS, render

logger = get_logger(__name__)

Z_GUESS = 1.0
DEFAULT_ITERATIONS = 10
DEFAULT_LARGEST = 5


@dataclass(frozen=True, eq=False)
class RobotState:
    anchor: int
    pose: RigidTransform
    q: np.ndarray

    def __post_init__(self):
        if not isinstance(self.pose, RigidTransform) or not self.pose.is_valid():
            raise DegenerateParamError('state pose must be a rigid transform, got {!r}'.format(self.pose))
        q = np.array(self.q, dtype=float)
        q.setflags(write=False)
        object.__setattr__(self, 'q', q)

    def to_dict(self):
        return {'anchor': int(self.anchor), 'pose': self.pose.as_matrix().tolist(), 'q': self.q.tolist()}

    @classmethod
    def from_dict(cls, data):
        return cls(int(data['anchor']), RigidTransform.from_matrix(data['pose']), data['q'])


class AnchorStrategy:
    """ fixed:ID | largest:N | all """

    FIXED = 'fixed'
    LARGEST = 'largest'
    ALL = 'all'

    def __init__(self, kind=LARGEST, value=DEFAULT_LARGEST):
        if kind not in (self.FIXED, self.LARGEST, self.ALL):
            raise ParseError('unknown anchor strategy `{}`'.format(kind))
        if kind == self.LARGEST and value < 1:
            raise ParseError('largest:N needs N >= 1')
        self.kind = kind
        self.value = value

    def __repr__(self):
        return str(self)

    def __str__(self):
        return self.kind if self.kind == self.ALL else '{}:{}'.format(self.kind, self.value)

    def __eq__(self, other):
        return isinstance(other, AnchorStrategy) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))

    @classmethod
    def parse(cls, text):
        return cls(*_parse_strategy(text, (cls.FIXED, cls.LARGEST), (cls.ALL,)))


class ReferenceStrategy:
    """ centroid | anchor | part:ID | largest:N """

    CENTROID = 'centroid'
    ANCHOR = 'anchor'
    PART = 'part'
    LARGEST = 'largest'

    def __init__(self, kind=CENTROID, value=None):
        if kind not in (self.CENTROID, self.ANCHOR, self.PART, self.LARGEST):
            raise ParseError('unknown reference strategy `{}`'.format(kind))
        self.kind = kind
        self.value = value

    def __repr__(self):
        return str(self)

    def __str__(self):
        return self.kind if self.value is None else '{}:{}'.format(self.kind, self.value)

    def __eq__(self, other):
        return isinstance(other, ReferenceStrategy) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))

    @classmethod
    def parse(cls, text):
        return cls(*_parse_strategy(text, (cls.PART, cls.LARGEST), (cls.CENTROID, cls.ANCHOR)))


def _parse_strategy(text, valued, bare):
    kind, _, value = str(text).partition(':')
    if kind in bare and not value:
        return kind, None
    if kind in valued and value:
        try:
            return kind, int(value)
        except ValueError:
            pass
    raise ParseError('invalid strategy `{}`; expected one of {}'.format(
        text, ', '.join(list(bare) + ['{}:N'.format(k) for k in valued])))


@dataclass(frozen=True)
class EstimatorConfig:
    iterations: int = DEFAULT_ITERATIONS
    anchor_strategy: AnchorStrategy = field(default_factory=AnchorStrategy)
    reference_strategy: ReferenceStrategy = field(default_factory=ReferenceStrategy)
    known_joints: bool = False
    rng_seed: int = 0
    crop_resolution: tuple = DEFAULT_RESOLUTION
    splat_radius: int = SPLAT_RADIUS
    z_guess: float = Z_GUESS
    initial_rotation: tuple = None

    def __post_init__(self):
        if self.iterations < 1:
            raise ParseError('iterations must be >= 1')

    def to_dict(self):
        return {
            'iterations': self.iterations,
            'anchor_strategy': str(self.anchor_strategy),
            'reference_strategy': str(self.reference_strategy),
            'known_joints': self.known_joints,
            'rng_seed': self.rng_seed,
            'crop_resolution': list(self.crop_resolution),
        }


@dataclass(frozen=True, eq=False)
class Observation:
    """ What the estimator sees of one scene.

    `part_points` are camera-frame 3D points in model-point order, `part_uv` their
    projections, `part_visible` the visibility flags. `gt_state` is optional and
    only consumed by the oracle refiner and by loss bookkeeping.
    """
    camera: object
    detection: object
    part_points: tuple = None
    part_uv: tuple = None
    part_visible: tuple = None
    gt_state: RobotState = None
    joint_measurement: np.ndarray = None
    scene_id: int = 0

    def for_anchor(self, anchor, model):
        """ Same observation with the ground truth expressed for `anchor`. """
        if self.gt_state is None or self.gt_state.anchor == anchor:
            return self
        return replace(self, gt_state=reanchor(self.gt_state, anchor, model))


@dataclass(frozen=True, eq=False)
class TraceStep:
    iteration: int
    input_state: RobotState
    state: RobotState
    anchor: int
    reference: np.ndarray
    update: object
    dq: np.ndarray
    crop: object = None
    losses: object = None

    def to_record(self):
        record = {
            'iteration': self.iteration,
            'anchor': int(self.anchor),
            'reference': [float(v) for v in self.reference],
            'update': self.update.to_dict(),
            'dq': [float(v) for v in self.dq],
            'state': self.state.to_dict(),
        }
        if self.losses is not None:
            record['losses'] = self.losses.to_dict()
        return record


@dataclass(eq=False)
class RefinementTrace:
    initial_state: RobotState
    steps: list = field(default_factory=list)
    scene_id: int = 0

    @property
    def states(self):
        return [self.initial_state] + [step.state for step in self.steps]

    @property
    def final_state(self):
        return self.states[-1]

    def to_records(self):
        records = [{'scene_id': self.scene_id, 'iteration': 0, 'state': self.initial_state.to_dict()}]
        for step in self.steps:
            record = step.to_record()
            record['scene_id'] = self.scene_id
            record['iteration'] = step.iteration + 1
            records.append(record)
        return records

    @classmethod
    def from_records(cls, records):
        """ Rebuild one trace from its records (iteration 0 first). """
        from .geometry import PoseUpdate
        from .metrics import LossBreakdown

        records = sorted(records, key=lambda r: r['iteration'])
        if not records or records[0]['iteration'] != 0:
            raise ParseError('trace has no initial state record')
        trace = cls(initial_state=RobotState.from_dict(records[0]['state']), scene_id=int(records[0]['scene_id']))
        previous = trace.initial_state
        for record in records[1:]:
            state = RobotState.from_dict(record['state'])
            losses = record.get('losses')
            trace.steps.append(TraceStep(
                iteration=record['iteration'] - 1, input_state=previous, state=state, anchor=record['anchor'],
                reference=np.array(record['reference']), update=PoseUpdate.from_dict(record['update']),
                dq=np.array(record['dq']), losses=None if losses is None else LossBreakdown.from_dict(losses)))
            previous = state
        return trace


class Refiner:
    """ Predicts a pose update and a joint update from a rendering and an observation.

    Implementations that are not safe to call from several workers at once set
    `exclusive = True`; callers then refine scenes one after the other.
    """

    exclusive = False
    name = 'refiner'

    def predict(self, render_output, observation, state, focal, reference, known_joints, rng=None):
        raise NotImplementedError()


def part_poses_in_camera(model, state):
    """ Camera-to-part transform of every part for a state. """
    poses = forward_kinematics(model, state.q)
    camera_root = state.pose @ poses[state.anchor].inverse()
    return {part_id: camera_root @ pose for part_id, pose in poses.items()}


def reanchor(state, new_anchor, model):
    """ Same physical robot, expressed with another anchor part. """
    model.check_part(new_anchor)
    if new_anchor == state.anchor:
        return state
    pose = state.pose @ relative_part_transform(model, state.q, state.anchor, new_anchor)
    return RobotState(new_anchor, pose, state.q)


def select_anchor(strategy, model, rng):
    if strategy.kind == AnchorStrategy.FIXED:
        model.check_part(strategy.value)
        return strategy.value
    if strategy.kind == AnchorStrategy.LARGEST:
        candidates = largest_parts(model, min(strategy.value, model.num_parts))
    else:
        candidates = list(range(model.num_parts))
    return int(candidates[rng.integers(len(candidates))])


def reference_point(strategy, model, state, rng=None):
    """ 3D reference point O in the camera frame. """
    if strategy.kind == ReferenceStrategy.CENTROID:
        return robot_centroid(model, state)
    if strategy.kind == ReferenceStrategy.ANCHOR:
        return np.array(state.pose.translation)
    if strategy.kind == ReferenceStrategy.PART:
        part_id = strategy.value
    else:
        candidates = largest_parts(model, min(strategy.value, model.num_parts))
        part_id = int(candidates[rng.integers(len(candidates))])
    model.check_part(part_id)
    return np.array(part_poses_in_camera(model, state)[part_id].translation)


def _projected_robot(model, state, camera):
    poses = part_poses_in_camera(model, state)
    points = np.concatenate([poses[p.id].apply(p.points) for p in model.parts])
    return project(points, camera)


def initialize_state(model, detection, camera, z_guess=Z_GUESS, rotation=None, q=None):
    """ First state from a 2D detection.

    Joints at mid-range (or `q` when measured), base axes aligned with the
    camera, centroid on the detection center at depth `z_guess`, then one depth
    rescale so the projected robot matches the detection size.
    """
    check_detection(detection)
    q = midrange_config(model) if q is None else model.check_config(q)
    rotation = np.eye(3) if rotation is None else np.asarray(rotation, dtype=float)
    base = RobotState(0, RigidTransform(rotation), q)
    centroid_in_base = robot_centroid(model, base)
    center = np.asarray(detection.center, dtype=float)

    def _placed(depth):
        target = np.array([(center[0] - camera.c_x) * depth / camera.f_x,
                           (center[1] - camera.c_y) * depth / camera.f_y,
                           depth])
        return RobotState(0, RigidTransform(rotation, target - centroid_in_base), q)

    guess = _placed(z_guess)
    projection = _projected_robot(model, guess, camera)
    uv = projection.uv[projection.valid]
    if not len(uv):
        raise EmptyProjectionError('initial guess projects no robot point in front of the camera')
    extent = uv.max(axis=0) - uv.min(axis=0)
    size = np.asarray(detection.size, dtype=float)
    depth = z_guess * 0.5 * (extent[0] / size[0] + extent[1] / size[1])
    if not depth > 0:
        raise EmptyProjectionError('degenerate projected extent {}'.format(extent.tolist()))
    logger.debug('Initial depth %.4f m (guess %.2f m, extent %s px)', depth, z_guess, extent.round(2).tolist())
    return _placed(depth)


def _crop_for(model, state, camera):
    projection = _projected_robot(model, state, camera)
    center = project_point(robot_centroid(model, state), camera)
    return compute_crop(projection.uv[projection.valid], center)


def refine(observation, model, refiner, config, initial_state=None):
    """ Run `config.iterations` render & compare iterations.

    :returns: RefinementTrace with iterations + 1 states.
    :raises RefinementError: carrying the partial trace when an iteration fails.
    """
    from .metrics import step_losses

    rng = np.random.default_rng(config.rng_seed ^ observation.scene_id)
    measured = None
    if config.known_joints:
        measured = observation.joint_measurement
        if measured is None and observation.gt_state is not None:
            measured = observation.gt_state.q
        if measured is None:
            raise RobotStateError('known-joints mode needs a joint measurement')
    if initial_state is None:
        initial_state = initialize_state(model, observation.detection, observation.camera, config.z_guess,
                                         config.initial_rotation, measured)
    elif measured is not None:
        initial_state = RobotState(initial_state.anchor, initial_state.pose, measured)

    trace = RefinementTrace(initial_state=initial_state, scene_id=observation.scene_id)
    state = initial_state
    width, height = config.crop_resolution
    for k in range(config.iterations):
        try:
            anchor = select_anchor(config.anchor_strategy, model, rng)
            state = reanchor(state, anchor, model)
            reference = reference_point(config.reference_strategy, model, state, rng)
            crop = _crop_for(model, state, observation.camera)
            focal = crop_camera(observation.camera, crop, width, height).focal
            rendering = render(model, state, observation.camera, crop, config.crop_resolution, config.splat_radius)
            local = observation.for_anchor(anchor, model)
            update, dq = refiner.predict(rendering, local, state, focal, reference, config.known_joints, rng=rng)
            pose = apply_pose_update(state.pose, update, reference, focal)
            if config.known_joints:
                dq = np.zeros(model.dof)
                q = state.q
            else:
                dq = np.asarray(dq, dtype=float)
                q = model.clamp(state.q + dq)
                if np.any(q != state.q + dq):
                    logger.debug('Scene %s iteration %d: joint update clamped at a limit', observation.scene_id, k)
            losses = step_losses(model, state, local.gt_state, update, dq, reference, focal)
            new_state = RobotState(anchor, pose, q)
        except RobotStateError as ex:
            logger.warning('Scene %s: iteration %d failed: %s', observation.scene_id, k, ex)
            raise RefinementError(k, ex, trace) from ex
        trace.steps.append(TraceStep(iteration=k, input_state=state, state=new_state, anchor=anchor,
                                     reference=reference, update=update, dq=dq, crop=crop, losses=losses))
        logger.debug('Scene %s iteration %d: anchor %d, O=%s, v=(%.3f, %.3f, %.5f)', observation.scene_id, k,
                     anchor, np.round(reference, 4).tolist(), update.v_x, update.v_y, update.v_z)
        state = new_state
    return trace
