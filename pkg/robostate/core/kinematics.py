# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""Robot kinematic tree: parts, revolute joints and forward kinematics."""

import json
import os
from dataclasses import dataclass, field

import numpy as np
from knack.log import get_logger
from scipy.spatial.transform import Rotation

from .exceptions import (
    CycleDetectedError, DanglingReferenceError, DimensionMismatchError, InvalidPartError, ParseError)
from .geometry import RigidTransform, is_rotation, orthonormalize

logger = get_logger(__name__)

# bounding-box edges shorter than this are padded when deriving a volume
MIN_EXTENT_M = 1e-3
AXIS_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class PartSpec:
    id: int
    name: str
    points: np.ndarray
    volume: float

    def __post_init__(self):
        self.points.setflags(write=False)


@dataclass(frozen=True, eq=False)
class JointSpec:
    name: str
    parent: int
    child: int
    origin: RigidTransform
    axis: np.ndarray
    lower: float
    upper: float

    def __post_init__(self):
        self.axis.setflags(write=False)

    @property
    def range(self):
        return self.upper - self.lower

    def motion(self, angle):
        """ Rotation of the child about the joint axis by `angle` radians. """
        return RigidTransform(Rotation.from_rotvec(self.axis * angle).as_matrix())


@dataclass(frozen=True, eq=False)
class RobotModel:
    name: str
    parts: tuple
    joints: tuple
    _parent_joint: dict = field(repr=False, default=None)
    _order: tuple = field(repr=False, default=None)

    def __post_init__(self):
        parent_joint, order = _validate_tree(self.parts, self.joints)
        object.__setattr__(self, '_parent_joint', parent_joint)
        object.__setattr__(self, '_order', order)

    @property
    def num_parts(self):
        return len(self.parts)

    @property
    def dof(self):
        return len(self.joints)

    @property
    def lower(self):
        return np.array([j.lower for j in self.joints])

    @property
    def upper(self):
        return np.array([j.upper for j in self.joints])

    def parent_joint(self, part_id):
        """ Index of the joint whose child is `part_id` (None for the root). """
        self.check_part(part_id)
        return self._parent_joint.get(part_id)

    def children(self, part_id):
        return [j.child for j in self.joints if j.parent == part_id]

    def check_part(self, part_id):
        if not isinstance(part_id, (int, np.integer)) or not 0 <= part_id < len(self.parts):
            raise InvalidPartError('invalid part id {} for robot with {} parts'.format(part_id, len(self.parts)))

    def check_config(self, q):
        q = np.asarray(q, dtype=float)
        if q.shape != (self.dof,):
            raise DimensionMismatchError('expected {} joint values, got shape {}'.format(self.dof, q.shape))
        return q

    def clamp(self, q):
        return np.clip(self.check_config(q), self.lower, self.upper)

    def part_by_name(self, name):
        for part in self.parts:
            if part.name == name:
                return part
        raise InvalidPartError('unknown part `{}`'.format(name))

    def all_points(self):
        return np.concatenate([p.points for p in self.parts])


def _validate_tree(parts, joints):
    num = len(parts)
    for index, part in enumerate(parts):
        if part.id != index:
            raise ParseError('part ids must be contiguous from 0', field='parts[{}]'.format(index))
    parent_joint = {}
    for index, joint in enumerate(joints):
        for end in (joint.parent, joint.child):
            if not 0 <= end < num:
                raise DanglingReferenceError('joint `{}` references missing part {}'.format(joint.name, end))
        if joint.child == joint.parent:
            raise CycleDetectedError('joint `{}` connects part {} to itself'.format(joint.name, joint.child))
        if joint.child == 0:
            raise CycleDetectedError('joint `{}` makes the root part a child'.format(joint.name))
        if joint.child in parent_joint:
            raise CycleDetectedError('part {} has more than one parent joint'.format(joint.child))
        parent_joint[joint.child] = index

    # breadth-first from the root; unreachable parts mean a cycle (each has one parent)
    order = []
    frontier = [0]
    seen = {0}
    while frontier:
        current = frontier.pop(0)
        for index, joint in enumerate(joints):
            if joint.parent == current and joint.child not in seen:
                seen.add(joint.child)
                order.append(index)
                frontier.append(joint.child)
    missing = sorted(set(range(num)) - seen)
    if missing:
        raise CycleDetectedError('parts {} are not reachable from the root part'.format(missing))
    return parent_joint, tuple(order)


def _bbox_volume_cm3(points):
    extent = np.maximum(points.max(axis=0) - points.min(axis=0), MIN_EXTENT_M)
    return float(np.prod(extent) * 1e6)


def _parse_part(index, data):
    where = 'parts[{}]'.format(index)
    if not isinstance(data, dict):
        raise ParseError('part entry must be an object', field=where)
    try:
        points = np.array(data['points'], dtype=float)
    except KeyError:
        raise ParseError('missing points', field=where + '.points')
    except (TypeError, ValueError):
        raise ParseError('points must be an N x 3 numeric array', field=where + '.points')
    if points.ndim != 2 or points.shape[1] != 3 or not len(points):
        raise ParseError('points must be a non-empty N x 3 array', field=where + '.points')
    if not np.all(np.isfinite(points)):
        raise ParseError('points must be finite', field=where + '.points')
    volume = data.get('volume_cm3')
    if volume is None:
        volume = _bbox_volume_cm3(points)
    elif not isinstance(volume, (int, float)) or volume <= 0:
        raise ParseError('volume_cm3 must be positive', field=where + '.volume_cm3')
    return PartSpec(id=index, name=str(data.get('name', 'part{}'.format(index))), points=points, volume=float(volume))


def _resolve_part(ref, names, field_name):
    if isinstance(ref, bool):
        raise ParseError('part reference must be a name or an id', field=field_name)
    if isinstance(ref, int):
        return ref
    if isinstance(ref, str):
        if ref not in names:
            raise DanglingReferenceError('{} references unknown part `{}`'.format(field_name, ref))
        return names[ref]
    raise ParseError('part reference must be a name or an id', field=field_name)


def _parse_joint(index, data, names):
    where = 'joints[{}]'.format(index)
    if not isinstance(data, dict):
        raise ParseError('joint entry must be an object', field=where)
    for key in ('parent', 'child', 'axis', 'limits'):
        if key not in data:
            raise ParseError('missing {}'.format(key), field='{}.{}'.format(where, key))
    parent = _resolve_part(data['parent'], names, where + '.parent')
    child = _resolve_part(data['child'], names, where + '.child')
    try:
        origin = np.array(data.get('origin', np.eye(4).tolist()), dtype=float).reshape(4, 4)
    except (TypeError, ValueError):
        raise ParseError('origin must be a 4 x 4 row-major matrix', field=where + '.origin')
    if not is_rotation(origin[:3, :3], tol=AXIS_TOL):
        raise ParseError('origin rotation block is not a rotation', field=where + '.origin')
    try:
        axis = np.array(data['axis'], dtype=float).reshape(3)
        lower, upper = (float(v) for v in data['limits'])
    except (TypeError, ValueError):
        raise ParseError('axis must be a 3-vector and limits a [lower, upper] pair', field=where)
    norm = np.linalg.norm(axis)
    if abs(norm - 1.0) > AXIS_TOL:
        raise ParseError('axis must have unit norm (got {:.6g})'.format(norm), field=where + '.axis')
    if not lower < upper:
        raise ParseError('lower limit must be below upper limit', field=where + '.limits')
    return JointSpec(name=str(data.get('name', 'joint{}'.format(index + 1))),
                     parent=parent, child=child,
                     origin=RigidTransform(orthonormalize(origin[:3, :3]), origin[:3, 3]),
                     axis=axis / norm, lower=lower, upper=upper)


def robot_from_dict(document, name='robot'):
    if not isinstance(document, dict):
        raise ParseError('robot description must be a JSON object')
    parts_data = document.get('parts')
    if not isinstance(parts_data, list) or not parts_data:
        raise ParseError('`parts` must be a non-empty list', field='parts')
    joints_data = document.get('joints', [])
    if not isinstance(joints_data, list):
        raise ParseError('`joints` must be a list', field='joints')
    parts = tuple(_parse_part(i, p) for i, p in enumerate(parts_data))
    names = {p.name: p.id for p in parts}
    joints = tuple(_parse_joint(i, j, names) for i, j in enumerate(joints_data))
    model = RobotModel(name=str(document.get('name', name)), parts=parts, joints=joints)
    logger.debug("Loaded robot '%s': %d parts, %d joints", model.name, model.num_parts, model.dof)
    return model


def load_robot(source):
    """ Load and validate a robot description.

    :param source: path to a JSON description, or an already decoded dict.
    :returns: RobotModel.
    """
    if isinstance(source, dict):
        return robot_from_dict(source)
    with open(source, 'r', encoding='utf-8') as handle:
        text = handle.read()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ParseError('malformed JSON: {}'.format(ex.msg), line=ex.lineno)
    return robot_from_dict(document, name=os.path.splitext(os.path.basename(source))[0])


def forward_kinematics(model, q):
    """ Root-to-part transforms for every part. Root is the identity. """
    q = model.check_config(q)
    poses = {0: RigidTransform.identity()}
    for index in model._order:  # pylint: disable=protected-access
        joint = model.joints[index]
        poses[joint.child] = poses[joint.parent] @ joint.origin @ joint.motion(q[index])
    return poses


def relative_part_transform(model, q, a, b):
    """ Transform mapping part-`b` coordinates into part-`a` coordinates. """
    model.check_part(a)
    model.check_part(b)
    if a == b:
        model.check_config(q)
        return RigidTransform.identity()
    poses = forward_kinematics(model, q)
    return poses[a].inverse() @ poses[b]


def midrange_config(model):
    return (model.lower + model.upper) / 2.0


def largest_parts(model, n, volume_fn=None):
    """ `n` part ids by descending volume, ties by ascending id.

    :param volume_fn: optional callable(PartSpec) -> float replacing the stored volume.
    """
    if not 1 <= n <= model.num_parts:
        raise InvalidPartError('n must be within [1, {}], got {}'.format(model.num_parts, n))
    volume_fn = volume_fn or (lambda part: part.volume)
    ranked = sorted(model.parts, key=lambda part: (-volume_fn(part), part.id))
    return [part.id for part in ranked[:n]]


def robot_centroid(model, state):
    """ Mean of every part point in the camera frame. """
    from .estimator import part_poses_in_camera
    poses = part_poses_in_camera(model, state)
    points = np.concatenate([poses[p.id].apply(p.points) for p in model.parts])
    return points.mean(axis=0)


def joint_keypoints(model, state):
    """ Camera-frame keypoints at every joint location, plus the base origin. """
    from .estimator import part_poses_in_camera
    poses = part_poses_in_camera(model, state)
    return np.array([poses[p.id].translation for p in model.parts])


def sample_joint_config(model, rng):
    """ Joint angles drawn independently and uniformly within their limits. """
    return rng.uniform(model.lower, model.upper)
