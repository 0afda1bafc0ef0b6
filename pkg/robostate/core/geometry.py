# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""Rigid-transform algebra and the reference-point parametrized pose update.

The pose update moves the anchor of a robot with four numbers predicted by a
refiner: ``v_x``/``v_y`` (pixel displacement of the reference point ``O`` in the
virtual cropped camera), ``v_z`` (ratio between new and old depth of ``O``) and
``delta_R`` (a rotation applied about ``O``). For a point ``a`` on the anchor::

    t_a' = delta_R (t_a - t_O) + t_O + delta_t
    R'   = delta_R R

with ``delta_t`` derived from the pinhole relation of ``O``::

    delta_t_x = v_x v_z z_O / f_x + x_O (v_z - 1)
    delta_t_y = v_y v_z z_O / f_y + y_O (v_z - 1)
    delta_t_z = z_O (v_z - 1)

Inverting those three relations for a known target pose gives the exact update
(``solve_exact_update``).
"""

import numpy as np

from .exceptions import DegenerateParamError, NoValidUpdateError, ReferenceBehindCameraError

ORTHONORMAL_TOL = 1e-9
REORTHONORMALIZE_AFTER = 100
PARAM_EPS = 1e-8


def _frozen(array, shape):
    array = np.array(array, dtype=float)
    if array.shape != shape:
        array = array.reshape(shape)
    array.setflags(write=False)
    return array


def orthonormalize(rotation):
    """ Gram-Schmidt on the first two columns of a 3x3 matrix. """
    rotation = np.asarray(rotation, dtype=float)
    return rotation_from_param(rotation[:, 0], rotation[:, 1])


def is_rotation(rotation, tol=ORTHONORMAL_TOL):
    rotation = np.asarray(rotation, dtype=float)
    if rotation.shape != (3, 3) or not np.all(np.isfinite(rotation)):
        return False
    return (np.abs(rotation.T @ rotation - np.eye(3)).max() <= tol and
            abs(np.linalg.det(rotation) - 1.0) <= tol)


class RigidTransform:
    """ Immutable SE(3) element mapping points of a child frame into a parent frame. """

    __slots__ = ('rotation', 'translation', '_chain')

    def __init__(self, rotation=None, translation=None, _chain=0):
        rotation = np.eye(3) if rotation is None else rotation
        translation = np.zeros(3) if translation is None else translation
        object.__setattr__(self, 'rotation', _frozen(rotation, (3, 3)))
        object.__setattr__(self, 'translation', _frozen(translation, (3,)))
        object.__setattr__(self, '_chain', _chain)

    def __setattr__(self, name, value):
        raise AttributeError('RigidTransform is immutable')

    def __repr__(self):
        return 'RigidTransform(rotation={}, translation={})'.format(
            self.rotation.tolist(), self.translation.tolist())

    def __matmul__(self, other):
        return compose(self, other)

    def __reduce__(self):
        return (RigidTransform, (self.rotation, self.translation, self._chain))

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def from_matrix(cls, matrix):
        matrix = np.asarray(matrix, dtype=float).reshape(4, 4)
        return cls(matrix[:3, :3], matrix[:3, 3])

    def as_matrix(self):
        matrix = np.eye(4)
        matrix[:3, :3] = self.rotation
        matrix[:3, 3] = self.translation
        return matrix

    def inverse(self):
        return invert(self)

    def apply(self, points):
        return transform_points(self, points)

    def is_valid(self, tol=ORTHONORMAL_TOL):
        return is_rotation(self.rotation, tol) and bool(np.all(np.isfinite(self.translation)))


def compose(first, second):
    """ first ∘ second: apply `second`, then `first`. """
    rotation = first.rotation @ second.rotation
    translation = first.rotation @ second.translation + first.translation
    chain = max(first._chain, second._chain) + 1  # pylint: disable=protected-access
    if chain > REORTHONORMALIZE_AFTER:
        rotation = orthonormalize(rotation)
        chain = 0
    return RigidTransform(rotation, translation, _chain=chain)


def invert(transform):
    rotation = transform.rotation.T
    return RigidTransform(rotation, -rotation @ transform.translation,
                          _chain=transform._chain)  # pylint: disable=protected-access


def transform_points(transform, points):
    points = np.asarray(points, dtype=float)
    return points @ transform.rotation.T + transform.translation


def rotation_from_param(first, second):
    """ Rotation matrix from two 3-vectors (the 6D rotation parametrization).

    :param first: unnormalized first column.
    :param second: vector spanning the first two columns with `first`.
    :returns: 3x3 rotation matrix.
    """
    first = np.asarray(first, dtype=float).reshape(3)
    second = np.asarray(second, dtype=float).reshape(3)
    norm = np.linalg.norm(first)
    if norm < PARAM_EPS:
        raise DegenerateParamError('first rotation vector is near zero (norm {:.3g})'.format(norm))
    c1 = first / norm
    residual = second - np.dot(second, c1) * c1
    residual_norm = np.linalg.norm(residual)
    if residual_norm < PARAM_EPS * max(1.0, np.linalg.norm(second)):
        raise DegenerateParamError('rotation vectors are parallel or second vector is near zero')
    c2 = residual / residual_norm
    c3 = np.cross(c1, c2)
    return np.stack([c1, c2, c3], axis=1)


class PoseUpdate:
    """ (v_x, v_y, v_z, delta_R): pixels, pixels, depth ratio, rotation about O. """

    __slots__ = ('v_x', 'v_y', 'v_z', 'delta_R')

    def __init__(self, v_x=0.0, v_y=0.0, v_z=1.0, delta_R=None):
        if not v_z > 0:
            raise NoValidUpdateError('depth ratio v_z must be positive, got {}'.format(v_z))
        object.__setattr__(self, 'v_x', float(v_x))
        object.__setattr__(self, 'v_y', float(v_y))
        object.__setattr__(self, 'v_z', float(v_z))
        object.__setattr__(self, 'delta_R', _frozen(np.eye(3) if delta_R is None else delta_R, (3, 3)))

    def __setattr__(self, name, value):
        raise AttributeError('PoseUpdate is immutable')

    def __repr__(self):
        return 'PoseUpdate(v_x={}, v_y={}, v_z={}, delta_R={})'.format(
            self.v_x, self.v_y, self.v_z, self.delta_R.tolist())

    def __reduce__(self):
        return (PoseUpdate, (self.v_x, self.v_y, self.v_z, self.delta_R))

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def from_param(cls, v_x, v_y, v_z, rotation_param):
        """ Build an update from the 6-value rotation parametrization a refiner would predict. """
        rotation_param = np.asarray(rotation_param, dtype=float).reshape(6)
        return cls(v_x, v_y, v_z, rotation_from_param(rotation_param[:3], rotation_param[3:]))

    def replace(self, **kwargs):
        values = {name: getattr(self, name) for name in self.__slots__}
        values.update(kwargs)
        return PoseUpdate(**values)

    def to_dict(self):
        return {'v_x': self.v_x, 'v_y': self.v_y, 'v_z': self.v_z, 'delta_R': self.delta_R.tolist()}

    @classmethod
    def from_dict(cls, data):
        return cls(data['v_x'], data['v_y'], data['v_z'], data['delta_R'])


def translation_delta(update, reference, focal):
    """ delta_t of the reference point for an update, in camera coordinates (meters). """
    x, y, z = np.asarray(reference, dtype=float).reshape(3)
    if z <= 0:
        raise ReferenceBehindCameraError('reference point has depth {:.6g} <= 0'.format(z))
    f_x, f_y = focal
    v_z = update.v_z
    return np.array([
        update.v_x * v_z * z / f_x + x * (v_z - 1.0),
        update.v_y * v_z * z / f_y + y * (v_z - 1.0),
        z * (v_z - 1.0),
    ])


def apply_pose_update(transform, update, reference, focal):
    """ Updated camera-to-anchor pose.

    :param transform: current camera-to-anchor RigidTransform.
    :param update: PoseUpdate.
    :param reference: 3D reference point O in the camera frame.
    :param focal: (f_x, f_y) of the virtual cropped camera.
    :returns: RigidTransform.
    """
    reference = np.asarray(reference, dtype=float).reshape(3)
    delta_t = translation_delta(update, reference, focal)
    delta_r = update.delta_R
    rotation = delta_r @ transform.rotation
    translation = delta_r @ (transform.translation - reference) + reference + delta_t
    chain = transform._chain + 1  # pylint: disable=protected-access
    if chain > REORTHONORMALIZE_AFTER:
        rotation = orthonormalize(rotation)
        chain = 0
    return RigidTransform(rotation, translation, _chain=chain)


def solve_exact_update(current, target, reference, focal):
    """ The PoseUpdate for which apply_pose_update(current, ., reference, focal) == target.

    delta_R is R_target R_current^T whatever the reference; the translation part
    follows from where the target motion carries O.
    """
    reference = np.asarray(reference, dtype=float).reshape(3)
    x, y, z = reference
    if z <= 0:
        raise ReferenceBehindCameraError('reference point has depth {:.6g} <= 0'.format(z))
    delta_r = target.rotation @ current.rotation.T
    moved = delta_r @ (reference - current.translation) + target.translation
    x_new, y_new, z_new = moved
    if z_new <= 0:
        raise NoValidUpdateError('target pose moves the reference point to depth {:.6g} <= 0'.format(z_new))
    f_x, f_y = focal
    return PoseUpdate(v_x=f_x * (x_new / z_new - x / z),
                      v_y=f_y * (y_new / z_new - y / z),
                      v_z=z_new / z,
                      delta_R=delta_r)


def reference_motion(update, reference, focal):
    """ Where the reference point lands after the update (O + delta_t). """
    reference = np.asarray(reference, dtype=float).reshape(3)
    return reference + translation_delta(update, reference, focal)


def update_from_motion(reference, moved, delta_r, focal):
    """ PoseUpdate taking `reference` to `moved` with rotation `delta_r`. """
    x, y, z = np.asarray(reference, dtype=float).reshape(3)
    x_new, y_new, z_new = np.asarray(moved, dtype=float).reshape(3)
    if z <= 0:
        raise ReferenceBehindCameraError('reference point has depth {:.6g} <= 0'.format(z))
    if z_new <= 0:
        raise NoValidUpdateError('update moves the reference point to depth {:.6g} <= 0'.format(z_new))
    f_x, f_y = focal
    return PoseUpdate(f_x * (x_new / z_new - x / z), f_y * (y_new / z_new - y / z), z_new / z, delta_r)
