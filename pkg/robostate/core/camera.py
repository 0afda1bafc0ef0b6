# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""Pinhole projection, crop selection around the robot and virtual crop cameras."""

from dataclasses import dataclass

import numpy as np

from .exceptions import AspectMismatchError, DegenerateDetectionError, EmptyProjectionError, ParseError

CROP_RATIO = 4.0 / 3.0
CROP_ENLARGEMENT = 1.4
MIN_CROP_SIZE = 32.0
ASPECT_TOL = 1e-9


@dataclass(frozen=True)
class Intrinsics:
    f_x: float
    f_y: float
    c_x: float
    c_y: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.f_x > 0 and self.f_y > 0):
            raise ParseError('focal lengths must be positive')
        if not (self.width > 0 and self.height > 0):
            raise ParseError('image size must be positive')

    @property
    def focal(self):
        return (self.f_x, self.f_y)

    @property
    def matrix(self):
        return np.array([[self.f_x, 0.0, self.c_x],
                         [0.0, self.f_y, self.c_y],
                         [0.0, 0.0, 1.0]])

    def to_dict(self):
        return {'f_x': self.f_x, 'f_y': self.f_y, 'c_x': self.c_x, 'c_y': self.c_y,
                'width': self.width, 'height': self.height}

    @classmethod
    def from_dict(cls, data):
        return cls(float(data['f_x']), float(data['f_y']), float(data['c_x']), float(data['c_y']),
                   data['width'], data['height'])


@dataclass(frozen=True)
class BoundingBox:
    """ Axis-aligned 2D box given by its center and size in pixels. """
    center: tuple
    size: tuple

    @classmethod
    def from_corners(cls, lower, upper):
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        return cls(tuple((lower + upper) / 2.0), tuple(upper - lower))

    @property
    def corners(self):
        center = np.asarray(self.center, dtype=float)
        half = np.asarray(self.size, dtype=float) / 2.0
        return center - half, center + half

    def contains(self, uv, tol=1e-9):
        lower, upper = self.corners
        uv = np.atleast_2d(uv)
        return np.all((uv >= lower - tol) & (uv <= upper + tol), axis=1)

    def to_dict(self):
        return {'center': [float(v) for v in self.center], 'size': [float(v) for v in self.size]}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(float(v) for v in data['center']), tuple(float(v) for v in data['size']))


@dataclass(frozen=True)
class CropBox:
    center: tuple
    width: float
    height: float

    @property
    def left(self):
        return self.center[0] - self.width / 2.0

    @property
    def top(self):
        return self.center[1] - self.height / 2.0

    def as_bbox(self):
        return BoundingBox(tuple(self.center), (self.width, self.height))


@dataclass(frozen=True)
class Projection:
    uv: np.ndarray
    depth: np.ndarray
    valid: np.ndarray


def project(points, camera):
    """ Pinhole projection of camera-frame points.

    Points with z <= 0 are flagged invalid and get NaN pixel coordinates.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    depth = points[:, 2]
    valid = depth > 0
    uv = np.full((len(points), 2), np.nan)
    z = depth[valid]
    uv[valid, 0] = camera.f_x * points[valid, 0] / z + camera.c_x
    uv[valid, 1] = camera.f_y * points[valid, 1] / z + camera.c_y
    return Projection(uv=uv, depth=depth, valid=valid)


def project_point(point, camera):
    point = np.asarray(point, dtype=float).reshape(3)
    if point[2] <= 0:
        raise EmptyProjectionError('point is behind the camera')
    return np.array([camera.f_x * point[0] / point[2] + camera.c_x,
                     camera.f_y * point[1] / point[2] + camera.c_y])


def compute_crop(projected, center, ratio=CROP_RATIO, enlargement=CROP_ENLARGEMENT, min_size=MIN_CROP_SIZE):
    """ Crop of aspect `ratio` centered on `center` enclosing the projected points, enlarged.

    :param projected: (N, 2) pixel coordinates; NaN rows are ignored.
    :param center: projection u_O of the robot centroid.
    :returns: CropBox with width == ratio * height.
    """
    projected = np.atleast_2d(np.asarray(projected, dtype=float))
    projected = projected[np.all(np.isfinite(projected), axis=1)]
    if not len(projected):
        raise EmptyProjectionError('no valid projected point to crop around')
    center = np.asarray(center, dtype=float).reshape(2)
    lower = projected.min(axis=0)
    upper = projected.max(axis=0)
    dist_x = max(abs(lower[0] - center[0]), abs(upper[0] - center[0]))
    dist_y = max(abs(lower[1] - center[1]), abs(upper[1] - center[1]))
    height = max(dist_x / ratio, dist_y) * 2.0 * enlargement
    height = max(height, min_size)
    return CropBox(center=(float(center[0]), float(center[1])), width=ratio * height, height=height)


def crop_camera(camera, crop, out_width, out_height):
    """ Intrinsics of the virtual camera seeing `crop` resampled to out_width x out_height. """
    if abs(out_width / out_height - crop.width / crop.height) > ASPECT_TOL * max(1.0, crop.width / crop.height):
        raise AspectMismatchError('output {}x{} does not match crop aspect {:.6f}'.format(
            out_width, out_height, crop.width / crop.height))
    scale_x = out_width / crop.width
    scale_y = out_height / crop.height
    return Intrinsics(f_x=camera.f_x * scale_x,
                      f_y=camera.f_y * scale_y,
                      c_x=(camera.c_x - crop.left) * scale_x,
                      c_y=(camera.c_y - crop.top) * scale_y,
                      width=int(out_width), height=int(out_height))


def to_crop_pixels(uv, crop, out_width, out_height):
    """ Remap full-image pixel coordinates into the resampled crop. """
    uv = np.asarray(uv, dtype=float)
    return np.stack([(uv[..., 0] - crop.left) * out_width / crop.width,
                     (uv[..., 1] - crop.top) * out_height / crop.height], axis=-1)


def full_image_crop(camera):
    return CropBox(center=(camera.width / 2.0, camera.height / 2.0), width=float(camera.width),
                   height=float(camera.height))


def tight_bbox(uv):
    uv = np.atleast_2d(np.asarray(uv, dtype=float))
    uv = uv[np.all(np.isfinite(uv), axis=1)]
    if not len(uv):
        raise EmptyProjectionError('no valid projected point')
    return BoundingBox.from_corners(uv.min(axis=0), uv.max(axis=0))


def check_detection(detection):
    if not all(s > 0 for s in detection.size):
        raise DegenerateDetectionError('detection has non-positive size {}'.format(detection.size))
