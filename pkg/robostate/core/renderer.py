# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""Point-splat rendering of a robot state: per-part projections, robot and anchor masks, SVG overlays."""

from dataclasses import dataclass
import xml.etree.ElementTree as ET

import numpy as np
from knack.log import get_logger

from .camera import crop_camera, project

logger = get_logger(__name__)

SPLAT_RADIUS = 2
DEPTH_EPSILON = 1e-3
DEFAULT_RESOLUTION = (320, 240)


@dataclass(frozen=True)
class PartProjection:
    uv: np.ndarray
    depth: np.ndarray
    valid: np.ndarray
    visible: np.ndarray


@dataclass(frozen=True)
class Raster:
    owner: np.ndarray      # (H, W) part id of the nearest splat, -1 where empty
    depth: np.ndarray      # (H, W) depth of the nearest splat, inf where empty
    visible: np.ndarray    # (N,) per input point


@dataclass(frozen=True)
class RenderOutput:
    camera: object
    parts: dict
    robot_mask: np.ndarray
    anchor_mask: np.ndarray
    owner: np.ndarray
    anchor: int

    @property
    def resolution(self):
        return self.robot_mask.shape[1], self.robot_mask.shape[0]

    def visible_points(self, part_id):
        proj = self.parts[part_id]
        return proj.uv[proj.visible]


def _disc_offsets(radius):
    span = np.arange(-radius, radius + 1)
    dx, dy = np.meshgrid(span, span)
    inside = dx ** 2 + dy ** 2 <= radius ** 2
    return np.stack([dx[inside], dy[inside]], axis=1)


def rasterize(uv, depth, labels, width, height, radius=SPLAT_RADIUS, depth_epsilon=DEPTH_EPSILON):
    """ Splat every point as a disc; the nearest splat owns a pixel.

    A point is visible when its center pixel lies in the raster and no splat of
    another label is nearer there by more than `depth_epsilon`.
    """
    uv = np.asarray(uv, dtype=float).reshape(-1, 2)
    depth = np.asarray(depth, dtype=float).reshape(-1)
    labels = np.asarray(labels, dtype=int).reshape(-1)
    owner = np.full((height, width), -1, dtype=int)
    zbuf = np.full((height, width), np.inf)
    valid = (depth > 0) & np.all(np.isfinite(uv), axis=1)
    visible = np.zeros(len(uv), dtype=bool)
    if not valid.any():
        return Raster(owner=owner, depth=zbuf, visible=visible)

    centers = np.floor(uv[valid]).astype(int)
    offsets = _disc_offsets(radius)
    pix = (centers[:, None, :] + offsets[None, :, :]).reshape(-1, 2)
    z = np.repeat(depth[valid], len(offsets))
    lab = np.repeat(labels[valid], len(offsets))
    inside = (pix[:, 0] >= 0) & (pix[:, 0] < width) & (pix[:, 1] >= 0) & (pix[:, 1] < height)
    pix, z, lab = pix[inside], z[inside], lab[inside]
    if len(pix):
        flat = pix[:, 1] * width + pix[:, 0]
        # stable: ties keep input order, so the earlier point wins
        order = np.lexsort((z, flat))
        flat, z, lab = flat[order], z[order], lab[order]
        first = np.ones(len(flat), dtype=bool)
        first[1:] = flat[1:] != flat[:-1]
        owner.reshape(-1)[flat[first]] = lab[first]
        zbuf.reshape(-1)[flat[first]] = z[first]

    indices = np.flatnonzero(valid)
    in_frame = (centers[:, 0] >= 0) & (centers[:, 0] < width) & (centers[:, 1] >= 0) & (centers[:, 1] < height)
    for index, center, ok in zip(indices, centers, in_frame):
        if not ok:
            continue
        nearest = zbuf[center[1], center[0]]
        occluder = owner[center[1], center[0]]
        visible[index] = occluder == labels[index] or nearest >= depth[index] - depth_epsilon
    return Raster(owner=owner, depth=zbuf, visible=visible)


def render(model, state, camera, crop, resolution=DEFAULT_RESOLUTION, radius=SPLAT_RADIUS,
           depth_epsilon=DEPTH_EPSILON):
    """ Render the robot in `state` seen by the virtual camera of `crop`.

    :returns: RenderOutput whose rasters have the crop resolution (width, height).
    """
    from .estimator import part_poses_in_camera

    width, height = resolution
    virtual = crop_camera(camera, crop, width, height)
    poses = part_poses_in_camera(model, state)
    projections = []
    labels = []
    for part in model.parts:
        projections.append(project(poses[part.id].apply(part.points), virtual))
        labels.append(np.full(len(part.points), part.id))
    uv = np.concatenate([p.uv for p in projections])
    depth = np.concatenate([p.depth for p in projections])
    raster = rasterize(uv, depth, np.concatenate(labels), width, height, radius, depth_epsilon)

    parts = {}
    start = 0
    for part, proj in zip(model.parts, projections):
        stop = start + len(part.points)
        parts[part.id] = PartProjection(uv=proj.uv, depth=proj.depth, valid=proj.valid,
                                        visible=raster.visible[start:stop])
        start = stop
    robot_mask = raster.owner >= 0
    anchor_mask = raster.owner == state.anchor
    logger.debug('Rendered %d/%d visible points, %d mask pixels',
                 int(raster.visible.sum()), len(uv), int(robot_mask.sum()))
    return RenderOutput(camera=virtual, parts=parts, robot_mask=robot_mask, anchor_mask=anchor_mask,
                        owner=raster.owner, anchor=state.anchor)


def _iteration_color(index, count):
    # blue (first) to red (last)
    t = 0.0 if count <= 1 else index / (count - 1)
    return '#{:02x}{:02x}{:02x}'.format(int(round(40 + 215 * t)), 60, int(round(255 - 215 * t)))


def kinematic_chains(model):
    """ Decompose the tree into polylines of part ids, one per branch. """
    chains = []
    pending = [[0]]
    while pending:
        chain = pending.pop(0)
        current = chain[-1]
        while True:
            children = model.children(current)
            if not children:
                break
            for extra in children[1:]:
                pending.append([current, extra])
            chain.append(children[0])
            current = children[0]
        chains.append(chain)
    return chains


def _fmt(value):
    return '{:.3f}'.format(value)


def render_overlay_svg(observation, states, model, metadata=None):
    """ SVG overlay: detection outline plus skeleton and point scatter of every state.

    One `<g class="state">` group per state, colored from blue (first) to red (last).
    `metadata` (text) goes into a leading `<metadata>` element.
    """
    from .estimator import part_poses_in_camera

    camera = observation.camera
    svg = ET.Element('svg', {
        'xmlns': 'http://www.w3.org/2000/svg',
        'version': '1.1',
        'width': str(camera.width),
        'height': str(camera.height),
        'viewBox': '0 0 {} {}'.format(camera.width, camera.height),
    })
    if metadata is not None:
        ET.SubElement(svg, 'metadata').text = metadata
    lower, _ = observation.detection.corners
    ET.SubElement(svg, 'rect', {
        'class': 'detection',
        'x': _fmt(lower[0]), 'y': _fmt(lower[1]),
        'width': _fmt(observation.detection.size[0]), 'height': _fmt(observation.detection.size[1]),
        'fill': 'none', 'stroke': '#00a000', 'stroke-width': '2',
    })
    chains = kinematic_chains(model)
    for index, state in enumerate(states):
        color = _iteration_color(index, len(states))
        group = ET.SubElement(svg, 'g', {'class': 'state', 'data-iteration': str(index), 'stroke': color,
                                         'fill': color})
        poses = part_poses_in_camera(model, state)
        origins = project(np.array([poses[p.id].translation for p in model.parts]), camera)
        for chain in chains:
            points = [origins.uv[p] for p in chain if origins.valid[p]]
            if len(points) < 2:
                continue
            ET.SubElement(group, 'polyline', {
                'points': ' '.join('{},{}'.format(_fmt(u), _fmt(v)) for u, v in points),
                'fill': 'none', 'stroke-width': '2',
            })
        for part in model.parts:
            proj = project(poses[part.id].apply(part.points), camera)
            for u, v in proj.uv[proj.valid]:
                ET.SubElement(group, 'circle', {'cx': _fmt(u), 'cy': _fmt(v), 'r': '1.5', 'stroke': 'none'})
    return ET.tostring(svg, encoding='unicode')
