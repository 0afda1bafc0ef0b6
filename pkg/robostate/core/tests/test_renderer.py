# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import xml.etree.ElementTree as ET
from unittest import TestCase

import numpy as np

from robostate.core.camera import BoundingBox, CropBox, crop_camera, full_image_crop
from robostate.core.estimator import Observation, RobotState, part_poses_in_camera
from robostate.core.geometry import RigidTransform
from robostate.core.kinematics import midrange_config
from robostate.core.renderer import kinematic_chains, rasterize, render, render_overlay_svg

from .helpers import CAMERA, panda, planar_arm, random_state

SVG = '{http://www.w3.org/2000/svg}'


class TestRasterize(TestCase):

    def test_nearer_part_occludes(self):
        raster = rasterize([[10.2, 10.7], [10.9, 10.1]], [1.0, 2.0], [0, 1], 20, 20)
        self.assertEqual(raster.visible.tolist(), [True, False])
        self.assertEqual(raster.owner[10, 10], 0)
        self.assertEqual(raster.depth[10, 10], 1.0)

    def test_same_part_does_not_occlude_itself(self):
        raster = rasterize([[5.0, 5.0], [5.0, 5.0]], [1.0, 1.5], [3, 3], 20, 20)
        self.assertEqual(raster.visible.tolist(), [True, True])

    def test_depth_tolerance(self):
        raster = rasterize([[5.0, 5.0], [5.0, 5.0]], [1.0, 1.0005], [0, 1], 20, 20)
        self.assertTrue(raster.visible.all())

    def test_splat_radius_and_frame(self):
        raster = rasterize([[5.5, 5.5], [-1.0, 5.0], [np.nan, 1.0], [8.0, 8.0]], [1.0, 1.0, 1.0, -1.0],
                           [0, 1, 2, 3], 20, 20, radius=2)
        self.assertEqual(raster.visible.tolist(), [True, False, False, False])
        # disc of radius 2 covers 13 pixels; the splat of part 1 centered off-frame still reaches columns 0 and 1
        self.assertEqual(int((raster.owner == 0).sum()), 13)
        self.assertGreater(int((raster.owner == 1).sum()), 0)
        self.assertFalse((raster.owner == 3).any())

    def test_empty(self):
        raster = rasterize(np.empty((0, 2)), np.empty(0), np.empty(0), 8, 6)
        self.assertEqual(raster.owner.shape, (6, 8))
        self.assertTrue(np.all(raster.owner == -1))


class TestRender(TestCase):

    def test_masks(self):
        model = panda()
        rng = np.random.default_rng(5)
        for _ in range(5):
            state = random_state(model, rng, depth=(1.5, 2.0))
            output = render(model, state, CAMERA, full_image_crop(CAMERA), resolution=(640, 480))
            self.assertEqual(output.resolution, (640, 480))
            self.assertEqual(output.robot_mask.shape, (480, 640))
            self.assertFalse(np.any(output.anchor_mask & ~output.robot_mask))
            self.assertEqual(set(output.parts), set(range(model.num_parts)))
            for part_id, projection in output.parts.items():
                self.assertTrue(np.all(projection.valid[projection.visible]))
                self.assertEqual(len(output.visible_points(part_id)), int(projection.visible.sum()))

    def test_crop_render_matches_full_render_geometry(self):
        model = planar_arm()
        state = RobotState(0, RigidTransform(translation=[0.0, 0.0, 1.0]), [0.0])
        crop = CropBox(center=(320.0, 240.0), width=400.0, height=300.0)
        output = render(model, state, CAMERA, crop, resolution=(320, 240))
        # the base center projects onto the crop center
        np.testing.assert_allclose(output.parts[0].uv[-1], [160.0, 120.0])
        self.assertTrue(output.robot_mask[120, 160])
        self.assertEqual(output.owner[120, 160], 0)

    def test_anchor_mask_matches_nearest_owner(self):
        model = panda()
        rng = np.random.default_rng(13)
        crop = CropBox(center=(320.0, 240.0), width=640.0, height=480.0)
        for _ in range(5):
            state = random_state(model, rng, depth=(0.9, 1.4))
            output = render(model, state, CAMERA, crop, resolution=(64, 48), radius=1)
            expected = np.zeros((48, 64), dtype=bool)
            nearest = np.full((48, 64), np.inf)
            virtual = crop_camera(CAMERA, crop, 64, 48)
            poses = part_poses_in_camera(model, state)
            for part in model.parts:
                for point in poses[part.id].apply(part.points):
                    if point[2] <= 0:
                        continue
                    u = int(np.floor(virtual.f_x * point[0] / point[2] + virtual.c_x))
                    v = int(np.floor(virtual.f_y * point[1] / point[2] + virtual.c_y))
                    for col in range(u - 1, u + 2):
                        for row in range(v - 1, v + 2):
                            if (col - u) ** 2 + (row - v) ** 2 > 1 or not (0 <= col < 64 and 0 <= row < 48):
                                continue
                            if point[2] < nearest[row, col]:
                                nearest[row, col] = point[2]
                                expected[row, col] = part.id == state.anchor
            self.assertTrue(expected.any())
            np.testing.assert_array_equal(output.anchor_mask, expected)
            np.testing.assert_array_equal(output.robot_mask, np.isfinite(nearest))

    def test_identical_inputs_identical_output(self):
        model = panda()
        state = random_state(model, np.random.default_rng(6), depth=(1.5, 2.0))
        first, second = (render(model, state, CAMERA, full_image_crop(CAMERA)) for _ in range(2))
        self.assertEqual(first.owner.tobytes(), second.owner.tobytes())
        self.assertEqual(first.anchor_mask.tobytes(), second.anchor_mask.tobytes())
        for part_id, projection in first.parts.items():
            self.assertEqual(projection.uv.tobytes(), second.parts[part_id].uv.tobytes())
            self.assertEqual(projection.visible.tobytes(), second.parts[part_id].visible.tobytes())

    def test_robot_behind_camera(self):
        model = planar_arm()
        state = RobotState(0, RigidTransform(translation=[0.0, 0.0, -1.0]), [0.0])
        output = render(model, state, CAMERA, full_image_crop(CAMERA), resolution=(640, 480))
        self.assertFalse(output.robot_mask.any())


class TestOverlay(TestCase):

    def test_chains(self):
        self.assertEqual(kinematic_chains(panda()), [list(range(9))])
        self.assertEqual(kinematic_chains(planar_arm()), [[0, 1]])

    def test_svg_groups(self):
        model = panda()
        q = midrange_config(model)
        states = [RobotState(0, RigidTransform(translation=[0.0, 0.0, z]), q) for z in (1.5, 1.6, 1.7)]
        observation = Observation(camera=CAMERA, detection=BoundingBox((320.0, 240.0), (100.0, 200.0)))
        root = ET.fromstring(render_overlay_svg(observation, states, model))
        groups = root.findall(SVG + 'g')
        self.assertEqual(len(groups), 3)
        self.assertEqual([g.get('data-iteration') for g in groups], ['0', '1', '2'])
        self.assertNotEqual(groups[0].get('stroke'), groups[-1].get('stroke'))
        self.assertEqual(len(groups[0].findall(SVG + 'polyline')), 1)
        self.assertEqual(len(groups[0].findall(SVG + 'circle')), len(model.all_points()))
        rect = root.find(SVG + 'rect')
        self.assertEqual((rect.get('x'), rect.get('width')), ('270.000', '100.000'))

    def test_svg_is_reproducible(self):
        model = panda()
        rng = np.random.default_rng(3)
        states = [random_state(model, rng, depth=(1.5, 2.0)) for _ in range(3)]
        observation = Observation(camera=CAMERA, detection=BoundingBox((320.0, 240.0), (100.0, 200.0)))
        first = render_overlay_svg(observation, states, model, metadata='{"seed": 3}')
        self.assertEqual(first, render_overlay_svg(observation, states, model, metadata='{"seed": 3}'))
        root = ET.fromstring(first)
        self.assertEqual(root.find(SVG + 'metadata').text, '{"seed": 3}')
        self.assertIsNone(ET.fromstring(render_overlay_svg(observation, states, model)).find(SVG + 'metadata'))
