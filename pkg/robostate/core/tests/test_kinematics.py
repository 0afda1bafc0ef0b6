# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import json
import os
import shutil
import tempfile
from unittest import TestCase

import numpy as np

from robostate.core.exceptions import (
    CycleDetectedError, DanglingReferenceError, DimensionMismatchError, InvalidPartError, ParseError)
from robostate.core.kinematics import (
    forward_kinematics, largest_parts, load_robot, midrange_config, relative_part_transform, robot_from_dict,
    sample_joint_config)

from .helpers import assert_transform_close, box_points, panda, planar_arm


def _two_joint_document(**overrides):
    document = {
        'parts': [{'name': 'a', 'points': box_points()}, {'name': 'b', 'points': box_points()},
                  {'name': 'c', 'points': box_points()}],
        'joints': [{'parent': 'a', 'child': 'b', 'axis': [0, 0, 1], 'limits': [-1, 1]},
                   {'parent': 'b', 'child': 'c', 'axis': [0, 1, 0], 'limits': [-1, 1]}],
    }
    document.update(overrides)
    return document


class TestRobotModel(TestCase):

    def test_shipped_panda(self):
        model = panda()
        self.assertEqual(model.num_parts, 9)
        self.assertEqual(model.dof, 8)
        self.assertEqual(largest_parts(model, 5), [5, 2, 1, 0, 4])
        poses = forward_kinematics(model, np.zeros(8))
        np.testing.assert_allclose(poses[1].translation, [0.0, 0.0, 0.333], atol=1e-12)
        # joint 3 sits 0.316 m above joint 2 when the arm is straight
        np.testing.assert_allclose(poses[3].translation, [0.0, 0.0, 0.649], atol=1e-12)

    def test_planar_arm_forward_kinematics(self):
        model = planar_arm()
        tip = forward_kinematics(model, [np.pi / 2])[1].apply([0.3, 0.0, 0.0])
        np.testing.assert_allclose(tip, [0.05, 0.3, 0.0], atol=1e-12)
        # volume from the bounding box of the points: 10 cm cube
        self.assertAlmostEqual(model.parts[0].volume, 1000.0, places=6)
        self.assertEqual(largest_parts(model, 2), [1, 0])

    def test_root_is_identity_and_midrange(self):
        model = planar_arm()
        poses = forward_kinematics(model, midrange_config(model))
        np.testing.assert_array_equal(poses[0].as_matrix(), np.eye(4))
        np.testing.assert_allclose(midrange_config(model), [0.0])

    def test_relative_transform(self):
        model = panda()
        rng = np.random.default_rng(0)
        for _ in range(50):
            q = sample_joint_config(model, rng)
            a, b, c = rng.integers(model.num_parts, size=3)
            combined = relative_part_transform(model, q, a, b) @ relative_part_transform(model, q, b, c)
            assert_transform_close(self, combined, relative_part_transform(model, q, a, c), 1e-12)
        np.testing.assert_array_equal(relative_part_transform(model, q, 3, 3).as_matrix(), np.eye(4))

    def test_sampled_configs_within_limits(self):
        model = panda()
        rng = np.random.default_rng(1)
        samples = np.array([sample_joint_config(model, rng) for _ in range(1000)])
        self.assertTrue(np.all(samples >= model.lower) and np.all(samples <= model.upper))

    def test_check_config_and_part(self):
        model = panda()
        with self.assertRaises(DimensionMismatchError):
            forward_kinematics(model, np.zeros(7))
        with self.assertRaises(InvalidPartError):
            model.check_part(9)
        with self.assertRaises(InvalidPartError):
            largest_parts(model, 0)
        np.testing.assert_allclose(model.clamp(np.full(8, 10.0)), model.upper)


class TestRobotParsing(TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def _write(self, text):
        path = os.path.join(self.tmp, 'robot.json')
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text)
        return path

    def test_load_from_file(self):
        model = load_robot(self._write(json.dumps(_two_joint_document())))
        self.assertEqual(model.name, 'robot')
        self.assertEqual([j.child for j in model.joints], [1, 2])

    def test_malformed_json_reports_line(self):
        with self.assertRaises(ParseError) as ctx:
            load_robot(self._write('{\n  "parts": [\n  oops\n]}'))
        self.assertEqual(ctx.exception.details['line'], 3)

    def test_cycle(self):
        document = _two_joint_document(joints=[
            {'parent': 'b', 'child': 'c', 'axis': [0, 0, 1], 'limits': [-1, 1]},
            {'parent': 'c', 'child': 'b', 'axis': [0, 0, 1], 'limits': [-1, 1]}])
        with self.assertRaises(CycleDetectedError):
            robot_from_dict(document)
        with self.assertRaises(CycleDetectedError):
            robot_from_dict(_two_joint_document(joints=[
                {'parent': 'b', 'child': 'a', 'axis': [0, 0, 1], 'limits': [-1, 1]}]))

    def test_dangling_reference(self):
        with self.assertRaises(DanglingReferenceError):
            robot_from_dict(_two_joint_document(joints=[
                {'parent': 'a', 'child': 'z', 'axis': [0, 0, 1], 'limits': [-1, 1]}]))
        with self.assertRaises(DanglingReferenceError):
            robot_from_dict(_two_joint_document(joints=[
                {'parent': 0, 'child': 7, 'axis': [0, 0, 1], 'limits': [-1, 1]}]))

    def test_invalid_fields(self):
        for joint in ({'parent': 'a', 'child': 'b', 'axis': [0, 0, 2], 'limits': [-1, 1]},
                      {'parent': 'a', 'child': 'b', 'axis': [0, 0, 1], 'limits': [1, -1]},
                      {'parent': 'a', 'child': 'b', 'axis': [0, 0, 1]},
                      {'parent': 'a', 'child': 'b', 'axis': [0, 0, 1], 'limits': [-1, 1],
                       'origin': np.diag([2.0, 1.0, 1.0, 1.0]).tolist()}):
            with self.assertRaises(ParseError):
                robot_from_dict(_two_joint_document(joints=[joint], parts=[
                    {'name': 'a', 'points': box_points()}, {'name': 'b', 'points': box_points()}]))
        with self.assertRaises(ParseError):
            robot_from_dict({'parts': [{'name': 'a', 'points': [[0, 0]]}]})
        with self.assertRaises(ParseError):
            robot_from_dict({'parts': []})
