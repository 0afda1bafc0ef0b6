# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

from unittest import TestCase

import numpy as np

from robostate.core.camera import BoundingBox, project_point
from robostate.core.estimator import (
    AnchorStrategy, EstimatorConfig, ReferenceStrategy, RefinementTrace, Refiner, RobotState, initialize_state,
    part_poses_in_camera, reanchor, reference_point, refine, select_anchor)
from robostate.core.exceptions import (
    DegenerateDetectionError, DegenerateParamError, InvalidPartError, NoValidUpdateError, ParseError,
    RefinementError)
from robostate.core.geometry import PoseUpdate, RigidTransform
from robostate.core.kinematics import robot_centroid
from robostate.core.metrics import add_error
from robostate.core.refiners import OracleRefiner
from robostate.core.scenes import generate_scenes, sample_scene

from .helpers import CAMERA, assert_transform_close, panda, planar_arm, random_state, rigid_box


def _assert_same_robot(test, model, first, second, tol):
    first_poses = part_poses_in_camera(model, first)
    second_poses = part_poses_in_camera(model, second)
    for part_id in range(model.num_parts):
        assert_transform_close(test, first_poses[part_id], second_poses[part_id], tol)


class FailingRefiner(Refiner):
    """ Identity updates until `fail_at` calls were made, then NoValidUpdateError. """

    def __init__(self, fail_at):
        self.calls = 0
        self.fail_at = fail_at

    def predict(self, render_output, observation, state, focal, reference, known_joints, rng=None):
        self.calls += 1
        if self.calls > self.fail_at:
            raise NoValidUpdateError('boom')
        return PoseUpdate.identity(), np.zeros(len(state.q))


class TestStrategies(TestCase):

    def test_parse(self):
        self.assertEqual(AnchorStrategy.parse('fixed:3'), AnchorStrategy(AnchorStrategy.FIXED, 3))
        self.assertEqual(str(AnchorStrategy.parse('largest:5')), 'largest:5')
        self.assertEqual(AnchorStrategy.parse('all').kind, AnchorStrategy.ALL)
        self.assertEqual(ReferenceStrategy.parse('part:2').value, 2)
        self.assertEqual(str(ReferenceStrategy.parse('centroid')), 'centroid')
        for text in ('fixed', 'largest:x', 'all:2', 'random', 'largest:0'):
            with self.assertRaises(ParseError):
                AnchorStrategy.parse(text)
        for text in ('part', 'anchor:1', 'middle'):
            with self.assertRaises(ParseError):
                ReferenceStrategy.parse(text)
        with self.assertRaises(ParseError):
            EstimatorConfig(iterations=0)

    def test_select_anchor(self):
        model = panda()
        rng = np.random.default_rng(0)
        self.assertEqual(select_anchor(AnchorStrategy.parse('fixed:4'), model, rng), 4)
        picked = {select_anchor(AnchorStrategy.parse('largest:5'), model, rng) for _ in range(200)}
        self.assertEqual(picked, {5, 2, 1, 0, 4})
        picked = {select_anchor(AnchorStrategy.parse('all'), model, rng) for _ in range(400)}
        self.assertEqual(picked, set(range(9)))
        # N above the part count means every part
        self.assertLessEqual(select_anchor(AnchorStrategy.parse('largest:50'), model, rng), 8)
        with self.assertRaises(InvalidPartError):
            select_anchor(AnchorStrategy.parse('fixed:9'), model, rng)

    def test_reference_point(self):
        model = panda()
        state = random_state(model, np.random.default_rng(2))
        np.testing.assert_allclose(reference_point(ReferenceStrategy.parse('anchor'), model, state),
                                   state.pose.translation)
        np.testing.assert_allclose(reference_point(ReferenceStrategy.parse('centroid'), model, state),
                                   robot_centroid(model, state))
        np.testing.assert_allclose(reference_point(ReferenceStrategy.parse('part:6'), model, state),
                                   part_poses_in_camera(model, state)[6].translation)
        with self.assertRaises(InvalidPartError):
            reference_point(ReferenceStrategy.parse('part:12'), model, state)


class TestState(TestCase):

    def test_reanchor_keeps_robot(self):
        model = panda()
        rng = np.random.default_rng(7)
        for _ in range(1000):
            state = random_state(model, rng)
            other = reanchor(state, int(rng.integers(model.num_parts)), model)
            _assert_same_robot(self, model, state, other, 1e-12)
            self.assertIs(reanchor(state, state.anchor, model), state)

    def test_state_is_read_only(self):
        state = RobotState(0, RigidTransform(), [0.1, 0.2])
        with self.assertRaises(ValueError):
            state.q[0] = 1.0
        record = random_state(panda(), np.random.default_rng(1)).to_dict()
        self.assertEqual(RobotState.from_dict(record).to_dict(), record)

    def test_pose_must_be_rigid(self):
        skewed = np.diag([1.0, 1.0, 1.1])
        for pose in (None, np.eye(4), RigidTransform(skewed), RigidTransform(translation=[0.0, np.nan, 1.0])):
            with self.assertRaises(DegenerateParamError):
                RobotState(0, pose, [0.0])
        record = {'anchor': 0, 'pose': (np.eye(4) * 2.0).tolist(), 'q': []}
        with self.assertRaises(DegenerateParamError):
            RobotState.from_dict(record)


class TestInitialization(TestCase):

    def test_centroid_on_detection_center(self):
        model = panda()
        detection = BoundingBox((400.0, 200.0), (150.0, 300.0))
        state = initialize_state(model, detection, CAMERA)
        self.assertEqual(state.anchor, 0)
        np.testing.assert_allclose(project_point(robot_centroid(model, state), CAMERA), detection.center, atol=1e-9)
        np.testing.assert_allclose(state.pose.rotation, np.eye(3))
        np.testing.assert_allclose(state.q, (model.lower + model.upper) / 2)

    def test_depth_follows_detection_size(self):
        model = rigid_box()
        small = initialize_state(model, BoundingBox((320.0, 240.0), (60.0, 36.0)), CAMERA)
        large = initialize_state(model, BoundingBox((320.0, 240.0), (120.0, 72.0)), CAMERA)
        self.assertAlmostEqual(small.pose.translation[2] / large.pose.translation[2], 2.0, delta=0.1)

    def test_degenerate_detection(self):
        with self.assertRaises(DegenerateDetectionError):
            initialize_state(panda(), BoundingBox((320.0, 240.0), (0.0, 50.0)), CAMERA)


class TestRefine(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.model = panda()
        cls.scene = sample_scene(cls.model, CAMERA, np.random.default_rng(11), scene_id=4)

    def test_exact_oracle_converges_in_one_iteration(self):
        config = EstimatorConfig(iterations=3)
        trace = refine(self.scene.observation(), self.model, OracleRefiner(self.model), config)
        self.assertEqual(len(trace.states), 4)
        self.assertEqual(trace.scene_id, 4)
        for state in trace.states[1:]:
            _assert_same_robot(self, self.model, state, self.scene.gt_state, 1e-8)
            np.testing.assert_allclose(state.q, self.scene.gt_state.q, atol=1e-12)
        self.assertLess(trace.steps[1].losses.total, 1e-12)
        self.assertIn(trace.steps[0].anchor, {5, 2, 1, 0, 4})

    def test_known_joints_never_change_q(self):
        config = EstimatorConfig(iterations=4, known_joints=True, anchor_strategy=AnchorStrategy.parse('all'))
        observation = self.scene.observation()
        trace = refine(observation, self.model, OracleRefiner(self.model), config)
        for step in trace.steps:
            np.testing.assert_array_equal(step.state.q, observation.joint_measurement)
            np.testing.assert_array_equal(step.dq, np.zeros(self.model.dof))
        _assert_same_robot(self, self.model, trace.final_state, self.scene.gt_state, 1e-8)

    def test_seeded_anchor_sequence(self):
        config = EstimatorConfig(iterations=6, anchor_strategy=AnchorStrategy.parse('all'), rng_seed=3)
        runs = [[s.anchor for s in refine(self.scene.observation(), self.model, FailingRefiner(99), config).steps]
                for _ in range(2)]
        self.assertEqual(runs[0], runs[1])

    def test_records_round_trip(self):
        trace = refine(self.scene.observation(), self.model, OracleRefiner(self.model), EstimatorConfig(iterations=2))
        records = trace.to_records()
        self.assertEqual([r['iteration'] for r in records], [0, 1, 2])
        rebuilt = RefinementTrace.from_records(list(reversed(records)))
        self.assertEqual([s.to_dict() for s in rebuilt.states], [s.to_dict() for s in trace.states])
        self.assertAlmostEqual(rebuilt.steps[0].losses.total, trace.steps[0].losses.total)
        with self.assertRaises(ParseError):
            RefinementTrace.from_records(records[1:])

    def test_failure_keeps_partial_trace(self):
        model = planar_arm()
        scene = sample_scene(model, CAMERA, np.random.default_rng(1))
        with self.assertRaises(RefinementError) as ctx:
            refine(scene.observation(), model, FailingRefiner(2), EstimatorConfig(iterations=5))
        self.assertEqual(ctx.exception.iteration, 2)
        self.assertEqual(len(ctx.exception.trace.steps), 2)
        self.assertIsInstance(ctx.exception.cause, NoValidUpdateError)

    def test_initial_state_override(self):
        start = reanchor(self.scene.gt_state, 3, self.model)
        trace = refine(self.scene.observation(), self.model, FailingRefiner(99), EstimatorConfig(iterations=1),
                       initial_state=start)
        self.assertIs(trace.initial_state, start)
        _assert_same_robot(self, self.model, trace.final_state, start, 1e-9)


class TestOracleFromDetection(TestCase):

    def test_one_iteration_reaches_ground_truth(self):
        model = panda()
        refiner = OracleRefiner(model)
        config = EstimatorConfig(iterations=1)
        for scene in generate_scenes(model, CAMERA, 100, seed=8):
            trace = refine(scene.observation(), model, refiner, config)
            self.assertLess(add_error(model, trace.final_state, scene.gt_state), 1e-9, msg=scene.scene_id)
