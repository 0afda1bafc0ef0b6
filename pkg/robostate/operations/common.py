# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

from knack.log import get_logger
from knack.util import CLIError

from robostate.utilities import KIND_SCENES, KIND_TRACES, read_jsonl, resolve_robot_path

logger = get_logger(__name__)

_MODEL_CACHE = {}


def load_model(robot):
    """ Robot model from a path or a shipped name, cached per process. """
    from robostate.core.kinematics import load_robot

    path = resolve_robot_path(robot)
    if path not in _MODEL_CACHE:
        _MODEL_CACHE[path] = load_robot(path)
    return _MODEL_CACHE[path]


def header_robot(robot, *headers):
    """ The --robot value, or the robot recorded in the first header that has one. """
    if robot:
        return robot
    for header in headers:
        recorded = (header or {}).get('config', {}).get('robot')
        if recorded:
            return recorded
    raise CLIError('no robot given and none recorded in the input files. Use --robot.')


def load_scenes(path, robot=None):
    """ :returns: (header, model, {scene id: Scene}). """
    from robostate.core.scenes import Scene

    header, records = read_jsonl(path, KIND_SCENES)
    model = load_model(header_robot(robot, header))
    scenes = {}
    for record in records:
        scene = Scene.from_dict(record, model)
        scenes[scene.scene_id] = scene
    logger.info("Loaded %d scenes from '%s'", len(scenes), path)
    return header, model, scenes


def load_traces(path):
    """ :returns: (header, [RefinementTrace], {scene id: error dict}). """
    from robostate.core.estimator import RefinementTrace

    header, records = read_jsonl(path, KIND_TRACES)
    grouped, errors = {}, {}
    for record in records:
        if 'error' in record:
            errors[record['scene_id']] = record['error']
            continue
        grouped.setdefault(record['scene_id'], []).append(record)
    traces = [RefinementTrace.from_records(grouped[scene_id]) for scene_id in sorted(grouped)]
    logger.info("Loaded %d traces from '%s'", len(traces), path)
    return header, traces, errors


def require_positive(name, value, allow_zero=False):
    if value is None:
        return
    if value < 0 or (value == 0 and not allow_zero):
        raise CLIError('{} must be {}, got {}'.format(name, '>= 0' if allow_zero else '> 0', value))
