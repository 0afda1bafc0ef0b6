# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import multiprocessing

from knack.log import get_logger

from robostate.utilities import DEFAULT_CAMERA, KIND_SCENES, heading, make_header, write_jsonl

from .common import load_model, require_positive

logger = get_logger(__name__)


def generate_scenes(out, count=10, seed=0, robot=None, focal=None, width=None, height=None, workers=1):
    """ Sample `count` synthetic scenes and write them as JSON Lines. """
    from robostate.core.camera import Intrinsics

    require_positive('--count', count, allow_zero=True)
    require_positive('--workers', workers)
    model = load_model(robot)
    width = width or DEFAULT_CAMERA['width']
    height = height or DEFAULT_CAMERA['height']
    focal = focal or DEFAULT_CAMERA['f_x']
    camera = Intrinsics(float(focal), float(focal), width / 2.0, height / 2.0, int(width), int(height))

    heading('Generate {} scenes'.format(count))
    tasks = [(robot, camera, seed, scene_id) for scene_id in range(count)]
    if workers > 1 and count > 1:
        # pylint: disable=consider-using-with
        pool = multiprocessing.Pool(min(workers, count), _process_pool_init)
        try:
            records = pool.map(_generate_one, tasks)
        finally:
            pool.close()
            pool.join()
    else:
        from robostate.core.scenes import generate_scenes as sample_scenes
        records = [scene.to_dict() for scene in sample_scenes(model, camera, count, seed)]

    header = make_header(KIND_SCENES, 'gen', seed, robot=robot, robot_name=model.name, count=count,
                         camera=camera.to_dict())
    write_jsonl(out, header, records)
    return {'out': out, 'scenes': len(records), 'robot': model.name, 'seed': seed}


def _process_pool_init():
    import signal
    signal.signal(signal.SIGINT, signal.SIG_IGN)


def _generate_one(task):
    import numpy as np
    from robostate.core.scenes import sample_scene

    robot, camera, seed, scene_id = task
    model = load_model(robot)
    scene = sample_scene(model, camera, np.random.default_rng(seed ^ scene_id), scene_id, seed)
    logger.info('Generated scene %d', scene_id)
    return scene.to_dict()
