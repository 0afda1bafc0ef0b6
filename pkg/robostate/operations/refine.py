# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import multiprocessing

from knack.log import get_logger
from knack.util import CLIError

from robostate.utilities import KIND_TRACES, heading, make_header, progress, resolve_robot_path, write_jsonl
from robostate.utilities.const import (
    K_TEST, N_LARGEST, PERTURB_JOINT_SIGMA, PERTURB_ROTATION_SIGMA_DEG, PERTURB_TRANSLATION_SIGMA)

from .common import header_robot, load_model, load_scenes, require_positive

logger = get_logger(__name__)

INIT_DETECTION = 'detection'
INIT_PERTURB = 'perturb'
INIT_MODES = [INIT_DETECTION, INIT_PERTURB]


# pylint: disable=too-many-arguments, too-many-locals
def refine_scenes(scenes, trace_out, robot=None, refiner='oracle', iters=K_TEST, anchor='largest:{}'.format(N_LARGEST),
                  reference='centroid', known_joints=False, init=INIT_DETECTION, chain=False, seed=0, workers=1,
                  step_fraction=None, oracle_noise=None):
    """ Run the render & compare loop on every scene and write one trace line per iteration. """
    require_positive('--iters', iters)
    require_positive('--workers', workers)
    if init not in INIT_MODES:
        raise CLIError("--init must be one of {}".format(', '.join(INIT_MODES)))
    scenes_header, model, loaded = load_scenes(scenes, robot)
    robot = header_robot(robot, scenes_header)
    options = {
        'refiner': refiner,
        'step_fraction': step_fraction,
        'oracle_noise': oracle_noise,
        'iterations': iters,
        'anchor': anchor,
        'reference': reference,
        'known_joints': known_joints,
        'init': init,
        'seed': seed,
    }
    _validate_options(options)

    heading('Refine {} scenes ({}, K={})'.format(len(loaded), refiner, iters))
    results = run_refinement(robot, loaded, options, chain=chain, workers=workers)

    records, failed = [], []
    for scene_id, trace_records, error in results:
        records.extend(trace_records)
        if error is not None:
            failed.append(scene_id)
            records.append({'scene_id': scene_id, 'error': error})
    settings = {key: value for key, value in options.items() if key != 'seed'}
    header = make_header(KIND_TRACES, 'refine', seed, robot=robot, scenes=scenes, chain=chain, **settings)
    write_jsonl(trace_out, header, records)
    if failed:
        logger.warning('Refinement failed for scenes %s', failed)
    return {'trace_out': trace_out, 'scenes': len(results), 'failed': failed, 'refiner': refiner,
            'iterations': iters, 'robot': model.name}


def run_refinement(robot, scenes, options, chain=False, workers=1):
    """ Refine scenes in scene id order.

    :param scenes: {scene id: Scene}.
    :returns: [(scene id, trace records, error dict or None)] ordered by scene id.
    """
    from robostate.core.refiners import make_refiner

    robot_path = resolve_robot_path(robot)
    model = load_model(robot_path)
    ordered = [scenes[scene_id] for scene_id in sorted(scenes)]
    exclusive = make_refiner(options['refiner'], model).exclusive
    if chain or exclusive or workers <= 1 or len(ordered) <= 1:
        if workers > 1:
            logger.info('Refining serially (%s)', 'chained scenes' if chain else 'exclusive refiner')
        results = []
        previous = None
        for index, scene in enumerate(ordered, start=1):
            progress(index, len(ordered), 'scene {}'.format(scene.scene_id))
            result = _refine_one((robot_path, scene, options, previous if chain else None))
            results.append(result[:3])
            previous = result[3]
        return results

    tasks = [(robot_path, scene, options, None) for scene in ordered]
    # pylint: disable=consider-using-with
    pool = multiprocessing.Pool(min(workers, len(tasks)), _process_pool_init)
    try:
        results = pool.map(_refine_one, tasks)
    finally:
        pool.close()
        pool.join()
    return [result[:3] for result in results]


def _process_pool_init():
    import signal
    signal.signal(signal.SIGINT, signal.SIG_IGN)


def _validate_options(options):
    from robostate.core.exceptions import ParseError

    step_fraction = options.get('step_fraction')
    if step_fraction is not None and not 0 < step_fraction <= 1:
        raise CLIError('--step-fraction must be within (0, 1]')
    noise = options.get('oracle_noise')
    if noise is not None and (len(noise) != 3 or min(noise) < 0):
        raise CLIError('--oracle-noise takes three standard deviations >= 0: degrees, meters, joint range fraction')
    try:
        _estimator_config(options)
    except ParseError as ex:
        raise CLIError(str(ex))


def _estimator_config(options):
    from robostate.core.estimator import AnchorStrategy, EstimatorConfig, ReferenceStrategy

    return EstimatorConfig(iterations=options['iterations'],
                           anchor_strategy=AnchorStrategy.parse(options['anchor']),
                           reference_strategy=ReferenceStrategy.parse(options['reference']),
                           known_joints=options['known_joints'],
                           rng_seed=options['seed'])


def _initial_state(model, scene, options, previous):
    import numpy as np
    from robostate.core.scenes import PerturbationConfig, perturb_state

    if previous is not None:
        return previous
    if options['init'] == INIT_PERTURB:
        config = PerturbationConfig(PERTURB_TRANSLATION_SIGMA, PERTURB_ROTATION_SIGMA_DEG, PERTURB_JOINT_SIGMA)
        rng = np.random.default_rng([options['seed'], scene.scene_id])
        return perturb_state(scene.gt_state, config, rng, model)
    return None


def _refine_one(task):
    """ :returns: (scene id, trace records, error dict or None, final state or None). """
    from robostate.core.estimator import refine
    from robostate.core.exceptions import RefinementError, RobotStateError
    from robostate.core.refiners import make_refiner

    robot_path, scene, options, previous = task
    model = load_model(robot_path)
    refiner = make_refiner(options['refiner'], model, options.get('step_fraction'), options.get('oracle_noise'))
    config = _estimator_config(options)
    try:
        trace = refine(scene.observation(), model, refiner, config,
                       initial_state=_initial_state(model, scene, options, previous))
    except RefinementError as ex:
        logger.warning('Scene %s: %s', scene.scene_id, ex)
        records = ex.trace.to_records() if ex.trace is not None else []
        final = ex.trace.final_state if ex.trace is not None else None
        return scene.scene_id, records, ex.to_dict(), final
    except RobotStateError as ex:
        logger.warning('Scene %s: initialization failed: %s', scene.scene_id, ex)
        return scene.scene_id, [], ex.to_dict(), None
    logger.info('Scene %s refined in %d iterations', scene.scene_id, len(trace.steps))
    return scene.scene_id, trace.to_records(), None, trace.final_state
