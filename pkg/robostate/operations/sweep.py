# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

from knack.log import get_logger
from knack.util import CLIError

from robostate.utilities import heading
from robostate.utilities.const import ADD_THRESHOLD, K_TEST, K_TRAIN, N_LARGEST

from .common import header_robot, load_scenes, require_positive
from .refine import run_refinement

logger = get_logger(__name__)


# pylint: disable=too-many-arguments, too-many-locals
def sweep_iterations(scenes, k_train_proxy=None, k_test=None, robot=None, anchor='largest:{}'.format(N_LARGEST),
                     reference='centroid', seed=0, add_thresh=ADD_THRESHOLD, workers=1):
    """ ADD-AUC (x100) of the noisy oracle for every (step fraction, test iteration count) pair.

    The step fraction of the noisy oracle stands in for how well a refiner was
    trained; one refinement with max(k_test) iterations is run per fraction and
    read back at every requested iteration count.
    """
    from robostate.core.estimator import RefinementTrace
    from robostate.core.metrics import add_auc, add_error

    k_train_proxy = k_train_proxy or [0.25, 0.5, 1.0]
    k_test = sorted(set(k_test or [1, 2, K_TRAIN, 5, K_TEST]))
    require_positive('--add-thresh', add_thresh)
    if any(not 0 < f <= 1 for f in k_train_proxy):
        raise CLIError('--k-train-proxy values must be within (0, 1]')
    if k_test[0] < 1:
        raise CLIError('--k-test values must be >= 1')
    scenes_header, model, loaded = load_scenes(scenes, robot)
    robot = header_robot(robot, scenes_header)

    rows = []
    for fraction in k_train_proxy:
        heading('Step fraction {}'.format(fraction))
        options = {'refiner': 'noisy-oracle', 'step_fraction': fraction, 'iterations': k_test[-1],
                   'anchor': anchor, 'reference': reference, 'known_joints': False, 'init': 'detection',
                   'seed': seed}
        traces = [RefinementTrace.from_records(records)
                  for _, records, error in run_refinement(robot, loaded, options, workers=workers)
                  if error is None]
        if not traces:
            raise CLIError('every refinement failed for step fraction {}'.format(fraction))
        for k in k_test:
            errors = [add_error(model, trace.states[k], loaded[trace.scene_id].gt_state) for trace in traces]
            rows.append({'step_fraction': fraction, 'k_test': k, 'add_auc': add_auc(errors, add_thresh) * 100.0,
                         'scenes': len(errors)})
            logger.info('fraction %s, K=%d: ADD-AUC %.2f', fraction, k, rows[-1]['add_auc'])
    return rows
