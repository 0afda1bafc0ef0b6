# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import json

from knack.log import get_logger
from knack.util import CLIError

from robostate.utilities import KIND_REPORT, display, heading, make_header, make_parent_dirs, subheading
from robostate.utilities.const import ADD_THRESHOLD

from .common import load_scenes, load_traces, require_positive

logger = get_logger(__name__)


def evaluate_traces(scenes, traces, robot=None, add_thresh=ADD_THRESHOLD, top_fraction=None, out=None):
    """ Compare the final traced states with the ground truth of their scenes. """
    from robostate.core.metrics import evaluate

    require_positive('--add-thresh', add_thresh)
    if top_fraction is not None and not 0 < top_fraction <= 1:
        raise CLIError('--top-fraction must be within (0, 1]')
    traces_header, loaded_traces, errors = load_traces(traces)
    robot = robot or traces_header.get('config', {}).get('robot')
    _, model, loaded_scenes = load_scenes(scenes, robot)

    heading('Evaluate {} traces'.format(len(loaded_traces)))
    report = evaluate(model, loaded_scenes, loaded_traces, threshold_max=add_thresh, top_fraction=top_fraction)
    result = report.to_dict()
    result['failed'] = sorted(errors)
    result['header'] = make_header(KIND_REPORT, 'eval', traces_header.get('seed'), robot=robot, scenes=scenes,
                                   traces=traces, add_thresh=add_thresh, top_fraction=top_fraction)
    if errors:
        logger.warning('%d scenes have no complete trace: %s', len(errors), sorted(errors))

    subheading('ADD-AUC @ {:.3f} m'.format(add_thresh))
    display('{:.2f}'.format(result['add_auc']))
    if out:
        make_parent_dirs(out)
        with open(out, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(json.dumps(result, sort_keys=True, indent=2) + '\n')
        logger.info("Wrote report to '%s'", out)
    return result
