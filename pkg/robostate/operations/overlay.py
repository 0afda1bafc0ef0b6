# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

import os

from knack.log import get_logger
from knack.util import CLIError

from robostate.utilities import KIND_OVERLAY, dumps, make_dirs, make_header, make_parent_dirs

from .common import load_scenes, load_traces

logger = get_logger(__name__)


def draw_overlay(scene_id, traces, out, scenes=None, robot=None, mask_dir=None):
    """ SVG of every traced state of one scene over its detection; optional PGM masks of the final state. """
    from robostate.core.renderer import render_overlay_svg

    traces_header, loaded_traces, _ = load_traces(traces)
    config = traces_header.get('config', {})
    scenes = scenes or config.get('scenes')
    if not scenes:
        raise CLIError('no scenes file given and none recorded in the traces header. Use --scenes.')
    _, model, loaded_scenes = load_scenes(scenes, robot or config.get('robot'))
    trace = next((t for t in loaded_traces if t.scene_id == scene_id), None)
    if trace is None or scene_id not in loaded_scenes:
        raise CLIError('scene {} has no trace in {}'.format(scene_id, traces))
    scene = loaded_scenes[scene_id]

    header = make_header(KIND_OVERLAY, 'overlay', traces_header.get('seed'), robot=robot or config.get('robot'),
                         scenes=scenes, traces=traces, scene_id=scene_id)
    svg = render_overlay_svg(scene.observation(), trace.states, model, metadata=dumps(header))
    make_parent_dirs(out)
    with open(out, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(svg + '\n')
    result = {'out': out, 'scene_id': scene_id, 'states': len(trace.states)}
    if mask_dir:
        result['masks'] = write_masks(model, trace.final_state, scene.camera, mask_dir, scene_id)
    return result


def write_masks(model, state, camera, mask_dir, scene_id):
    """ Robot and anchor masks of a state at full image resolution, as binary PGM files. """
    import numpy as np
    from PIL import Image
    from robostate.core.camera import full_image_crop
    from robostate.core.renderer import render

    rendering = render(model, state, camera, full_image_crop(camera), (camera.width, camera.height))
    make_dirs(mask_dir)
    paths = []
    for name, mask in (('robot', rendering.robot_mask), ('anchor', rendering.anchor_mask)):
        path = os.path.join(mask_dir, 'scene{}_{}.pgm'.format(scene_id, name))
        Image.fromarray(mask.astype(np.uint8) * 255, mode='L').save(path, format='PPM')
        logger.info("Wrote %s mask to '%s'", name, path)
        paths.append(path)
    return paths
