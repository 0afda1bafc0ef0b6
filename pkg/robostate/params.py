# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

# pylint: disable=line-too-long
from knack.arguments import ArgumentsContext, CLIArgumentType

from robostate.core.refiners import REFINERS
from robostate.operations.refine import INIT_MODES


# pylint: disable=too-many-statements
def load_arguments(self, _):

    robot_type = CLIArgumentType(options_list=['--robot', '-r'], configured_default='robot',
                                 help="Robot description: a JSON file or a shipped robot name ('planar_arm', 'panda'). Environment variable: ROBOSTATE_DEFAULTS_ROBOT.")
    seed_type = CLIArgumentType(options_list='--seed', type=int, default=0, help='Seed of every random draw.')
    workers_type = CLIArgumentType(options_list=['--workers', '-w'], type=int, configured_default='workers',
                                   help='Number of worker processes. Environment variable: ROBOSTATE_DEFAULTS_WORKERS.')
    anchor_type = CLIArgumentType(options_list='--anchor', arg_group='Strategy',
                                  help="Anchor part selection: 'fixed:ID', 'largest:N' or 'all'.")
    reference_type = CLIArgumentType(options_list='--reference', arg_group='Strategy',
                                     help="Reference point: 'centroid', 'anchor', 'part:ID' or 'largest:N'.")
    scenes_type = CLIArgumentType(options_list=['--scenes', '-s'], help='Scenes file written by `gen`.')
    traces_type = CLIArgumentType(options_list=['--traces', '-t'], help='Traces file written by `refine`.')
    add_thresh_type = CLIArgumentType(options_list='--add-thresh', type=float,
                                      help='Upper bound (meters) of the ADD threshold range.')

    with ArgumentsContext(self, '') as c:
        c.argument('robot', robot_type)
        c.argument('seed', seed_type)
        c.argument('workers', workers_type)

    with ArgumentsContext(self, 'gen') as c:
        c.argument('count', options_list=['--count', '-n'], type=int, help='Number of scenes.')
        c.argument('out', options_list='--out', help='Output JSON Lines file.')
        c.argument('focal', type=float, arg_group='Camera', help='Focal length in pixels (both axes).')
        c.argument('width', type=int, arg_group='Camera', help='Image width in pixels.')
        c.argument('height', type=int, arg_group='Camera', help='Image height in pixels.')

    with ArgumentsContext(self, 'refine') as c:
        c.argument('scenes', scenes_type)
        c.argument('trace_out', options_list='--trace-out', help='Output JSON Lines file, one line per iteration.')
        c.argument('refiner', choices=sorted(REFINERS), help='Refiner predicting the updates.')
        c.argument('iters', options_list=['--iters', '-k'], type=int, help='Number of refinement iterations.')
        c.argument('anchor', anchor_type)
        c.argument('reference', reference_type)
        c.argument('known_joints', options_list='--known-joints', action='store_true', help='Use the measured joint angles and estimate the pose only.')
        c.argument('init', choices=INIT_MODES, arg_group='Initialization', help='Initialize from the detection, or from the ground truth perturbed with the training noise.')
        c.argument('chain', action='store_true', arg_group='Initialization', help='Start each scene from the final state of the previous one (scenes in id order).')
        c.argument('step_fraction', options_list='--step-fraction', type=float, help='Fraction of the exact update applied by the oracle refiners.')
        c.argument('oracle_noise', options_list='--oracle-noise', nargs=3, type=float, help='Per-prediction noise of the oracle refiners: rotation degrees, translation meters, joint range fraction. Defaults to 0.5 0.002 0.001 for noisy-oracle, 0 for oracle.')

    with ArgumentsContext(self, 'eval') as c:
        c.argument('scenes', scenes_type)
        c.argument('traces', traces_type)
        c.argument('add_thresh', add_thresh_type)
        c.argument('top_fraction', options_list='--top-fraction', type=float, help='Also average pose errors over this best fraction of scenes, ranked by joint error.')
        c.argument('out', options_list='--out', help='Write the JSON report to this file.')

    with ArgumentsContext(self, 'overlay') as c:
        c.argument('scene_id', options_list='--scene-id', type=int, help='Scene to draw.')
        c.argument('traces', traces_type)
        c.argument('scenes', scenes_type, help='Scenes file. Defaults to the one recorded in the traces header.')
        c.argument('out', options_list='--out', help='Output SVG file.')
        c.argument('mask_dir', options_list='--mask-dir', help='Also write robot and anchor masks of the final state as PGM files here.')

    with ArgumentsContext(self, 'sweep-iters') as c:
        c.argument('scenes', scenes_type)
        c.argument('k_train_proxy', options_list='--k-train-proxy', nargs='+', type=float, help='Space-separated step fractions of the noisy oracle.')
        c.argument('k_test', options_list='--k-test', nargs='+', type=int, help='Space-separated test iteration counts.')
        c.argument('anchor', anchor_type)
        c.argument('reference', reference_type)
        c.argument('add_thresh', add_thresh_type)
