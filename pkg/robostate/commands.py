# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

from knack.commands import CommandGroup

from .transformers import (
    eval_report_transformer,
    refine_summary_transformer,
    robot_show_transformer,
    sweep_table_transformer
)


def load_command_table(self, _):

    def operation_group(name):
        return 'robostate.operations.{}#{{}}'.format(name)

    with CommandGroup(self, '', operation_group('generate')) as g:
        g.command('gen', 'generate_scenes')

    with CommandGroup(self, '', operation_group('refine')) as g:
        g.command('refine', 'refine_scenes', table_transformer=refine_summary_transformer)

    with CommandGroup(self, '', operation_group('evaluate')) as g:
        g.command('eval', 'evaluate_traces', table_transformer=eval_report_transformer)

    with CommandGroup(self, '', operation_group('overlay')) as g:
        g.command('overlay', 'draw_overlay')

    with CommandGroup(self, '', operation_group('sweep')) as g:
        g.command('sweep-iters', 'sweep_iterations', table_transformer=sweep_table_transformer)

    with CommandGroup(self, 'robot', operation_group('robot')) as g:
        g.command('show', 'show_robot', table_transformer=robot_show_transformer)
        g.command('list', 'list_robots')
