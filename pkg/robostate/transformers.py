# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------


def refine_summary_transformer(result):
    from collections import OrderedDict

    item = OrderedDict()
    item['Robot'] = result['robot']
    item['Refiner'] = result['refiner']
    item['Iterations'] = result['iterations']
    item['Scenes'] = result['scenes']
    item['Failed'] = len(result['failed'])
    item['Traces'] = result['trace_out']
    return [item]


def eval_report_transformer(result):
    from collections import OrderedDict

    def _round(value, digits=2):
        return None if value is None else round(value, digits)

    item = OrderedDict()
    item['Scenes'] = result['scenes']
    item['ADD-AUC'] = _round(result['add_auc'])
    item['PCK@0.2'] = _round(result['pck'])
    item['Trans xyz (cm)'] = _round(result['trans_xyz_cm'])
    item['Trans norm (cm)'] = _round(result['trans_norm_cm'])
    item['Rot (deg)'] = _round(result['rot_euler_deg'])
    item['Joints (deg)'] = _round(result['joint_deg'])
    return [item]


def sweep_table_transformer(result):
    """ One row per step fraction, one column per test iteration count. """
    from collections import OrderedDict

    output = OrderedDict()
    for r in result:
        row = output.setdefault(r['step_fraction'], OrderedDict([('Step fraction', r['step_fraction'])]))
        row['K={}'.format(r['k_test'])] = round(r['add_auc'], 1)
    return list(output.values())


def robot_show_transformer(result):
    from collections import OrderedDict

    output = []
    for part in sorted(result['parts'], key=lambda p: p['rank']):
        item = OrderedDict()
        item['Rank'] = part['rank']
        item['Id'] = part['id']
        item['Part'] = part['name']
        item['Volume (cm3)'] = round(part['volume_cm3'], 1)
        item['Points'] = part['points']
        output.append(item)
    return output
