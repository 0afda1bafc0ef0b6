# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""Human-facing progress text. Everything goes to stderr so stdout stays the command result."""

import sys


def display(txt):
    print(txt, file=sys.stderr)


def _banner(txt, frame, pad):
    rule = '=' * (len(txt) + 2 * pad)
    return '\n'.join(['', rule, (frame + txt + frame[::-1]).center(len(rule)), rule, ''])


def heading(txt):
    """ Boxed title, e.g. for the start of a command. """
    display(_banner(txt, '| ', 2))


def subheading(txt):
    display('\n {} \n{}\n'.format(txt, '-' * (len(txt) + 2)))


def progress(index, total, label):
    """ One-line counter, e.g. '[ 3/10] scene 2' """
    width = len(str(total))
    display('[{:>{w}}/{}] {}'.format(index, total, label, w=width))
