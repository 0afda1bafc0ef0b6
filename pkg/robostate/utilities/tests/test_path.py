# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------


import os
import shutil
import tempfile
import unittest

from knack.util import CLIError

from robostate.utilities import MissingFileError, get_shipped_robots, make_parent_dirs, resolve_robot_path


class TestResolveRobot(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_shipped_robots(self):
        robots = get_shipped_robots()
        self.assertIn('panda', robots)
        self.assertIn('planar_arm', robots)
        for path in robots.values():
            self.assertTrue(os.path.isfile(path))

    def test_name_or_path(self):
        self.assertEqual(resolve_robot_path('panda'), get_shipped_robots()['panda'])
        path = os.path.join(self.tmp, 'mine.json')
        with open(path, 'w') as handle:
            handle.write('{}')
        self.assertEqual(resolve_robot_path(path), path)

    def test_unknown_robot(self):
        with self.assertRaises(MissingFileError):
            resolve_robot_path(os.path.join(self.tmp, 'nope.json'))
        with self.assertRaises(CLIError):
            resolve_robot_path(None)

    def test_make_parent_dirs(self):
        target = os.path.join(self.tmp, 'a', 'b', 'out.jsonl')
        make_parent_dirs(target)
        self.assertTrue(os.path.isdir(os.path.dirname(target)))


if __name__ == '__main__':
    unittest.main()
