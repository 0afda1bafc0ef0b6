#!/usr/bin/env python

# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

"""robostate package that can be installed using setuptools"""

from codecs import open
import os
import re
from setuptools import setup


robostate_path = os.path.dirname(os.path.realpath(__file__))
with open(os.path.join(robostate_path, 'robostate', '__init__.py'), 'r') as version_file:
    __VERSION__ = re.search(r'^__VERSION__\s*=\s*[\'"]([^\'"]*)[\'"]',
                            version_file.read(), re.MULTILINE).group(1)

with open('README.rst', 'r', encoding='utf-8') as f:
    README = f.read()
with open('HISTORY.rst', 'r', encoding='utf-8') as f:
    HISTORY = f.read()

setup(
    name='robostate',
    version=__VERSION__,
    description='Render & compare state estimation for articulated robots',
    long_description=README + '\n\n' + HISTORY,
    author='robostate contributors',
    license='MIT',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Image Recognition',
        'Environment :: Console',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9'
    ],
    keywords='robotics pose-estimation',
    python_requires='>=3.7',
    packages=[
        'robostate',
        'robostate.config',
        'robostate.core',
        'robostate.operations',
        'robostate.utilities',
    ],
    install_requires=[
        'flake8',
        'knack',
        'numpy>=1.17',
        'pillow',
        'pylint',
        'pytest-xdist',  # depends on pytest-forked
        'pytest>=5.0.0',
        'scipy>=1.6',
    ],
    package_data={
        'robostate.config': ['*.json'],
    },
    include_package_data=True,
    entry_points={
        'console_scripts': ['robostate=robostate.__main__:main']
    }
)
