# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

__VERSION__ = '0.1.0'
