# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------

from knack.help_files import helps


helps[''] = """
    short-summary: Render & compare state estimation of articulated robots.
"""


helps['gen'] = """
    short-summary: Generate synthetic scenes of a robot.
    long-summary: >
        Joint angles are drawn uniformly within their limits, the base rotation uniformly over all
        rotations and the robot centroid along a random pixel ray 0.8 to 2.4 m away. Samples with
        less than half of the robot points in the image are rejected.
    examples:
        - name: Generate 100 scenes of the shipped Panda arm.
          text: robostate gen --robot panda --count 100 --seed 7 --out scenes.jsonl

        - name: Generate scenes with 4 worker processes and a 1280x960 camera.
          text: robostate gen -r panda -n 1000 --workers 4 --focal 1100 --width 1280 --height 960 --out scenes.jsonl
"""


helps['refine'] = """
    short-summary: Estimate the state of the robot in every scene and record the iterations.
    long-summary: Use --verbose to show one line per scene, --debug to show every iteration.
    examples:
        - name: Refine with the exact oracle for one iteration.
          text: robostate refine --scenes scenes.jsonl --refiner oracle --iters 1 --trace-out traces.jsonl

        - name: Least-squares alignment, anchor drawn among the 5 largest parts.
          text: robostate refine -s scenes.jsonl --refiner lsq --anchor largest:5 --reference centroid --trace-out traces.jsonl

        - name: Pose only, with measured joint angles.
          text: robostate refine -s scenes.jsonl --refiner lsq --known-joints --trace-out traces.jsonl

        - name: Start from the ground truth perturbed with the training noise.
          text: robostate refine -s scenes.jsonl --refiner noisy-oracle --init perturb --trace-out traces.jsonl

        - name: Noisy oracle with 2 degrees, 1 cm and 1 % of the joint range of noise per prediction.
          text: robostate refine -s scenes.jsonl --refiner noisy-oracle --oracle-noise 2 0.01 0.01 --trace-out traces.jsonl
"""


helps['eval'] = """
    short-summary: Score traces against the ground truth of their scenes.
    long-summary: >
        Reports ADD-AUC and PCK@0.2 (x100), base translation and rotation errors, joint errors,
        the median ADD per iteration and the summed training loss.
    examples:
        - name: Evaluate traces and save the report.
          text: robostate eval --scenes scenes.jsonl --traces traces.jsonl --add-thresh 0.1 --out report.json

        - name: Show a table and average pose errors over the best half of the scenes.
          text: robostate eval -s scenes.jsonl -t traces.jsonl --top-fraction 0.5 -o table
"""


helps['overlay'] = """
    short-summary: Draw the traced states of one scene as an SVG overlay.
    examples:
        - name: Draw scene 3 and dump the final masks.
          text: robostate overlay --scene-id 3 --traces traces.jsonl --out scene3.svg --mask-dir masks
"""


helps['sweep-iters'] = """
    short-summary: ADD-AUC for every pair of refiner quality proxy and test iteration count.
    long-summary: >
        The step fraction of the noisy oracle stands in for how many iterations a refiner was
        trained with; a smaller fraction behaves like a refiner that needs more test iterations.
    examples:
        - name: Sweep three step fractions over five iteration counts.
          text: robostate sweep-iters -s scenes.jsonl --k-train-proxy 0.25 0.5 1 --k-test 1 2 3 5 10 -o table
"""


helps['robot'] = """
    short-summary: Inspect robot descriptions.
"""

helps['robot show'] = """
    short-summary: Show the parts, joints and mid-range configuration of a robot.
    examples:
        - name: Parts of the Panda arm ranked by volume.
          text: robostate robot show --robot panda -o table
"""

helps['robot list'] = """
    short-summary: List the robot descriptions shipped with robostate.
"""
