# Copyright 2026 The bcattack Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Draws a scene JSON written by `bcattack scene` on the Bloch ball.

Usage: plot_scene.py SCENE.json [OUT.png]
"""

import json
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

COLORS = {"bit0": "tab:blue", "bit1": "tab:red"}


def draw_sphere(ax):
    u, v = np.mgrid[0 : 2 * np.pi : 40j, 0 : np.pi : 20j]
    ax.plot_wireframe(np.cos(u) * np.sin(v), np.sin(u) * np.sin(v), np.cos(v), color="0.85", linewidth=0.4)


def draw_points(ax, points, color, labels=None, marker="o"):
    for k, p in enumerate(points):
        ax.scatter(*p, color=color, marker=marker, s=30)
        if labels:
            ax.text(*(1.08 * np.asarray(p)), labels[k], color=color, fontsize=8)


def main(argv):
    if len(argv) not in (2, 3):
        sys.exit(__doc__)
    with open(argv[1]) as f:
        scene = json.load(f)
    out = argv[2] if len(argv) == 3 else argv[1].rsplit(".", 1)[0] + ".png"

    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    draw_sphere(ax)
    for bit, points in scene["honest"].items():
        draw_points(ax, points, COLORS[bit], scene["labels"][bit])
        if len(points) == 2:
            ax.plot(*np.transpose(points), color=COLORS[bit], linewidth=1.5)
    for bit, points in scene["decompositions"].items():
        draw_points(ax, points, COLORS[bit], marker="x")
        for p in points:
            ax.plot(*np.transpose([scene["rho_opt"], p]), color=COLORS[bit], linestyle=":", linewidth=1)
    if scene.get("family"):
        ends = [scene["family"]["from"], scene["family"]["to"]]
        ax.plot(*np.transpose(ends), color="tab:green", linewidth=3, alpha=0.6, label="optimal family")
    ax.scatter(*scene["rho_opt"], color="black", s=50, label="optimal rho")
    ax.set_title(f"{scene['name']} ({scene['case_tag']})")
    ax.set_box_aspect((1, 1, 1))
    ax.legend(loc="lower left")
    fig.savefig(out, dpi=120, bbox_inches="tight")
    print(out)


if __name__ == "__main__":
    main(sys.argv)
