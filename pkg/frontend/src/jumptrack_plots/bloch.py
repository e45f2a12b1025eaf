"""Bloch-sphere trajectory figures from trajectory CSVs."""

from __future__ import annotations

import argparse
import warnings

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import load_trajectories


def _sphere_wireframe(ax):
    u = np.linspace(0, 2 * np.pi, 25)
    v = np.linspace(0, np.pi, 13)
    x = np.outer(np.cos(u), np.sin(v))
    y = np.outer(np.sin(u), np.sin(v))
    z = np.outer(np.ones_like(u), np.cos(v))
    ax.plot_wireframe(x, y, z, color="lightgray", linewidth=0.4, alpha=0.6)


def _segments(rows):
    """Split one trajectory's rows into continuous no-jump segments.

    A change in jumps_so_far marks a detection between two samples; the
    polyline is broken there so no line is drawn across the discontinuity.
    """
    seg = []
    last_jumps = None
    for r in rows:
        nj = int(r["jumps_so_far"])
        point = (float(r["bloch_x"]), float(r["bloch_y"]), float(r["bloch_z"]))
        if last_jumps is not None and nj != last_jumps:
            if len(seg) >= 1:
                yield seg
            seg = []
        seg.append(point)
        last_jumps = nj
    if seg:
        yield seg


def render_bloch(trajectory_csv: str, out_image: str | None = None, title: str | None = None):
    """Render trajectories on the unit sphere, one color per trajectory.

    Returns the matplotlib Figure; writes it to out_image when given
    (PNG or SVG by extension).
    """
    rows = load_trajectories(trajectory_csv)

    fig = plt.figure(figsize=(7, 7))
    ax = fig.add_subplot(projection="3d")
    _sphere_wireframe(ax)

    if not rows:
        warnings.warn(f"{trajectory_csv}: no data rows, rendering bare sphere")
    else:
        by_traj: dict[str, list[dict]] = {}
        for r in rows:
            by_traj.setdefault(r["trajectory_id"], []).append(r)
        cmap = plt.get_cmap("tab10")
        for i, (tid, traj_rows) in enumerate(sorted(by_traj.items(), key=lambda kv: int(kv[0]))):
            color = cmap(i % 10)
            for seg in _segments(traj_rows):
                pts = np.array(seg)
                if len(pts) == 1:
                    ax.plot(pts[:, 0], pts[:, 1], pts[:, 2], ".", color=color, markersize=2)
                else:
                    ax.plot(pts[:, 0], pts[:, 1], pts[:, 2], "-", color=color, linewidth=0.8)

    ax.set_xlim(-1, 1)
    ax.set_ylim(-1, 1)
    ax.set_zlim(-1, 1)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    ax.set_box_aspect((1, 1, 1))
    ax.view_init(elev=20, azim=-60)
    if title:
        ax.set_title(title)
    if out_image:
        fig.savefig(out_image, dpi=150)
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-bloch", description="Bloch-sphere figure from a jumptrack trajectory CSV"
    )
    parser.add_argument("csv", help="trajectory CSV from `jumptrack simulate`")
    parser.add_argument("out", help="output image (png or svg)")
    parser.add_argument("--title")
    args = parser.parse_args(argv)
    render_bloch(args.csv, args.out, title=args.title)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
