"""Acceptance check for the plotting layer (criterion 13)."""

import numpy as np
from matplotlib.lines import Line2D

from jumptrack_plots import render_bloch, render_entropy


def test_criterion_13_figures(entropy_csv, adaptive_csv, fixed_csv, tmp_path):
    fig = render_entropy(str(entropy_csv), str(tmp_path / "entropy.png"))
    ax = fig.axes[0]
    lines = [ln for ln in ax.get_lines() if isinstance(ln, Line2D)]
    labels = sorted(ln.get_label() for ln in lines)
    ok = labels == ["imag-large", "imag-small", "real"]
    real = next(ln for ln in lines if ln.get_label() == "real")
    ok = ok and np.allclose(real.get_ydata(), 1.0, atol=1e-9)

    fig_a = render_bloch(str(adaptive_csv), str(tmp_path / "adaptive.png"))
    pts = np.vstack([
        np.column_stack(ln.get_data_3d())
        for ln in fig_a.axes[0].get_lines()
        if len(ln.get_data_3d()[0]) > 0
    ])
    centers = []
    for q in pts:
        if all(np.linalg.norm(q - c) > 1e-3 for c in centers):
            centers.append(q)
    ok = ok and len(centers) == 2

    fig_f = render_bloch(str(fixed_csv), str(tmp_path / "fixed.png"))
    loops = [ln for ln in fig_f.axes[0].get_lines() if len(ln.get_data_3d()[0]) > 1]
    ok = ok and len(loops) >= 50

    print(
        f"[{'PASS' if ok else 'FAIL'}] criterion 13: entropy figure has 3 curves "
        f"(real flat at 1.0), adaptive figure has {len(centers)} clusters, "
        f"fixed figure has {len(loops)} loops"
    )
    assert ok
