"""Entropy-vs-drive figures from entropy-curve CSVs."""

from __future__ import annotations

import argparse

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .io import load_entropy_curve

_FAMILY_STYLE = {
    "real": {"color": "tab:blue"},
    "imag-large": {"color": "tab:orange"},
    "imag-small": {"color": "tab:green"},
}


def render_entropy(curve_csv: str, out_image: str | None = None, title: str | None = None):
    """One entropy line per mu family over omega/gamma; returns the Figure."""
    rows = load_entropy_curve(curve_csv)

    by_family: dict[str, list[tuple[float, float]]] = {}
    for r in rows:
        by_family.setdefault(r["family"], []).append(
            (float(r["omega_over_gamma"]), float(r["entropy_bits"]))
        )

    fig, ax = plt.subplots(figsize=(6, 4))
    for family in sorted(by_family):
        pts = sorted(by_family[family])
        ax.plot(
            [q[0] for q in pts],
            [q[1] for q in pts],
            label=family,
            **_FAMILY_STYLE.get(family, {}),
        )
    ax.set_xlabel(r"$\Omega / \gamma$")
    ax.set_ylabel("tracking entropy [bits]")
    ax.set_ylim(0.0, 1.05)
    if by_family:
        ax.legend(title="scheme family")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    if out_image:
        fig.savefig(out_image, dpi=150)
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-entropy", description="Entropy curves from a jumptrack entropy-curve CSV"
    )
    parser.add_argument("csv", help="CSV from `jumptrack entropy-curve`")
    parser.add_argument("out", help="output image (png or svg)")
    parser.add_argument("--title")
    args = parser.parse_args(argv)
    render_entropy(args.csv, args.out, title=args.title)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
