"""Static figure generation for the CLI: zero sets and growth envelopes.

Everything renders through the Agg backend into SVG text or files, so the
CLI stays headless and the output is a plain artifact.
"""

from __future__ import annotations

import io
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

matplotlib.rcParams["svg.hashsalt"] = "slicecalc"


def zero_set_figure(zs, title: str = "zero set"):
    """Scatter of the zero set in the (alpha, beta) half plane.

    Real zeros sit on the axis, isolated points and spheres above it; the
    exceptional half slice, when present, is drawn as a vertical ray.
    """
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    if zs.real_zeros:
        ax.scatter([float(a) for a in zs.real_zeros], [0.0] * len(zs.real_zeros),
                   marker="x", color="tab:red", label="real")
    if zs.isolated_zeros:
        pts = []
        for x in zs.isolated_zeros:
            xf = x.to_float()
            alpha = xf.coeffs[0]
            beta = math.sqrt(max(xf.imag_part().norm(), 0.0))
            pts.append((alpha, beta))
        ax.scatter([p[0] for p in pts], [p[1] for p in pts],
                   marker="o", color="tab:blue", label="isolated")
    if zs.spherical_zeros:
        ax.scatter([float(a) for a, _ in zs.spherical_zeros],
                   [float(b) for _, b in zs.spherical_zeros],
                   marker="s", facecolors="none", edgecolors="tab:green",
                   s=90, label="sphere")
    if zs.exceptional_half_slice is not None:
        ax.axvline(0.0, color="tab:purple", linestyle=":",
                   label="exceptional half slice")
    ax.axhline(0.0, color="gray", linewidth=0.6)
    ax.set_xlabel("alpha")
    ax.set_ylabel("beta")
    ax.set_title(title)
    if any((zs.real_zeros, zs.isolated_zeros, zs.spherical_zeros,
            zs.exceptional_half_slice)):
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def bound_figure(radii, values, bound, title: str = "growth bound"):
    """|f| samples against the certified envelope C (1 + r^m)."""
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.scatter(radii, values, s=8, color="tab:blue", label="|f(x)|")
    rs = sorted(radii)
    if rs:
        line = [bound.C * (1.0 + r ** bound.m) for r in rs]
        ax.plot(rs, line, color="tab:orange",
                label=f"C(1+r^m), C={bound.C:g}, m={bound.m}")
    ax.axvline(bound.R, color="gray", linestyle=":", linewidth=0.8, label=f"R={bound.R:g}")
    ax.set_xlabel("|x|")
    ax.set_ylabel("magnitude")
    ax.set_yscale("log")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def figure_svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg")
    plt.close(fig)
    return buf.getvalue()


def save_figure(fig, path: str):
    fig.savefig(path, format="svg")
    plt.close(fig)
