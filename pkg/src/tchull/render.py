"""Deterministic SVG drawings of an assembled hull."""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .geometry import l1_chain, wr_boundary_l2inf  # noqa: E402

_STYLE = {
    "svg.hashsalt": "tchull",
    "svg.fonttype": "none",
    "path.simplify": False,
}


def _extent(points, hull):
    vals = [float(v) for p in points for v in p]
    vals += [float(v) for c in hull.clusters for p in c.hull for v in p]
    top = max(vals, default=1.0)
    return top if top > 0 else 1.0


def _wr_outline(p, cfg):
    if cfg.is_l1:
        pieces = l1_chain(p, cfg).pieces
        return [(float(u[0]), float(u[1])) for u, _ in pieces] + \
            [(float(pieces[0][0][0]), float(pieces[0][0][1]))]
    ring = wr_boundary_l2inf(p).sample(32)
    return ring + ring[:1]


def render_svg(points, hull, cfg=None, wr=False, title=None) -> str:
    """SVG text showing both highways, the points, every cluster polygon
    and the highway links.  With ``wr`` the walking region of each point
    is outlined as well (needs ``cfg``)."""
    top = _extent(points, hull)
    pad = 0.05 * top
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(6, 6))
        ax.set_xlim(-pad, top + pad)
        ax.set_ylim(-pad, top + pad)
        ax.set_aspect("equal")
        ax.set_axis_off()
        ax.plot([0, top + pad], [0, 0], color="0.3", lw=1.5, zorder=1, gid="highway-HX")
        ax.plot([0, 0], [0, top + pad], color="0.3", lw=1.5, zorder=1, gid="highway-HY")
        if wr and cfg is not None:
            for p in points:
                ring = _wr_outline(p, cfg)
                ax.plot([u for u, _ in ring], [v for _, v in ring],
                        color="tab:green", lw=0.4, alpha=0.6, zorder=2)
        for k, c in enumerate(hull.clusters):
            xs = [float(p[0]) for p in c.hull]
            ys = [float(p[1]) for p in c.hull]
            if len(xs) >= 3:
                ax.fill(xs, ys, facecolor="tab:blue", alpha=0.2, edgecolor="tab:blue",
                        zorder=3, gid=f"cluster-{k}")
            elif len(xs) == 2:
                ax.plot(xs, ys, color="tab:blue", lw=1.2, zorder=3, gid=f"cluster-{k}")
        for k, (axis, (lo, hi)) in enumerate(hull.highway_links):
            lo, hi = float(lo), float(hi)
            if axis.value == "HX":
                ax.plot([lo, hi], [0, 0], color="tab:red", lw=3, zorder=4, gid=f"link-{k}")
            else:
                ax.plot([0, 0], [lo, hi], color="tab:red", lw=3, zorder=4, gid=f"link-{k}")
        if points:
            ax.scatter([float(p[0]) for p in points], [float(p[1]) for p in points],
                       s=10, color="black", zorder=5, gid="points")
        if title:
            ax.set_title(title)
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()


def ratio_figure(rows, path):
    """Plot time/(n log n) against n from bench rows and save to ``path``."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.plot([r["n"] for r in rows], [r["ratio_us"] for r in rows], marker="o")
        ax.set_xscale("log", base=2)
        ax.set_xlabel("n")
        ax.set_ylabel("time / (n log2 n)  [µs]")
        ax.set_ylim(bottom=0)
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
        plt.close(fig)
