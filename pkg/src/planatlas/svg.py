"""Headless SVG export of an embedding, optionally with a plan-trace overlay.

Output is deterministic: fixed element order (segments by list order, nodes by
embedding order) and fixed decimal formatting, so golden files are stable.
"""

from __future__ import annotations

from .embedding import EmbeddingSet
from .graph import ACTION
from .overlay import CLASS_ACTION, CLASS_CURRENT, CONSUMED, OverlayGeometry

NODE_COLORS = {
    CLASS_CURRENT: "#d62728",  # red: fluents of the current state
    CLASS_ACTION: "#2ca02c",  # green: actions
    "other": "#1f77b4",  # blue: everything else
}
SEGMENT_COLORS = {CONSUMED: "#d62728", "produced": "#000000"}


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def render_svg(
    e: EmbeddingSet,
    overlay: OverlayGeometry | None = None,
    size: int = 800,
    margin: float = 20.0,
    node_radius: float = 3.0,
    labels: bool = False,
) -> str:
    """Render the first two embedding axes as an SVG document string."""
    coords = e.coords[:, :2]
    mins = coords.min(axis=0)
    maxs = coords.max(axis=0)
    spans = maxs - mins
    live = spans > 0
    scale = ((size - 2 * margin) / spans[live].max()) if live.any() else 1.0

    def place(row) -> tuple[float, float]:
        x = margin + (row[0] - mins[0]) * scale
        # SVG y grows downward; flip so the layout reads like a plot.
        y = size - margin - (row[1] - mins[1]) * scale
        return x, y

    index = {nid: i for i, nid in enumerate(e.ids)}
    classes = overlay.node_classes if overlay is not None else {}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    if overlay is not None:
        for seg in overlay.segments:
            i = index.get(seg.from_node)
            j = index.get(seg.to_node)
            if i is None or j is None:
                continue
            x1, y1 = place(coords[i])
            x2, y2 = place(coords[j])
            color = SEGMENT_COLORS.get(seg.kind, "#000000")
            parts.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
    for nid, kind, row in zip(e.ids, e.kinds, coords):
        cls = classes.get(nid, CLASS_ACTION if kind == ACTION else "other")
        color = NODE_COLORS.get(cls, NODE_COLORS["other"])
        x, y = place(row)
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{node_radius}" fill="{color}">'
            f"<title>{nid}</title></circle>"
        )
        if labels:
            parts.append(
                f'<text x="{_fmt(x + node_radius + 1)}" y="{_fmt(y)}" '
                f'font-size="8">{nid}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
