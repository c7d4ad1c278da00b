"""Deterministic SVG rendering of 2D environments, paths, and cut regions."""

from __future__ import annotations

from .errors import RenderError

_PATH_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                "#8c564b", "#e377c2")
_CELL = 10


def render_svg(env, paths=(), regions=()):
    """Render a 2D environment to SVG bytes.

    paths is a sequence of (coords, length) pairs drawn as polylines colored
    by rank; regions is an iterable of blocked-coordinate sets drawn hatched.
    Output is byte-identical for identical input.
    """
    if env.ndim != 2:
        raise RenderError("SVG rendering supports 2D environments only")
    width, height = env.dims
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width * _CELL}" height="{height * _CELL + 20 * (len(paths) + 1)}" '
        f'viewBox="0 0 {width * _CELL} {height * _CELL + 20 * (len(paths) + 1)}">',
        '<defs><pattern id="hatch" width="4" height="4" '
        'patternUnits="userSpaceOnUse" patternTransform="rotate(45)">'
        '<line x1="0" y1="0" x2="0" y2="4" stroke="#cc3333" stroke-width="2"/>'
        "</pattern></defs>",
    ]
    for y in range(height):
        for x in range(width):
            if env.obstacles[x, y]:
                fill = "#000000"
            else:
                level = int(round(255 * (1.0 - float(env.rho[x, y]))))
                fill = f"#{level:02x}{level:02x}{level:02x}"
            lines.append(
                f'<rect x="{x * _CELL}" y="{y * _CELL}" '
                f'width="{_CELL}" height="{_CELL}" fill="{fill}"/>'
            )
    for region in regions:
        for x, y in sorted(region):
            lines.append(
                f'<rect x="{x * _CELL}" y="{y * _CELL}" '
                f'width="{_CELL}" height="{_CELL}" fill="url(#hatch)"/>'
            )
    for rank, (coords, _length) in enumerate(paths):
        color = _PATH_COLORS[rank % len(_PATH_COLORS)]
        points = " ".join(
            f"{x * _CELL + _CELL / 2:.1f},{y * _CELL + _CELL / 2:.1f}"
            for x, y in coords
        )
        lines.append(
            f'<polyline points="{points}" fill="none" '
            f'stroke="{color}" stroke-width="2"/>'
        )
    for rank, (_coords, length) in enumerate(paths):
        color = _PATH_COLORS[rank % len(_PATH_COLORS)]
        lines.append(
            f'<text x="4" y="{height * _CELL + 16 + 20 * rank}" '
            f'font-family="monospace" font-size="12" fill="{color}">'
            f"path {rank + 1}: length {length:.4f}</text>"
        )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
