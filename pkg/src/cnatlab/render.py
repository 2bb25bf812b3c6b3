"""Text and SVG drawings of dot grids.

The ASCII form puts one character per cell on even lines, with connector
characters between cells and on the odd lines in between. One of the two
CNATs of 321::

    ●─●─●
    │ │
    │ ● ·
    │
    ● · ·

Only ``●`` marks a dot, so :func:`parse_ascii` recovers the dot set from any
drawing produced here.
"""

from __future__ import annotations

from typing import Sequence

from .cnat import Cell, DotGrid

__all__ = ["render_ascii", "parse_ascii", "render_svg", "render_svg_sheet", "render"]

DOT, EMPTY = "●", "·"
LEAF_COLOUR = "#2a5bd7"
INTERNAL_COLOUR = "#111111"
STEP = 24
MARGIN = 18


def _spans(g: DotGrid):
    rows: dict[int, tuple[int, int]] = {}
    cols: dict[int, tuple[int, int]] = {}
    for c, r in g.dots:
        lo, hi = rows.get(r, (c, c))
        rows[r] = (min(lo, c), max(hi, c))
        lo, hi = cols.get(c, (r, r))
        cols[c] = (min(lo, r), max(hi, r))
    return rows, cols


def render_ascii(g: DotGrid) -> str:
    rows, cols = _spans(g)
    out = []
    for r in range(1, g.rows + 1):
        line = []
        rlo, rhi = rows.get(r, (0, 0))
        for c in range(1, g.cols + 1):
            clo, chi = cols.get(c, (0, 0))
            if (c, r) in g.dots:
                ch = DOT
            else:
                h = rlo < c < rhi
                v = clo < r < chi
                ch = "┼" if h and v else "─" if h else "│" if v else EMPTY
            line.append(ch)
            if c < g.cols:
                line.append("─" if rlo <= c and c + 1 <= rhi else " ")
        out.append("".join(line))
        if r < g.rows:
            gap = []
            for c in range(1, g.cols + 1):
                clo, chi = cols.get(c, (0, 0))
                gap.append("│" if clo <= r < chi else " ")
            out.append(" ".join(gap).rstrip())
    return "\n".join(out) + "\n"


def parse_ascii(text: str) -> DotGrid:
    lines = text.rstrip("\n").split("\n")
    cell_lines = lines[0::2]
    width = max(len(x) for x in cell_lines)
    cols, rows = (width + 1) // 2, len(cell_lines)
    dots = {(i // 2 + 1, r) for r, line in enumerate(cell_lines, 1)
            for i, ch in enumerate(line) if ch == DOT and i % 2 == 0}
    return DotGrid(cols, rows, frozenset(dots))


def _leaf_set(g: DotGrid) -> set[Cell]:
    low: dict[int, int] = {}
    right: dict[int, int] = {}
    for c, r in g.dots:
        low[c] = max(low.get(c, 0), r)
        right[r] = max(right.get(r, 0), c)
    return {(c, r) for c, r in g.dots if low[c] == r and right[r] == c}


def _svg_group(g: DotGrid, labels: Sequence[int] | None, ox: float, oy: float) -> list[str]:
    top = 14 if labels else 0

    def xy(c: int, r: int) -> tuple[float, float]:
        return ox + MARGIN + (c - 1) * STEP, oy + MARGIN + top + (r - 1) * STEP

    parts = ['<g class="cnat">']
    x0, y0 = xy(1, 1)
    w, h = (g.cols - 1) * STEP, (g.rows - 1) * STEP
    for c in range(1, g.cols + 1):
        x, _ = xy(c, 1)
        parts.append(f'<line x1="{x}" y1="{y0}" x2="{x}" y2="{y0 + h}" class="grid"/>')
    for r in range(1, g.rows + 1):
        _, y = xy(1, r)
        parts.append(f'<line x1="{x0}" y1="{y}" x2="{x0 + w}" y2="{y}" class="grid"/>')
    rows, cols = _spans(g)
    for r, (lo, hi) in sorted(rows.items()):
        if lo < hi:
            (xa, y), (xb, _) = xy(lo, r), xy(hi, r)
            parts.append(f'<line x1="{xa}" y1="{y}" x2="{xb}" y2="{y}" class="edge"/>')
    for c, (lo, hi) in sorted(cols.items()):
        if lo < hi:
            (x, ya), (_, yb) = xy(c, lo), xy(c, hi)
            parts.append(f'<line x1="{x}" y1="{ya}" x2="{x}" y2="{yb}" class="edge"/>')
    leaves = _leaf_set(g)
    for c, r in sorted(g.dots, key=lambda d: (d[1], d[0])):
        x, y = xy(c, r)
        fill = LEAF_COLOUR if (c, r) in leaves else INTERNAL_COLOUR
        parts.append(f'<circle cx="{x}" cy="{y}" r="4" fill="{fill}"/>')
    for c, lab in enumerate(labels or (), 1):
        x, y = xy(c, 1)
        parts.append(f'<text x="{x}" y="{y - 10}" text-anchor="middle">{lab}</text>')
    parts.append("</g>")
    return parts


def _size(g: DotGrid, labels) -> tuple[int, int]:
    return (2 * MARGIN + (g.cols - 1) * STEP,
            2 * MARGIN + (g.rows - 1) * STEP + (14 if labels else 0))


_STYLE = ('<style>.grid{stroke:#d0d0d0;stroke-width:1}.edge{stroke:#111;stroke-width:2}'
          'text{font:11px sans-serif}</style>')


def render_svg(g: DotGrid, labels: Sequence[int] | None = None) -> str:
    w, h = _size(g, labels)
    body = _svg_group(g, labels, 0, 0)
    return "\n".join([f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
                      f'viewBox="0 0 {w} {h}">', _STYLE, *body, "</svg>"]) + "\n"


def render_svg_sheet(grids: Sequence[DotGrid], per_row: int = 6) -> str:
    """Several drawings tiled into one SVG document, left to right then down."""
    if not grids:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0"/>\n'
    cw = max(_size(g, None)[0] for g in grids)
    ch = max(_size(g, None)[1] for g in grids)
    body: list[str] = []
    for i, g in enumerate(grids):
        body += _svg_group(g, None, (i % per_row) * cw, (i // per_row) * ch)
    w = min(len(grids), per_row) * cw
    h = ((len(grids) - 1) // per_row + 1) * ch
    return "\n".join([f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
                      f'viewBox="0 0 {w} {h}">', _STYLE, *body, "</svg>"]) + "\n"


def render(g: DotGrid, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(g)
    if fmt == "svg":
        return render_svg(g)
    raise ValueError(f"unknown render format {fmt!r}")
