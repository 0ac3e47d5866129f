"""Grid immersion of rigid quadrangulations, with SVG and JSON output."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .maps import E, N, S, W, MapError, QuadMap

_STEP = {E: (1, 0), N: (0, 1), W: (-1, 0), S: (0, -1)}
# lower-left offset of corner c (0 NE, 1 NW, 2 SW, 3 SE)
_CORNER = {0: (1, 1), 1: (0, 1), 2: (0, 0), 3: (1, 0)}


@dataclass(frozen=True)
class GridImmersion:
    vertices: tuple        # vertex id -> (x, y)
    faces: tuple           # face -> lower-left corner of its unit cell
    overlaps: tuple        # sorted ((x, y), count) for covered cells
    boundary: tuple        # contour points, first point repeated at the end
    root_edge: tuple       # ((x, y), (x, y))
    open_edges: tuple      # segments on open sides
    point: bool = False

    def to_dict(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "faces": [list(c) for c in self.faces],
            "overlaps": [[list(c), k] for c, k in self.overlaps],
        }


def _edge_ends(cell, d):
    """End points of side ``d`` of a cell, in boundary-walk order."""
    x, y = cell
    a, b = _CORNER[d], _CORNER[(d - 1) % 4]
    return (x + a[0], y + a[1]), (x + b[0], y + b[1])


def immerse(m: QuadMap) -> GridImmersion:
    """Place every face on a unit cell.

    A closed base runs along the x-axis from the origin with the map above;
    an open base runs along the x-axis from the origin with the map below.
    """
    if m.point:
        return GridImmersion(((0, 0),), (), (), ((0, 0),), ((0, 0), (0, 0)), (), point=True)
    p = m.base_length()
    start = (p - 1, 0) if m.closed_base else (0, -1)
    cells = [None] * len(m.nbr)
    cells[0] = start
    queue = deque([0])
    while queue:
        f = queue.popleft()
        x, y = cells[f]
        for d, g in enumerate(m.nbr[f]):
            if g < 0:
                continue
            dx, dy = _STEP[d]
            want = (x + dx, y + dy)
            if cells[g] is None:
                cells[g] = want
                queue.append(g)
            elif cells[g] != want:
                raise MapError("face placement conflict; the map is not flat")
    verts = [None] * m.num_vertices
    for f, cell in enumerate(cells):
        for c, (ox, oy) in _CORNER.items():
            v = m.vertex_of(f, c)
            xy = (cell[0] + ox, cell[1] + oy)
            if verts[v] is None:
                verts[v] = xy
            elif verts[v] != xy:
                raise MapError("vertex placement conflict; the map is not flat")
    overlaps = tuple(sorted(Counter(cells).items()))
    contour = [_edge_ends(cells[f], d)[0] for f, d, _ in m.boundary]
    contour.append(contour[0])
    opened = tuple(_edge_ends(cells[f], d) for f, d, _ in m.boundary if (f, d) in m.open_edges)
    return GridImmersion(tuple(verts), tuple(cells), overlaps, tuple(contour),
                         _edge_ends(cells[0], m.root_side), opened)


def shade(count: int) -> str:
    """Gray for a cell covered ``count`` times; darker with more overlap."""
    level = round(40 + 180 * 0.7 ** (count - 1))
    return f"#{level:02x}{level:02x}{level:02x}"


def to_svg(g: GridImmersion, unit: int = 20, margin: int = 10) -> str:
    pts = list(g.vertices) + list(g.boundary)
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0) * unit + 2 * margin
    height = (y1 - min(ys)) * unit + 2 * margin

    def px(pt):
        return f"{(pt[0] - x0) * unit + margin},{(y1 - pt[1]) * unit + margin}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">',
    ]
    if g.point:
        out.append(f'<circle cx="{margin}" cy="{margin}" r="4" fill="black"/>')
        out.append("</svg>")
        return "\n".join(out) + "\n"
    count = dict(g.overlaps)
    for cell in g.faces:
        x, y = cell
        out.append(f'<rect x="{(x - x0) * unit + margin}" y="{(y1 - y - 1) * unit + margin}" '
                   f'width="{unit}" height="{unit}" fill="{shade(count[cell])}" '
                   'stroke="#888888" stroke-width="0.5"/>')
    line = " ".join(px(pt) for pt in g.boundary)
    out.append(f'<polyline points="{line}" fill="none" stroke="black" stroke-width="2"/>')
    for a, b in g.open_edges:
        out.append(f'<line x1="{px(a).split(",")[0]}" y1="{px(a).split(",")[1]}" '
                   f'x2="{px(b).split(",")[0]}" y2="{px(b).split(",")[1]}" '
                   'stroke="#3060c0" stroke-width="2" stroke-dasharray="4 3"/>')
    (ax, ay), (bx, by) = (px(q).split(",") for q in g.root_edge)
    out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="#d02020" stroke-width="4"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
