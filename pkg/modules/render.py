"""SVG drawing of the union graph with every listed path in its own colour."""
from collections import Counter
from typing import Dict, List, Sequence, Set

import networkx as nx

from modules.plane_graph import EmbeddingData
from modules.testkit import MissingCoordinates

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#e377c2", "#8c564b", "#bcbd22")


class SVG:
    def __init__(self):
        self.svg = ""

    def header(self, width, height):
        self.svg += (
            '<?xml version="1.0" standalone="no"?>\n'
            f'<svg version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" '
            'xmlns="http://www.w3.org/2000/svg">\n'
        )

    def group_start(self, id, title=None):
        self.svg += f'<g id="{id}">\n'
        if title:
            self.svg += f"<title>{title}</title>\n"

    def group_end(self):
        self.svg += "</g>\n"

    def line(self, x1, y1, x2, y2, stroke, width, extra=""):
        self.svg += (f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                     f'stroke="{stroke}" stroke-width="{width:.2f}" {extra}/>\n')

    def circle(self, x, y, r, fill):
        self.svg += f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="{fill}"/>\n'

    def get_svg(self):
        return f"{self.svg}</svg>\n"


def cycle_edges(data: EmbeddingData, edge_ids: Set[int]) -> Set[int]:
    """Edges of the given subgraph that lie on one of its cycles."""
    ends = Counter(frozenset((data.edges[e].u, data.edges[e].v)) for e in edge_ids)
    g = nx.Graph()
    g.add_edges_from((data.edges[e].u, data.edges[e].v) for e in edge_ids)
    bridges = {frozenset(b) for b in nx.bridges(g)}
    return {e for e in edge_ids
            if ends[frozenset((data.edges[e].u, data.edges[e].v))] > 1
            or frozenset((data.edges[e].u, data.edges[e].v)) not in bridges}


def render(data: EmbeddingData, paths: Dict[int, Sequence[int]], size: int = 800, margin: int = 30) -> str:
    """Grey union graph, one coloured stroke per path.

    A stroke is bold where two or more paths share the edge or where the edge closes a cycle
    of the path union.
    """
    if data.coordinates is None:
        raise MissingCoordinates("the instance has no vertex coordinates to draw")
    xs = [float(x) for x, _ in data.coordinates]
    ys = [float(y) for _, y in data.coordinates]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (size - 2 * margin) / span

    def at(v: int):
        return margin + (xs[v] - min(xs)) * scale, margin + (max(ys) - ys[v]) * scale

    users: Dict[int, List[int]] = {}
    for pair, darts in paths.items():
        for d in darts:
            users.setdefault(d >> 1, []).append(pair)
    on_cycle = cycle_edges(data, set(users))

    svg = SVG()
    svg.header(size, size)
    svg.group_start("union")
    for edge in data.edges:
        (x1, y1), (x2, y2) = at(edge.u), at(edge.v)
        svg.line(x1, y1, x2, y2, "#bbbbbb", 1.0)
    svg.group_end()

    for pair in sorted(paths):
        colour = PALETTE[pair % len(PALETTE)]
        svg.group_start(f"path-{pair}", f"pair {pair}")
        for d in paths[pair]:
            edge = data.edges[d >> 1]
            (x1, y1), (x2, y2) = at(edge.u), at(edge.v)
            bold = len(users[d >> 1]) >= 2 or d >> 1 in on_cycle
            svg.line(x1, y1, x2, y2, colour, 5.0 if bold else 2.5, 'stroke-linecap="round" opacity="0.8"')
        svg.group_end()

    svg.group_start("vertices")
    for v in range(data.vertex_count):
        x, y = at(v)
        svg.circle(x, y, 2.5, "#333333")
    svg.group_end()
    return svg.get_svg()
