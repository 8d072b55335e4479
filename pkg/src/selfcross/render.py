"""SVG drawings of curve diagrams.

The map is made drawable by a barycentric (Tutte) embedding of an auxiliary
planar graph. Each crossing becomes the centre of a small octagon whose
rim alternates between corner nodes (one per sector) and port nodes (one
per dart). Each arc is subdivided twice between its two ports, and every
face except the largest gets a centre node joined to its whole boundary.
The result is an internally triangulated disc with no chords, so pinning
the largest face to a circle gives a straight-line planar embedding. The
curve is then the closed path centre -> port -> two subdivision nodes ->
port -> centre ..., smoothed with a low-tension cardinal spline.
"""

from __future__ import annotations

import math

import numpy as np

from .planar_map import CurveDiagram

_SIZE = 400.0
_TENSION = 0.25


def _graph(diagram: CurveDiagram):
    nodes: dict[tuple, int] = {}

    def node(key):
        if key not in nodes:
            nodes[key] = len(nodes)
        return nodes[key]

    edges: set[tuple[int, int]] = set()

    def link(a, b):
        edges.add((min(a, b), max(a, b)))

    for v, rot in diagram.rotation.items():
        c = node(("centre", v))
        for i, d in enumerate(rot):
            p = node(("port", d))
            link(c, p)
            link(p, node(("corner", v, i)))
            link(p, node(("corner", v, (i - 1) % 4)))
    for k in range(diagram.num_edges):
        a, b = node(("sub", k, 0)), node(("sub", k, 1))
        link(node(("port", 2 * k)), a)
        link(a, b)
        link(b, node(("port", 2 * k + 1)))

    cycles = []
    for face in diagram.faces:
        cyc = []
        for d in face.darts:
            k = d // 2
            subs = [("sub", k, 0), ("sub", k, 1)]
            if d % 2:
                subs.reverse()
            mate = d ^ 1
            v, i = diagram.dart_slot[mate]
            cyc += [nodes[("port", d)]] + [nodes[s] for s in subs]
            cyc += [nodes[("port", mate)], nodes[("corner", v, i)]]
        cycles.append(cyc)
    return nodes, edges, cycles


def _layout(diagram: CurveDiagram) -> dict[tuple, np.ndarray]:
    nodes, edges, cycles = _graph(diagram)
    outer = max(range(len(cycles)), key=lambda f: (len(cycles[f]), -f))
    for f, cyc in enumerate(cycles):
        if f != outer:
            c = len(nodes)
            nodes[("face", f)] = c
            for u in cyc:
                edges.add((u, c))
    N = len(nodes)
    fixed = {}
    ring = cycles[outer]
    for j, u in enumerate(ring):
        t = 2 * math.pi * j / len(ring)
        fixed[u] = np.array([math.cos(t), -math.sin(t)])
    adj: list[list[int]] = [[] for _ in range(N)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    free = [u for u in range(N) if u not in fixed]
    index = {u: i for i, u in enumerate(free)}
    A = np.zeros((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for u in free:
        i = index[u]
        A[i, i] = len(adj[u])
        for w in adj[u]:
            if w in fixed:
                rhs[i] += fixed[w]
            else:
                A[i, index[w]] -= 1
    sol = np.linalg.solve(A, rhs) if free else np.zeros((0, 2))
    pos = {}
    for key, u in nodes.items():
        pos[key] = fixed[u] if u in fixed else sol[index[u]]
    return pos


def curve_points(diagram: CurveDiagram) -> list[tuple[float, float]]:
    """Control polygon of the drawn curve in unit-disc coordinates."""
    pos = _layout(diagram)
    m = diagram.num_edges
    pts = []
    for k in range(m):
        v = diagram.dart_vertex(2 * k)
        pts.append(pos[("centre", v)])
        pts.append(pos[("port", 2 * k)])
        pts.append(pos[("sub", k, 0)])
        pts.append(pos[("sub", k, 1)])
        pts.append(pos[("port", 2 * k + 1)])
    return [(float(p[0]), float(p[1])) for p in pts]


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _to_svg(p):
    half = _SIZE / 2
    return half + 0.9 * half * p[0], half + 0.9 * half * p[1]


def spline_path(points) -> str:
    """Closed cardinal spline through ``points`` as SVG path data."""
    P = [_to_svg(p) for p in points]
    n = len(P)
    parts = [f"M {_fmt(P[0][0])} {_fmt(P[0][1])}"]
    for i in range(n):
        p0, p1, p2, p3 = P[i - 1], P[i], P[(i + 1) % n], P[(i + 2) % n]
        c1 = (p1[0] + _TENSION * (p2[0] - p0[0]) / 2, p1[1] + _TENSION * (p2[1] - p0[1]) / 2)
        c2 = (p2[0] - _TENSION * (p3[0] - p1[0]) / 2, p2[1] - _TENSION * (p3[1] - p1[1]) / 2)
        parts.append(f"C {_fmt(c1[0])} {_fmt(c1[1])} {_fmt(c2[0])} {_fmt(c2[1])} "
                     f"{_fmt(p2[0])} {_fmt(p2[1])}")
    parts.append("Z")
    return " ".join(parts)


def render_svg(diagram: CurveDiagram) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(_SIZE)}" '
            f'height="{int(_SIZE)}" viewBox="0 0 {int(_SIZE)} {int(_SIZE)}">')
    style = 'fill="none" stroke="black" stroke-width="2"'
    if diagram.n == 0:
        h = _SIZE / 2
        body = (f'<ellipse id="curve" cx="{_fmt(h)}" cy="{_fmt(h)}" rx="{_fmt(0.8 * h)}" '
                f'ry="{_fmt(0.5 * h)}" {style}/>')
        return "\n".join([head, body, "</svg>", ""])
    pos = _layout(diagram)
    lines = [head, f'<path id="curve" d="{spline_path(curve_points(diagram))}" {style}/>']
    for v in diagram.vertices:
        x, y = _to_svg(pos[("centre", v)])
        lines.append(f'<circle class="crossing" cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" '
                     f'fill="black"><title>crossing {v}</title></circle>')
    lines += ["</svg>", ""]
    return "\n".join(lines)
