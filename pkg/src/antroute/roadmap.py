"""Roadmap environments: random connected city graphs, persistence, features.

A roadmap is an undirected geometric graph of cities placed in a rectangle.
Edges connect cities within a connection radius and carry Euclidean weights;
if the radius leaves the graph disconnected, the nearest cross-component
pairs are bridged until it is connected. Two scalar features summarize an
environment: node density (cities per 200 square units) and the standard
deviation of each city's shortest incident road.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

Edge = tuple[int, int]


class RoadmapParseError(ValueError):
    """A roadmap file is malformed; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnsupportedVersionError(RoadmapParseError):
    """The file declares a format version this reader does not know."""


def edge_key(i: int, j: int) -> Edge:
    """Normalize an undirected edge to (min, max) order."""
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class City:
    id: int
    x: float
    y: float


@dataclass(frozen=True)
class RoadmapFeatures:
    node_density: float
    min_arc_stddev: float


@dataclass
class RoadmapGraph:
    """Weighted undirected city graph with query endpoints.

    ``edges`` maps normalized (i, j) pairs to Euclidean weights. ``source``
    and ``destination`` are the shortest-path query endpoints.
    """

    cities: list[City]
    edges: dict[Edge, float]
    area_width: float
    area_height: float
    source: int
    destination: int

    @cached_property
    def neighbors(self) -> dict[int, tuple[tuple[int, float, Edge], ...]]:
        """Adjacency as id -> ((neighbor, weight, edge_key), ...), neighbors ascending."""
        adj: dict[int, list[tuple[int, float, Edge]]] = {c.id: [] for c in self.cities}
        for (i, j), w in self.edges.items():
            adj[i].append((j, w, (i, j)))
            adj[j].append((i, w, (i, j)))
        return {u: tuple(sorted(vs)) for u, vs in adj.items()}


def _distance(a: City, b: City) -> float:
    return math.dist((a.x, a.y), (b.x, b.y))


def is_connected(g: RoadmapGraph) -> bool:
    """Breadth-first reachability check from city 0."""
    if not g.cities:
        return False
    seen = {0}
    frontier = [0]
    adj = g.neighbors
    while frontier:
        nxt = []
        for u in frontier:
            for v, _, _ in adj[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return len(seen) == len(g.cities)


def _components(n: int, edges: dict[Edge, float]) -> list[set[int]]:
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    comps: list[set[int]] = []
    unseen = set(range(n))
    while unseen:
        start = min(unseen)
        comp = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in comp:
                        comp.add(v)
                        nxt.append(v)
            frontier = nxt
        comps.append(comp)
        unseen -= comp
    return comps


def generate_roadmap(
    n: int,
    width: float,
    height: float,
    connect_radius: float,
    seed: int,
) -> RoadmapGraph:
    """Generate a connected random roadmap.

    Cities are placed uniformly at random in the rectangle; all pairs within
    ``connect_radius`` are joined. Disconnected results are repaired by
    repeatedly adding the shortest edge between two components. The source is
    the city nearest (0, 0) and the destination the city nearest
    (width, height). Identical arguments produce an identical graph.
    """
    if n < 2:
        raise ValueError(f"need at least 2 cities, got {n}")
    if width <= 0 or height <= 0:
        raise ValueError(f"degenerate placement rectangle {width}x{height}")
    if connect_radius <= 0:
        raise ValueError(f"connect_radius must be positive, got {connect_radius}")

    rng = np.random.default_rng(seed)
    xs = rng.uniform(0.0, width, n)
    ys = rng.uniform(0.0, height, n)
    cities = [City(i, float(xs[i]), float(ys[i])) for i in range(n)]

    edges: dict[Edge, float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = _distance(cities[i], cities[j])
            if w <= connect_radius:
                edges[(i, j)] = w

    comps = _components(n, edges)
    while len(comps) > 1:
        # shortest bridge between any two components; ties -> smallest (i, j)
        best: tuple[float, int, int] | None = None
        for ci in range(len(comps)):
            for cj in range(ci + 1, len(comps)):
                for i in sorted(comps[ci]):
                    for j in sorted(comps[cj]):
                        a, b = edge_key(i, j)
                        cand = (_distance(cities[a], cities[b]), a, b)
                        if best is None or cand < best:
                            best = cand
        assert best is not None
        w, i, j = best
        edges[(i, j)] = w
        merged = next(c for c in comps if i in c)
        other = next(c for c in comps if j in c)
        merged |= other
        comps.remove(other)

    def nearest(px: float, py: float, exclude: int | None = None) -> int:
        best_id = -1
        best_d2 = math.inf
        for c in cities:
            if c.id == exclude:
                continue
            d2 = (c.x - px) ** 2 + (c.y - py) ** 2
            if d2 < best_d2:
                best_d2 = d2
                best_id = c.id
        return best_id

    source = nearest(0.0, 0.0)
    destination = nearest(width, height, exclude=source)
    return RoadmapGraph(cities, edges, width, height, source, destination)


def compute_features(g: RoadmapGraph) -> RoadmapFeatures:
    """Node density per 200 square units and the stddev of per-city minimum arcs.

    The standard deviation is the population form (ddof=0).
    """
    if not g.cities:
        raise ValueError("empty graph has no features")
    adj = g.neighbors
    minima = []
    for c in g.cities:
        incident = adj[c.id]
        if not incident:
            raise ValueError(f"city {c.id} has no incident edge; graph is disconnected")
        minima.append(min(w for _, w, _ in incident))
    density = len(g.cities) * 200.0 / (g.area_width * g.area_height)
    return RoadmapFeatures(density, float(np.std(minima)))


def save_roadmap(g: RoadmapGraph, path) -> None:
    """Write the versioned plain-text roadmap format (see load_roadmap)."""
    lines = [
        f"roadmap v1 {len(g.cities)} {len(g.edges)} {g.area_width!r} "
        f"{g.area_height!r} {g.source} {g.destination}"
    ]
    for c in sorted(g.cities, key=lambda c: c.id):
        lines.append(f"{c.id} {c.x!r} {c.y!r}")
    for i, j in sorted(g.edges):
        lines.append(f"{i} {j}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_roadmap(path) -> RoadmapGraph:
    """Read a roadmap file.

    Format (UTF-8, ``#`` starts a comment):
      line 1: ``roadmap v1 <n> <m> <width> <height> <source> <destination>``
      next n lines: ``<id> <x> <y>``
      next m lines: ``<i> <j>``   (weights are recomputed from coordinates)
    """
    with open(path, encoding="utf-8") as fh:
        raw = fh.readlines()

    rows: list[tuple[int, list[str]]] = []
    for line_no, line in enumerate(raw, start=1):
        text = line.split("#", 1)[0].strip()
        if text:
            rows.append((line_no, text.split()))

    if not rows:
        raise RoadmapParseError(max(len(raw), 1), "missing header line")

    line_no, header = rows[0]
    if len(header) != 8 or header[0] != "roadmap":
        raise RoadmapParseError(
            line_no, "expected 'roadmap v1 <n> <m> <width> <height> <source> <destination>'"
        )
    if header[1] != "v1":
        raise UnsupportedVersionError(line_no, f"unsupported roadmap version {header[1]!r}")
    try:
        n = int(header[2])
        m = int(header[3])
        width = float(header[4])
        height = float(header[5])
        source = int(header[6])
        destination = int(header[7])
    except ValueError:
        raise RoadmapParseError(line_no, "non-numeric header field") from None
    if n < 2 or m < 0:
        raise RoadmapParseError(line_no, f"bad counts n={n} m={m}")
    if width <= 0 or height <= 0:
        raise RoadmapParseError(line_no, f"degenerate placement rectangle {width}x{height}")
    if len(rows) - 1 != n + m:
        raise RoadmapParseError(
            rows[-1][0], f"expected {n} city lines and {m} edge lines, found {len(rows) - 1}"
        )

    cities: dict[int, City] = {}
    for line_no, parts in rows[1 : 1 + n]:
        if len(parts) != 3:
            raise RoadmapParseError(line_no, "city line must be '<id> <x> <y>'")
        try:
            cid = int(parts[0])
            x, y = float(parts[1]), float(parts[2])
        except ValueError:
            raise RoadmapParseError(line_no, "non-numeric city field") from None
        if not 0 <= cid < n:
            raise RoadmapParseError(line_no, f"city id {cid} outside 0..{n - 1}")
        if cid in cities:
            raise RoadmapParseError(line_no, f"duplicate city id {cid}")
        cities[cid] = City(cid, x, y)
    city_list = [cities[i] for i in range(n)]

    edges: dict[Edge, float] = {}
    for line_no, parts in rows[1 + n :]:
        if len(parts) != 2:
            raise RoadmapParseError(line_no, "edge line must be '<i> <j>'")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise RoadmapParseError(line_no, "non-numeric edge endpoint") from None
        if not (0 <= i < n and 0 <= j < n):
            raise RoadmapParseError(line_no, f"edge ({i}, {j}) references a city id >= {n}")
        if i == j:
            raise RoadmapParseError(line_no, f"self-loop on city {i}")
        key = edge_key(i, j)
        if key in edges:
            raise RoadmapParseError(line_no, f"duplicate edge {key}")
        edges[key] = _distance(city_list[i], city_list[j])

    header_line = rows[0][0]
    if not (0 <= source < n and 0 <= destination < n):
        raise RoadmapParseError(header_line, "source/destination outside city id range")
    if source == destination:
        raise RoadmapParseError(header_line, "source equals destination")
    return RoadmapGraph(city_list, edges, width, height, source, destination)
