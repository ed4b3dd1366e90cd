"""Exact shortest paths for ground truth, via Dijkstra.

Ties between equal-length paths are broken toward the lexicographically
smallest node sequence so results are exactly reproducible.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .roadmap import RoadmapGraph


class NoPathError(ValueError):
    """The destination is unreachable from the source."""


@dataclass(frozen=True)
class PathResult:
    nodes: tuple[int, ...]
    length: float


def shortest_path(
    g: RoadmapGraph, src: int | None = None, dst: int | None = None
) -> PathResult:
    """Minimum-weight path from src to dst, defaulting to the graph endpoints.

    The length is the sum of edge weights in path order. Among equal-weight
    paths the lexicographically smallest node sequence is returned.
    """
    if src is None:
        src = g.source
    if dst is None:
        dst = g.destination
    n = len(g.cities)
    for name, node in (("src", src), ("dst", dst)):
        if not 0 <= node < n:
            raise ValueError(f"{name}={node} is not a valid city id")
    if src == dst:
        return PathResult((src,), 0.0)

    adj = g.neighbors
    # distances to dst; the graph is undirected so one backward pass suffices
    dist = [math.inf] * n
    dist[dst] = 0.0
    heap: list[tuple[float, int]] = [(0.0, dst)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w, _ in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    if dist[src] == math.inf:
        raise NoPathError(f"city {dst} is unreachable from city {src}")

    # walk toward dst, taking the smallest neighbor that stays on a shortest
    # path; relaxation stored dist[u] = dist[v] + w so equality is exact
    nodes = [src]
    visited = {src}
    length = 0.0
    u = src
    while u != dst:
        step: tuple[int, float] | None = None
        for v, w, _ in adj[u]:
            if v not in visited and dist[v] + w == dist[u]:
                step = (v, w)
                break
        if step is None:
            # degenerate weights (e.g. zero-length edges) can break exact
            # equality; fall back to the best remaining estimate
            fallback: tuple[float, int, float] | None = None
            for v, w, _ in adj[u]:
                if v in visited or dist[v] == math.inf:
                    continue
                cand = (dist[v] + w, v, w)
                if fallback is None or cand < fallback:
                    fallback = cand
            if fallback is None:
                raise NoPathError(f"walk from {src} to {dst} stuck at {u}")
            step = (fallback[1], fallback[2])
        v, w = step
        nodes.append(v)
        visited.add(v)
        length += w
        u = v
    return PathResult(tuple(nodes), length)
