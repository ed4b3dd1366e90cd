"""Shortest-path reference against brute force and networkx."""

import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antroute.oracle import NoPathError, shortest_path
from antroute.roadmap import City, RoadmapGraph, generate_roadmap


def brute_force(g: RoadmapGraph, src: int, dst: int):
    """Enumerate all simple paths; return (best nodes, best length)."""
    adj = {c.id: [] for c in g.cities}
    for (i, j), w in g.edges.items():
        adj[i].append((j, w))
        adj[j].append((i, w))
    best = (None, math.inf)

    def walk(node, seen, length, path):
        nonlocal best
        if node == dst:
            if length < best[1]:
                best = (list(path), length)
            return
        for nxt, w in adj[node]:
            if nxt not in seen:
                seen.add(nxt)
                path.append(nxt)
                walk(nxt, seen, length + w, path)
                path.pop()
                seen.remove(nxt)

    walk(src, {src}, 0.0, [src])
    return best


def line_graph(weights):
    cities = [City(i, float(i), 0.0) for i in range(len(weights) + 1)]
    edges = {(i, i + 1): w for i, w in enumerate(weights)}
    return RoadmapGraph(cities, edges, float(len(weights)), 1.0, 0, len(weights))


class TestHandCases:
    def test_single_edge(self):
        g = line_graph([2.5])
        r = shortest_path(g, 0, 1)
        assert r.nodes == (0, 1)
        assert r.length == 2.5

    def test_chain_sums_in_path_order(self):
        g = line_graph([0.1, 0.2, 0.3, 0.4])
        r = shortest_path(g, 0, 4)
        assert r.nodes == (0, 1, 2, 3, 4)
        assert r.length == 0.1 + 0.2 + 0.3 + 0.4

    def test_shortcut_beats_detour(self):
        cities = [City(0, 0.0, 0.0), City(1, 1.0, 0.0), City(2, 2.0, 0.0)]
        edges = {(0, 1): 1.0, (1, 2): 1.0, (0, 2): 1.5}
        g = RoadmapGraph(cities, edges, 2.0, 1.0, 0, 2)
        r = shortest_path(g, 0, 2)
        assert r.nodes == (0, 2)
        assert r.length == 1.5

    def test_source_equals_destination(self):
        g = line_graph([1.0])
        r = shortest_path(g, 1, 1)
        assert r.nodes == (1,)
        assert r.length == 0.0

    def test_disconnected_raises(self):
        cities = [City(0, 0.0, 0.0), City(1, 1.0, 0.0), City(2, 5.0, 0.0), City(3, 6.0, 0.0)]
        edges = {(0, 1): 1.0, (2, 3): 1.0}
        g = RoadmapGraph(cities, edges, 6.0, 1.0, 0, 3)
        with pytest.raises(NoPathError):
            shortest_path(g, 0, 3)

    def test_unknown_node_rejected(self):
        g = line_graph([1.0])
        with pytest.raises(ValueError):
            shortest_path(g, 0, 7)

    def test_defaults_to_graph_endpoints(self):
        g = line_graph([1.0, 2.0])
        r = shortest_path(g)
        assert r.nodes == (0, 1, 2)
        assert r.length == 3.0


class TestAgainstBruteForce:
    @pytest.mark.parametrize("n, seed", [(5, 0), (6, 1), (7, 2), (8, 3), (9, 4), (10, 5)])
    def test_generated_small(self, n, seed):
        g = generate_roadmap(n, 6.0, 6.0, 3.0, seed=seed)
        r = shortest_path(g)
        nodes, length = brute_force(g, g.source, g.destination)
        assert r.length == pytest.approx(length, rel=1e-12)
        assert r.nodes[0] == g.source and r.nodes[-1] == g.destination

    def test_dense_complete_graphs(self):
        for seed in range(4):
            g = generate_roadmap(7, 4.0, 4.0, 100.0, seed=seed)
            r = shortest_path(g)
            _, length = brute_force(g, g.source, g.destination)
            assert r.length == pytest.approx(length, rel=1e-12)

    @given(st.integers(min_value=4, max_value=9), st.integers(min_value=0, max_value=10**6))
    @settings(max_examples=30, deadline=None)
    def test_property_matches_enumeration(self, n, seed):
        g = generate_roadmap(n, 7.0, 7.0, 2.5, seed=seed)
        r = shortest_path(g)
        _, length = brute_force(g, g.source, g.destination)
        assert r.length == pytest.approx(length, rel=1e-12)


class TestAgainstNetworkx:
    @pytest.mark.parametrize("n, radius, seed", [(50, 3.0, 0), (100, 1.6, 1), (100, 1.6, 2), (150, 1.4, 3)])
    def test_generated_roadmaps(self, n, radius, seed):
        g = generate_roadmap(n, 20.0, 10.0, radius, seed=seed)
        h = nx.Graph()
        h.add_nodes_from(c.id for c in g.cities)
        for (i, j), w in g.edges.items():
            h.add_edge(i, j, weight=w)
        expected = nx.dijkstra_path_length(h, g.source, g.destination)
        r = shortest_path(g)
        assert r.length == pytest.approx(expected, rel=1e-9)
        # returned node sequence is a real path with consistent length
        walked = 0.0
        for a, b in itertools.pairwise(r.nodes):
            key = (a, b) if a < b else (b, a)
            assert key in g.edges
            walked += g.edges[key]
        assert walked == r.length

    def test_path_length_bitwise_matches_hop_order_sum(self):
        # the reported length must equal the left-to-right sum over hops,
        # not a rounding variant of it
        g = generate_roadmap(120, 15.0, 15.0, 1.85, seed=9)
        r = shortest_path(g)
        total = 0.0
        for a, b in itertools.pairwise(r.nodes):
            key = (a, b) if a < b else (b, a)
            total += g.edges[key]
        assert total == r.length
