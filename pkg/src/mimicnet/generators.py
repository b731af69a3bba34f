"""Seeded random instances for tests, experiments and the bounds report."""

from __future__ import annotations

import random

from .graph import CapGraph


def random_connected_graph(rng: random.Random, n: int, k: int, max_cap: int = 10,
                           density: float = 0.4, min_cap: int = 1) -> CapGraph:
    """Random spanning tree plus independent extra edges; integer capacities."""
    vs = [f"v{i}" for i in range(n)]
    edges = {}
    for i in range(1, n):
        j = rng.randrange(i)
        edges[(vs[j], vs[i])] = rng.randint(min_cap, max_cap)
    for i in range(n):
        for j in range(i + 1, n):
            if (vs[i], vs[j]) not in edges and rng.random() < density:
                edges[(vs[i], vs[j])] = rng.randint(min_cap, max_cap)
    terminals = rng.sample(vs, k)
    return CapGraph(vs, terminals, [(u, v, c) for (u, v), c in edges.items()])


def random_tree(rng: random.Random, n: int, k: int, max_cap: int = 10,
                min_cap: int = 0) -> CapGraph:
    """Random recursive tree with ``k`` terminals placed anywhere."""
    vs = [f"v{i}" for i in range(n)]
    edges = [(vs[rng.randrange(i)], vs[i], rng.randint(min_cap, max_cap)) for i in range(1, n)]
    return CapGraph(vs, rng.sample(vs, k), edges)
