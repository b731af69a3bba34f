"""Minimum terminal cuts by exact max-flow, plus a brute-force oracle."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable

from .exceptions import GraphError, GuardError
from .graph import CapGraph, cut_value

BRUTE_FORCE_MAX_VERTICES = 24


@dataclass(frozen=True)
class MinCutResult:
    """Value of a minimum terminal cut and its inclusion-minimal source side."""

    subset: frozenset
    value: Fraction
    source_side: frozenset


def check_terminal_subset(g: CapGraph, subset: Iterable[str]) -> frozenset:
    subset = frozenset(subset)
    ks = set(g.terminals)
    outside = subset - ks
    if outside:
        raise GraphError(f"not a terminal: {sorted(outside)[0]!r}")
    if not subset:
        raise GraphError("terminal subset must be nonempty")
    if subset == ks:
        raise GraphError("terminal subset must be a proper subset of the terminals")
    return subset


def max_flow(g: CapGraph, sources: Iterable[str], sinks: Iterable[str]):
    """Shortest-augmenting-path max-flow between two vertex sets.

    Sources and sinks are tied to a super-source and super-sink with a
    capacity above the total edge capacity. Returns ``(flow_value,
    reachable)`` where ``reachable`` is the set of original vertices
    reachable from the super-source in the final residual network.
    """
    verts = g.vertices
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    s, t = n, n + 1
    residual: list[dict[int, Fraction]] = [dict() for _ in range(n + 2)]
    for u, v, c in g.edges:
        if c < 0:
            raise GraphError("max-flow needs nonnegative capacities")
        a, b = idx[u], idx[v]
        residual[a][b] = residual[a].get(b, Fraction(0)) + c
        residual[b][a] = residual[b].get(a, Fraction(0)) + c
    big = g.total_capacity() + 1
    for v in sources:
        residual[s][idx[v]] = big
        residual[idx[v]].setdefault(s, Fraction(0))
    for v in sinks:
        residual[idx[v]][t] = big
        residual[t].setdefault(idx[v], Fraction(0))

    flow = Fraction(0)
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y, r in residual[x].items():
                if r > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            break
        bottleneck = None
        y = t
        while parent[y] is not None:
            x = parent[y]
            r = residual[x][y]
            if bottleneck is None or r < bottleneck:
                bottleneck = r
            y = x
        y = t
        while parent[y] is not None:
            x = parent[y]
            residual[x][y] -= bottleneck
            residual[y][x] = residual[y].get(x, Fraction(0)) + bottleneck
            y = x
        flow += bottleneck

    reachable = frozenset(verts[i] for i in parent if i < n)
    return flow, reachable


def min_terminal_cut(g: CapGraph, subset: Iterable[str]) -> MinCutResult:
    """Minimum cut separating ``subset`` from the remaining terminals.

    The returned source side is residual reachability from the sources,
    which is the unique inclusion-minimal minimum cut side.
    """
    subset = check_terminal_subset(g, subset)
    sinks = [t for t in g.terminals if t not in subset]
    flow, side = max_flow(g, [t for t in g.terminals if t in subset], sinks)
    return MinCutResult(subset, flow, side)


def is_unique_min_terminal_cut(g: CapGraph, subset: Iterable[str]) -> bool:
    """True iff exactly one vertex set realises the minimum cut for ``subset``."""
    subset = check_terminal_subset(g, subset)
    rest = frozenset(g.terminals) - subset
    small = min_terminal_cut(g, subset).source_side
    other = min_terminal_cut(g, rest).source_side
    return small == frozenset(g.vertices) - other


def brute_force_min_terminal_cut(g: CapGraph, subset: Iterable[str]):
    """Enumerate every placement of the non-terminals.

    Returns ``(value, minimizers)`` with minimizers as frozensets in
    enumeration order. Works with negative capacities.
    """
    subset = check_terminal_subset(g, subset)
    if len(g) > BRUTE_FORCE_MAX_VERTICES:
        raise GuardError(f"brute force limited to {BRUTE_FORCE_MAX_VERTICES} vertices, got {len(g)}")
    free = g.non_terminals
    best = None
    minimizers: list[frozenset] = []
    for bits in product((False, True), repeat=len(free)):
        side = set(subset)
        side.update(v for v, b in zip(free, bits) if b)
        val = cut_value(g, side)
        if best is None or val < best:
            best = val
            minimizers = [frozenset(side)]
        elif val == best:
            minimizers.append(frozenset(side))
    return best, minimizers
