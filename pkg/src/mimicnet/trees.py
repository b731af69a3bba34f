"""Mimicking networks for capacitated trees.

Pipeline: :func:`reduce_tree` strips non-terminal leaves and splices
degree-2 non-terminals (at most ``2k - 1`` vertices remain), :func:`ternarize`
makes every internal vertex degree 3 with the terminals as leaves, and
:func:`y_delta_reduce` replaces degree-3 non-terminals by triangles in
in-order, giving a cactus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .exceptions import GraphError
from .graph import CapGraph
from .mincut import check_terminal_subset


@dataclass(frozen=True)
class RootedTree:
    """A ternarized tree rooted at the internal vertex next to the last terminal.

    ``children`` lists each internal vertex's two children, taller subtree
    first. ``root`` is None for the degenerate two-terminal edge.
    """

    graph: CapGraph
    root: str | None
    children: dict = field(default_factory=dict)

    def inorder(self) -> list[str]:
        if self.root is None:
            return []
        out: list[str] = []
        stack: list[tuple[str, bool]] = [(self.root, False)]
        while stack:
            v, expanded = stack.pop()
            kids = self.children.get(v, ())
            if expanded or not kids:
                out.append(v)
                continue
            left, right = kids
            stack.append((right, False))
            stack.append((v, True))
            stack.append((left, False))
        return out


@dataclass
class CactusNetwork:
    graph: CapGraph
    clamps: int
    is_cactus: bool
    size_bound: int

    def metadata(self) -> dict:
        return {"clamps": self.clamps, "is_cactus": self.is_cactus,
                "size_bound": str(self.size_bound), "vertices": len(self.graph)}


def _adjacency(g: CapGraph) -> dict[str, dict[str, Fraction]]:
    return {v: dict(g.neighbors(v)) for v in g.vertices}


def _to_graph(order, terminals, adj, allow_negative=False) -> CapGraph:
    alive = [v for v in order if v in adj]
    rank = {v: i for i, v in enumerate(alive)}
    edges = [(u, v, c) for u in alive for v, c in adj[u].items() if rank[u] < rank[v]]
    return CapGraph(alive, terminals, edges, allow_negative=allow_negative)


def is_forest(g: CapGraph) -> bool:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in g.edges:
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return True


def is_tree(g: CapGraph) -> bool:
    return is_forest(g) and len(g.edges) == len(g) - 1


def _require_forest(g: CapGraph) -> None:
    if not is_forest(g):
        raise GraphError("input is not a tree: it contains a cycle")


def _tree_plan(t: CapGraph):
    """Per-component post-orders with integer-scaled child edge capacities."""
    den = 1
    for _, _, c in t.edges:
        den = math.lcm(den, c.denominator)
    seen: set[str] = set()
    plans = []
    for start in t.vertices:
        if start in seen:
            continue
        order = []
        parent = {start: None}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            order.append(v)
            for w in t.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    parent[w] = v
                    stack.append(w)
        steps = [(v, [(w, int(c * den)) for w, c in t.neighbors(v).items() if parent.get(w) == v])
                 for v in reversed(order)]
        plans.append(steps)
    return plans, den


def _tree_cut(plans, den: int, pinned: dict) -> Fraction:
    inf = None
    total = 0
    for steps in plans:
        cost = {}
        for v, kids in steps:
            a = b = 0
            side = pinned.get(v)
            if side == 0:
                b = inf
            elif side == 1:
                a = inf
            for w, c in kids:
                wa, wb = cost[w]
                if a is not inf:
                    a += wa if wb is inf else (wb + c if wa is inf else min(wa, wb + c))
                if b is not inf:
                    b += wb if wa is inf else (wa + c if wb is inf else min(wb, wa + c))
            cost[v] = (a, b)
        a, b = cost[steps[-1][0]]
        total += b if a is inf else (a if b is inf else min(a, b))
    return Fraction(total, den)


def tree_min_terminal_cut(t: CapGraph, subset) -> Fraction:
    """Minimum terminal cut on a forest by dynamic programming.

    Each vertex keeps the cheapest cost of its subtree for both side
    choices; terminals are pinned to their side.
    """
    _require_forest(t)
    subset = check_terminal_subset(t, subset)
    plans, den = _tree_plan(t)
    return _tree_cut(plans, den, {v: (0 if v in subset else 1) for v in t.terminals})


def tree_mtcv(t: CapGraph) -> list[Fraction]:
    """All canonical minimum terminal cut values of a forest."""
    _require_forest(t)
    plans, den = _tree_plan(t)
    k = t.k
    out = []
    for i in range(1, 2 ** (k - 1)):
        pinned = {v: (0 if j < k - 1 and i >> j & 1 else 1) for j, v in enumerate(t.terminals)}
        out.append(_tree_cut(plans, den, pinned))
    return out


def reduce_tree(t: CapGraph) -> CapGraph:
    """Delete non-terminal leaves and splice degree-2 non-terminals.

    A spliced vertex ``v`` between ``u`` and ``w`` becomes the edge ``u-w``
    with capacity ``min(c(u,v), c(v,w))``.
    """
    _require_forest(t)
    terminals = set(t.terminals)
    adj = _adjacency(t)
    pending = list(reversed(t.non_terminals))
    queued = set(pending)
    while pending:
        v = pending.pop()
        queued.discard(v)
        if v not in adj:
            continue
        nbrs = adj[v]
        if len(nbrs) <= 1:
            for w in nbrs:
                del adj[w][v]
                if w not in terminals and w not in queued:
                    pending.append(w)
                    queued.add(w)
            del adj[v]
        elif len(nbrs) == 2:
            (u, cu), (w, cw) = nbrs.items()
            del adj[u][v], adj[w][v], adj[v]
            c = min(cu, cw)
            adj[u][w] = c
            adj[w][u] = c
            for x in (u, w):
                if x not in terminals and x not in queued:
                    pending.append(x)
                    queued.add(x)
    return _to_graph(t.vertices, t.terminals, adj)


def _fresh_names(used):
    i = 0
    while True:
        name = f"t{i}"
        i += 1
        if name not in used:
            used.add(name)
            yield name


def ternarize(t: CapGraph) -> RootedTree:
    """Turn a tree into one whose leaves are the terminals and internals have degree 3.

    The tree is reduced first. An internal terminal is moved onto a new
    non-terminal and hung off it as a leaf; a vertex of degree above 3 is
    split in two. The new joining edge carries the total capacity of the
    edges moved across it, which is enough that some minimum cut never pays
    for it, so every terminal cut value is unchanged.
    """
    if not is_tree(t):
        raise GraphError("input is not a tree")
    t = reduce_tree(t)
    if not is_tree(t):
        raise GraphError("input is not a tree")
    if len(t) == 2:
        return RootedTree(t, None, {})
    order = list(t.vertices)
    adj = _adjacency(t)
    fresh = _fresh_names(set(order))
    rank = {v: i for i, v in enumerate(order)}

    def add_vertex():
        name = next(fresh)
        rank[name] = len(order)
        order.append(name)
        adj[name] = {}
        return name

    def move(edges_from, to, nbrs):
        moved = Fraction(0)
        for w in nbrs:
            c = adj[edges_from].pop(w)
            del adj[w][edges_from]
            adj[to][w] = c
            adj[w][to] = c
            moved += c
        return moved

    for term in t.terminals:
        if len(adj[term]) >= 2:
            y = add_vertex()
            moved = move(term, y, sorted(adj[term], key=rank.get))
            adj[term][y] = moved
            adj[y][term] = moved

    terminals = set(t.terminals)
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        if x in terminals or len(adj[x]) <= 3:
            continue
        y = add_vertex()
        nbrs = sorted(adj[x], key=rank.get)
        moved = move(x, y, nbrs[2:])
        adj[x][y] = moved
        adj[y][x] = moved
        # y now has degree len(nbrs) - 1 and is revisited later in the scan

    g = _to_graph(order, t.terminals, adj)
    return root_ternary(g)


def is_ternarized(g: CapGraph) -> bool:
    if not is_tree(g):
        return False
    terminals = set(g.terminals)
    if g.k == 2 and len(g) == 2:
        return True
    return all((g.degree(v) == 1) if v in terminals else (g.degree(v) == 3)
               for v in g.vertices)


def root_ternary(g: CapGraph) -> RootedTree:
    """Root at the neighbour of the last terminal and order children by height."""
    if not is_ternarized(g):
        raise GraphError("input is not ternarized")
    if len(g) == 2:
        return RootedTree(g, None, {})
    top = g.terminals[-1]
    (root,) = g.neighbors(top)
    parent = {root: top}
    order = [root]
    for v in order:
        for w in g.neighbors(v):
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    height: dict[str, int] = {}
    children: dict[str, tuple] = {}
    for v in reversed(order):
        kids = [w for w in g.neighbors(v) if w != parent[v]]
        kids.sort(key=lambda w: (-height[w], g.index(w)))
        height[v] = 1 + max((height[w] for w in kids), default=-1)
        if kids:
            children[v] = tuple(kids)
    return RootedTree(g, root, children)


def size_bound(k: int) -> int:
    """Vertex bound for the star-triangle reduction, never below 2."""
    return max(2, (13 * k - 12) // 8)


def is_cactus(g: CapGraph) -> bool:
    """Connected, and every edge lies on at most one simple cycle."""
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from((u, v) for u, v, _ in g.edges)
    if not nx.is_connected(nxg):
        return False
    for comp in nx.biconnected_component_edges(nxg):
        nodes = {x for e in comp for x in e}
        if len(comp) > 1 and len(comp) != len(nodes):
            return False
    return True


def star_to_triangle(cu: Fraction, cv: Fraction, cw: Fraction, clamp: bool = True):
    """Triangle capacities ``(uv, vw, uw)`` replacing a star with legs ``cu, cv, cw``.

    With ``clamp`` each leg is first capped at the sum of the other two;
    this leaves the star's contribution ``min(c_x, sum of other legs)`` to
    every bipartition unchanged and keeps the triangle nonnegative.
    Returns the capacities and the number of legs that were capped.
    """
    clamps = 0
    if clamp:
        if cu > cv + cw:
            cu, clamps = cv + cw, clamps + 1
        if cv > cu + cw:
            cv, clamps = cu + cw, clamps + 1
        if cw > cu + cv:
            cw, clamps = cu + cv, clamps + 1
    return (cu + cv - cw) / 2, (cv + cw - cu) / 2, (cu + cw - cv) / 2, clamps


def _max_independent_internal(tree: RootedTree) -> set[str]:
    """Largest set of pairwise non-adjacent internal vertices (leaves-up greedy)."""
    chosen: set[str] = set()
    if tree.root is None:
        return chosen
    order = [tree.root]
    for v in order:
        order.extend(w for w in tree.children.get(v, ()) if w in tree.children)
    for v in reversed(order):
        if not any(w in chosen for w in tree.children[v]):
            chosen.add(v)
    return chosen


def y_delta_reduce(tree: RootedTree | CapGraph, clamp: bool = True,
                   strategy: str = "maximum") -> CactusNetwork:
    """Replace degree-3 non-terminals by triangles, visiting them in in-order.

    ``strategy="inorder"`` transforms every vertex that still has degree 3
    when reached. ``strategy="maximum"`` (default) only transforms a
    maximum independent set of the internal vertices, which removes at least
    half of them and so always meets :func:`size_bound`; greedy in-order
    can fall short of it.
    """
    if strategy not in ("maximum", "inorder"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if isinstance(tree, CapGraph):
        tree = root_ternary(tree)
    g = tree.graph
    terminals = set(g.terminals)
    allowed = _max_independent_internal(tree) if strategy == "maximum" else None
    adj = _adjacency(g)
    clamps = 0
    for x in tree.inorder():
        if x in terminals or len(adj[x]) != 3:
            continue
        if allowed is not None and x not in allowed:
            continue
        (u, cu), (v, cv), (w, cw) = sorted(adj[x].items(), key=lambda e: g.index(e[0]))
        uv, vw, uw, n = star_to_triangle(cu, cv, cw, clamp)
        clamps += n
        for y in (u, v, w):
            del adj[y][x]
        del adj[x]
        for a, b, c in ((u, v, uv), (v, w, vw), (u, w, uw)):
            adj[a][b] = adj[a].get(b, Fraction(0)) + c
            adj[b][a] = adj[a][b]
    negative = any(c < 0 for nb in adj.values() for c in nb.values())
    h = _to_graph(g.vertices, g.terminals, adj, allow_negative=negative)
    return CactusNetwork(h, clamps, is_cactus(h), size_bound(g.k))


def tree_cactus(t: CapGraph, clamp: bool = True, strategy: str = "maximum") -> CactusNetwork:
    """Full tree pipeline: reduce, ternarize, star-triangle reduce."""
    return y_delta_reduce(ternarize(t), clamp=clamp, strategy=strategy)

