"""Lower-bound machinery and counting bounds.

Gadget graphs move a single coordinate of the minimum terminal cut vector,
convex combinations of graphs combine their vectors linearly, and antichain
counts bound the number of clusters the signature construction can produce.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exceptions import GraphError, GuardError
from .generators import random_connected_graph
from .graph import CapGraph, parse_rational
from .mimicking import build_mimicking_network
from .terminal_cuts import canonical_subsets, cut_family, mtcv, num_cuts

COUNT_MAX_N = 5


def _fresh(base: str, taken: set) -> str:
    name, i = base, 0
    while name in taken:
        i += 1
        name = f"{base}_{i}"
    taken.add(name)
    return name


def resolve_subset(terminals: Sequence[str], subset) -> frozenset:
    """Accept a 1-based canonical index or an iterable of terminal names."""
    if isinstance(subset, int):
        p = num_cuts(len(terminals))
        if not 1 <= subset <= p:
            raise GraphError(f"cut index must be in 1..{p}, got {subset}")
        return canonical_subsets(terminals)[subset - 1]
    subset = frozenset(subset)
    if not subset or not subset < set(terminals):
        raise GraphError("subset must be a nonempty proper subset of the terminals")
    return subset


def gadget_graph(terminals: Sequence[str], subset, epsilon) -> CapGraph:
    """Two hubs: ``subset`` hangs off one, the other terminals off the other.

    Spokes carry ``1/|side|`` and the hub edge ``1 - epsilon``, so only the
    cut for ``subset`` is cheaper than 1 and it moves with ``epsilon``.
    """
    terminals = tuple(terminals)
    u = resolve_subset(terminals, subset)
    rest = [t for t in terminals if t not in u]
    inside = [t for t in terminals if t in u]
    eps = parse_rational(epsilon)
    limit = min(Fraction(1, len(inside)), Fraction(1, len(rest)))
    if not 0 < eps < limit:
        raise GraphError(f"epsilon must lie strictly between 0 and {limit}, got {eps}")
    taken = set(terminals)
    hub_out = _fresh("u0", taken)
    hub_in = _fresh("v0", taken)
    edges = [(t, hub_out, Fraction(1, len(rest))) for t in rest]
    edges += [(t, hub_in, Fraction(1, len(inside))) for t in inside]
    edges.append((hub_out, hub_in, 1 - eps))
    return CapGraph(list(terminals) + [hub_out, hub_in], terminals, edges)


def convex_combine(g1: CapGraph, g2: CapGraph, lam) -> CapGraph:
    """Overlay two graphs on shared terminals with capacities scaled by ``lam`` and ``1 - lam``.

    Non-terminals are prefixed ``g1.`` / ``g2.`` to keep them apart.
    """
    lam = parse_rational(lam)
    if not 0 <= lam <= 1:
        raise GraphError(f"lambda must lie in [0, 1], got {lam}")
    if tuple(g1.terminals) != tuple(g2.terminals):
        raise GraphError("terminal mismatch between the two graphs")
    terminals = set(g1.terminals)
    vertices = list(g1.terminals)
    edges = []
    for tag, g, w in (("g1", g1, lam), ("g2", g2, 1 - lam)):
        name = {v: (v if v in terminals else f"{tag}.{v}") for v in g.vertices}
        vertices += [name[v] for v in g.non_terminals]
        edges += [(name[a], name[b], w * c) for a, b, c in g.edges]
    return CapGraph(vertices, g1.terminals, edges)


@dataclass(frozen=True)
class CutMatrix:
    edges: tuple  # (u, v, capacity) in column order
    rows: tuple   # one 0/1 tuple per canonical cut index

    def row_weights(self) -> list[Fraction]:
        caps = [c for _, _, c in self.edges]
        return [sum((c for c, b in zip(caps, row) if b), Fraction(0)) for row in self.rows]


def cut_matrix(g: CapGraph) -> CutMatrix:
    fam = cut_family(g)
    rows = tuple(tuple(int((u in s) != (v in s)) for u, v, _ in g.edges)
                 for s in fam.source_sides)
    return CutMatrix(g.edges, rows)


def exact_rank(rows: Iterable[Sequence]) -> int:
    """Rank over the rationals by Gaussian elimination."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return 0
    rank = 0
    ncols = len(mat[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / pv
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def gadget_epsilons(terminals, index: int, count: int = 2) -> list[Fraction]:
    u = resolve_subset(terminals, index)
    limit = min(Fraction(1, len(u)), Fraction(1, len(terminals) - len(u)))
    return [limit * Fraction(j, count + 1) for j in range(1, count + 1)]


def mtcv_rank_evidence(k: int) -> int:
    """Affine rank of the zero vector plus two gadget vectors per coordinate."""
    if not 2 <= k <= 5:
        raise GuardError(f"rank evidence supports 2 <= k <= 5, got {k}")
    terminals = [f"v{j}" for j in range(1, k + 1)]
    p = num_cuts(k)
    zero = [Fraction(0)] * p
    points = [zero]
    rows = []
    for i in range(1, p + 1):
        e1, e2 = gadget_epsilons(terminals, i)
        a = mtcv(gadget_graph(terminals, i, e1))
        b = mtcv(gadget_graph(terminals, i, e2))
        points += [a, b]
        rows.append([x - y for x, y in zip(a, b)])
    rows += [[x - z for x, z in zip(pt, zero)] for pt in points[1:]]
    return exact_rank(rows)


def _count(n: int, common: bool) -> int:
    if not 1 <= n <= COUNT_MAX_N:
        raise GuardError(f"antichain counting supports 1 <= n <= {COUNT_MAX_N}, got {n}")
    subsets = list(range(1, 2 ** n))
    full = 2 ** n - 1

    def incomparable(a, b):
        return a & b != a and a & b != b

    def rec(start, chosen, meet):
        total = 1  # the antichain as it stands
        for pos in range(start, len(subsets)):
            s = subsets[pos]
            if common and meet & s == 0:
                continue
            if all(incomparable(s, c) for c in chosen):
                chosen.append(s)
                total += rec(pos + 1, chosen, meet & s)
                chosen.pop()
        return total

    return rec(0, [], full)


def count_antichains(n: int) -> int:
    """Antichains of nonempty subsets of an ``n``-set, the empty antichain included."""
    return _count(n, common=False)


def count_common_element_antichains(n: int) -> int:
    """As :func:`count_antichains`, restricted to antichains whose members share an element."""
    return _count(n, common=True)


def observed_cluster_max(k: int, samples: int, seed: int = 0, max_vertices: int = 10) -> int | None:
    """Largest signature-cluster count seen over random connected graphs."""
    if samples <= 0:
        return None
    rng = random.Random(seed)
    best = 0
    for _ in range(samples):
        n = rng.randint(k, max(k, max_vertices))
        g = random_connected_graph(rng, n, k)
        best = max(best, build_mimicking_network(g).cluster_count)
    return best


def bound_table(ks: Iterable[int] = range(2, 7), samples: int = 20, seed: int = 0) -> list[dict]:
    rows = []
    for k in ks:
        if not 2 <= k <= COUNT_MAX_N + 1:
            raise GuardError(f"bounds report supports 2 <= k <= {COUNT_MAX_N + 1}, got {k}")
        rows.append({
            "k": k,
            "Z": count_common_element_antichains(k - 1),
            "M_prime": count_antichains(k - 1),
            "two_power": 2 ** (2 ** (k - 1)) - 1,
            "observed_N_max": observed_cluster_max(k, samples, seed),
        })
    return rows
