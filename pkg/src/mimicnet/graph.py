"""Exact-arithmetic capacitated graphs with an ordered terminal list.

Capacities are :class:`fractions.Fraction` throughout. A graph is immutable
once built; parallel edges are merged by summing their capacities.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

from .exceptions import GraphError


def parse_rational(text) -> Fraction:
    """Parse an integer or ``"p/q"`` string into a Fraction.

    Decimal points are rejected on purpose: ``"0.1"`` is not exact.
    """
    if isinstance(text, bool):
        raise GraphError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise GraphError(f"not a rational: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise GraphError(f"not a rational: {text!r}") from None
    return value


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class CapGraph:
    """Undirected capacitated graph with named vertices and terminals.

    Parameters
    ----------
    vertices : iterable of str
        Distinct vertex names; order is preserved.
    terminals : iterable of str
        Ordered terminal list ``K``. The last entry plays the role of the
        excluded terminal when enumerating bipartitions.
    edges : iterable of (u, v, capacity)
        Parallel entries are merged by summation.
    allow_negative : bool
        Permit negative capacities (only produced by unclamped
        star-triangle reductions).
    """

    __slots__ = ("_vertices", "_terminals", "_index", "_edges", "_adj", "allow_negative")

    def __init__(self, vertices: Iterable[str], terminals: Iterable[str],
                 edges: Iterable = (), allow_negative: bool = False):
        vertices = tuple(vertices)
        terminals = tuple(terminals)
        index = {}
        for v in vertices:
            if not isinstance(v, str):
                raise GraphError(f"vertex names must be strings: {v!r}")
            if v in index:
                raise GraphError(f"duplicate vertex: {v!r}")
            index[v] = len(index)
        seen = set()
        for t in terminals:
            if t not in index:
                raise GraphError(f"unknown terminal: {t!r}")
            if t in seen:
                raise GraphError(f"duplicate terminal: {t!r}")
            seen.add(t)
        if len(terminals) < 2:
            raise GraphError(f"at least 2 terminals required, got {len(terminals)}")

        merged: dict[tuple[str, str], Fraction] = {}
        for u, v, cap in edges:
            for x in (u, v):
                if x not in index:
                    raise GraphError(f"unknown vertex in edge: {x!r}")
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            cap = parse_rational(cap)
            if cap < 0 and not allow_negative:
                raise GraphError(f"negative capacity on edge {u!r}-{v!r}: {format_rational(cap)}")
            key = (u, v) if index[u] < index[v] else (v, u)
            merged[key] = merged.get(key, Fraction(0)) + cap

        ordered = sorted(merged, key=lambda e: (index[e[0]], index[e[1]]))
        self._edges = {e: merged[e] for e in ordered}
        self._vertices = vertices
        self._terminals = terminals
        self._index = index
        self.allow_negative = allow_negative
        adj: dict[str, dict[str, Fraction]] = {v: {} for v in vertices}
        for (u, v), cap in self._edges.items():
            adj[u][v] = cap
            adj[v][u] = cap
        self._adj = adj

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def terminals(self) -> tuple[str, ...]:
        return self._terminals

    @property
    def k(self) -> int:
        return len(self._terminals)

    @property
    def non_terminals(self) -> tuple[str, ...]:
        ts = set(self._terminals)
        return tuple(v for v in self._vertices if v not in ts)

    @property
    def edges(self) -> tuple[tuple[str, str, Fraction], ...]:
        """Edges as ``(u, v, capacity)`` in canonical vertex-index order."""
        return tuple((u, v, c) for (u, v), c in self._edges.items())

    def index(self, v: str) -> int:
        return self._index[v]

    def neighbors(self, v: str) -> Mapping[str, Fraction]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def capacity(self, u: str, v: str) -> Fraction:
        return self._adj[u].get(v, Fraction(0))

    def total_capacity(self) -> Fraction:
        return sum((abs(c) for c in self._edges.values()), Fraction(0))

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, CapGraph):
            return NotImplemented
        return (self._vertices == other._vertices
                and self._terminals == other._terminals
                and self._edges == other._edges)

    def __hash__(self):
        return hash((self._vertices, self._terminals, tuple(self._edges.items())))

    def __repr__(self) -> str:
        return (f"CapGraph(|V|={len(self._vertices)}, |E|={len(self._edges)}, "
                f"terminals={list(self._terminals)})")


def parse_graph(text: str | Mapping) -> CapGraph:
    """Build a :class:`CapGraph` from the graph JSON document.

    Accepts either the JSON text or an already decoded mapping.
    """
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed JSON: {exc}") from None
    else:
        doc = text
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    for key in ("vertices", "terminals", "edges"):
        if key not in doc:
            raise GraphError(f"missing field {key!r}")
        if not isinstance(doc[key], list):
            raise GraphError(f"field {key!r} must be an array")
    edges = []
    for e in doc["edges"]:
        if not isinstance(e, dict) or not {"u", "v", "cap"} <= e.keys():
            raise GraphError(f"malformed edge entry: {e!r}")
        edges.append((e["u"], e["v"], parse_rational(e["cap"])))
    return CapGraph(doc["vertices"], doc["terminals"], edges,
                    allow_negative=bool(doc.get("allow_negative", False)))


def graph_to_dict(g: CapGraph) -> dict:
    doc = {
        "vertices": list(g.vertices),
        "terminals": list(g.terminals),
        "edges": [{"u": u, "v": v, "cap": format_rational(c)} for u, v, c in g.edges],
    }
    if g.allow_negative:
        doc["allow_negative"] = True
    return doc


def serialize_graph(g: CapGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2)


def cut_value(g: CapGraph, side: Iterable[str]) -> Fraction:
    """Total capacity of edges with exactly one endpoint in ``side``."""
    side = set(side)
    for v in side:
        if v not in g:
            raise GraphError(f"unknown vertex: {v!r}")
    total = Fraction(0)
    for u, v, c in g.edges:
        if (u in side) != (v in side):
            total += c
    return total


# -- vertex partitions ------------------------------------------------------

def partition_from_clusters(clusters: Mapping[str, Iterable[str]]) -> dict[str, str]:
    """Turn ``{cluster_id: members}`` into a vertex -> cluster mapping."""
    part = {}
    for cid, members in clusters.items():
        members = list(members)
        if not members:
            raise GraphError(f"empty cluster: {cid!r}")
        for v in members:
            if v in part:
                raise GraphError(f"vertex {v!r} in two clusters")
            part[v] = cid
    return part


def parse_partition(text: str | Mapping) -> dict[str, str]:
    doc = json.loads(text) if isinstance(text, (str, bytes)) else text
    if not isinstance(doc, dict) or not isinstance(doc.get("clusters"), list):
        raise GraphError("partition document needs a 'clusters' array")
    clusters = {}
    for c in doc["clusters"]:
        if not isinstance(c, dict) or "id" not in c or "members" not in c:
            raise GraphError(f"malformed cluster entry: {c!r}")
        if c["id"] in clusters:
            raise GraphError(f"duplicate cluster id: {c['id']!r}")
        clusters[c["id"]] = c["members"]
    return partition_from_clusters(clusters)


def serialize_partition(part: Mapping[str, str], g: CapGraph | None = None) -> str:
    order = list(g.vertices) if g is not None else list(part)
    clusters: dict[str, list[str]] = {}
    for v in order:
        clusters.setdefault(part[v], []).append(v)
    doc = {"clusters": [{"id": cid, "members": ms} for cid, ms in clusters.items()]}
    return json.dumps(doc, indent=2)


def contract(g: CapGraph, part: Mapping[str, str]) -> CapGraph:
    """Contract every cluster of ``part`` into one vertex.

    Inter-cluster capacities are summed, intra-cluster edges are dropped.
    A cluster holding a terminal takes that terminal's name; other clusters
    keep their partition id. Output vertices are ordered by the smallest
    original vertex index in each cluster.
    """
    missing = [v for v in g.vertices if v not in part]
    if missing:
        raise GraphError(f"partition does not cover vertex {missing[0]!r}")
    extra = [v for v in part if v not in g]
    if extra:
        raise GraphError(f"partition names unknown vertex {extra[0]!r}")

    term_of: dict[str, str] = {}
    for t in g.terminals:
        cid = part[t]
        if cid in term_of:
            raise GraphError(f"terminal merge forbidden: {term_of[cid]!r} and {t!r} "
                             f"share cluster {cid!r}")
        term_of[cid] = t

    name: dict[str, str] = {}
    for v in g.vertices:
        cid = part[v]
        if cid not in name:
            name[cid] = term_of.get(cid, cid)
    names = list(name.values())
    if len(set(names)) != len(names):
        raise GraphError("cluster id collides with a terminal name")

    edges = []
    for u, v, c in g.edges:
        a, b = name[part[u]], name[part[v]]
        if a != b:
            edges.append((a, b, c))
    return CapGraph(names, g.terminals, edges, allow_negative=g.allow_negative)
