"""Mimicking networks by clustering vertices on their minimum-cut signatures.

Every vertex gets one bit per canonical terminal bipartition recording
whether it lies in the minimal source side of that bipartition's minimum
cut. Vertices with equal bit vectors are contracted together.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import GraphError, GuardError
from .graph import CapGraph, contract, format_rational
from .mincut import BRUTE_FORCE_MAX_VERTICES
from .terminal_cuts import (TerminalCutFamily, brute_force_mtcv, canonical_subsets,
                            cut_family, mtcv)

PARTITION_SEARCH_MAX_VERTICES = 8


def signatures(g: CapGraph, fam: TerminalCutFamily) -> dict[str, tuple[int, ...]]:
    """Bit ``i`` of a vertex's signature is 1 iff it lies in the i-th minimal side."""
    sides = fam.source_sides
    return {v: tuple(int(v in s) for s in sides) for v in g.vertices}


def signature_indices(sig: tuple[int, ...]) -> list[int]:
    """1-based canonical indices whose bit is set; index bits encode the subset."""
    return [i + 1 for i, b in enumerate(sig) if b]


def is_upward_closed(sig: tuple[int, ...]) -> bool:
    p = len(sig)
    members = set(signature_indices(sig))
    for i in members:
        for j in range(1, p + 1):
            if i & j == i and j not in members:
                return False
    return True


def has_disjoint_pair(sig: tuple[int, ...]) -> bool:
    members = signature_indices(sig)
    return any(a & b == 0 for x, a in enumerate(members) for b in members[x + 1:])


def minimal_elements(sig: tuple[int, ...]) -> list[int]:
    members = signature_indices(sig)
    return [i for i in members if not any(j != i and j & i == j for j in members)]


def has_common_element(sig: tuple[int, ...]) -> bool:
    """Whether all minimal subsets of the signature share one terminal."""
    mins = minimal_elements(sig)
    if not mins:
        return True
    common = mins[0]
    for m in mins[1:]:
        common &= m
    return common != 0


@dataclass
class MimickingNetwork:
    h: CapGraph
    mapping: dict[str, str]
    signature_table: dict[str, tuple[int, ...]]
    family: TerminalCutFamily | None = None

    @property
    def cluster_count(self) -> int:
        return len(self.h)

    @property
    def clusters(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {c: [] for c in self.h.vertices}
        for v, c in self.mapping.items():
            out[c].append(v)
        return out


def _cluster_names(g: CapGraph, groups: list[list[str]]) -> list[str]:
    taken = set(g.terminals)
    terminals = set(g.terminals)
    names = []
    counter = 0
    for members in groups:
        ts = [v for v in members if v in terminals]
        if ts:
            names.append(ts[0])
            continue
        while f"h{counter}" in taken:
            counter += 1
        names.append(f"h{counter}")
        taken.add(f"h{counter}")
        counter += 1
    return names


def build_mimicking_network(g: CapGraph, family: TerminalCutFamily | None = None) -> MimickingNetwork:
    """Contract vertices sharing a cut signature.

    Clusters appear in the order of their first original vertex; a cluster
    is named after its terminal, otherwise ``h<n>``.
    """
    fam = family if family is not None else cut_family(g)
    sigs = signatures(g, fam)
    by_sig: dict[tuple, list[str]] = {}
    for v in g.vertices:
        by_sig.setdefault(sigs[v], []).append(v)
    groups = list(by_sig.values())
    names = _cluster_names(g, groups)
    mapping = {}
    table = {}
    for name, members in zip(names, groups):
        table[name] = sigs[members[0]]
        for v in members:
            mapping[v] = name
    h = contract(g, mapping)
    return MimickingNetwork(h, mapping, table, fam)


def edges_without_cut(mn: MimickingNetwork) -> list[tuple[str, str]]:
    """Edges of the sparsifier whose endpoints share every cut side (should be none)."""
    bad = []
    for u, v, _ in mn.h.edges:
        if mn.signature_table[u] == mn.signature_table[v]:
            bad.append((u, v))
    return bad


@dataclass
class VerificationReport:
    per_index: list = field(default_factory=list)  # (subset, g_value, h_value)
    quality: Fraction | None = None  # None encodes an unbounded ratio

    @property
    def passed(self) -> bool:
        return all(a == b for _, a, b in self.per_index)

    def failures(self) -> list:
        return [(i + 1, s, a, b) for i, (s, a, b) in enumerate(self.per_index) if a != b]

    def quality_str(self) -> str:
        return "inf" if self.quality is None else format_rational(self.quality)

    def to_dict(self, terminals=None) -> dict:
        def names(s):
            return [t for t in terminals if t in s] if terminals else sorted(s)
        return {
            "per_index": [{"subset": names(s), "g_value": format_rational(a),
                           "h_value": format_rational(b)} for s, a, b in self.per_index],
            "quality": self.quality_str(),
            "pass": self.passed,
        }

    def to_json(self, terminals=None) -> str:
        return json.dumps(self.to_dict(terminals), indent=2)


def _values(g: CapGraph, oracle: bool) -> list[Fraction]:
    negative = any(c < 0 for _, _, c in g.edges)
    if (oracle or negative) and len(g) <= BRUTE_FORCE_MAX_VERTICES:
        return brute_force_mtcv(g)
    if negative:
        raise GuardError("negative capacities need the brute-force oracle, graph too large")
    return mtcv(g)


def verify_mimicking(g: CapGraph, mn: MimickingNetwork | CapGraph,
                     oracle: bool = False) -> VerificationReport:
    """Compare every minimum terminal cut of ``g`` against the sparsifier.

    Values are compared exactly. With ``oracle=True`` the sparsifier side
    is evaluated by exhaustive subset enumeration instead of max-flow.
    """
    h = mn.h if isinstance(mn, MimickingNetwork) else mn
    if tuple(h.terminals) != tuple(g.terminals):
        raise GraphError(f"terminal set mismatch: {list(g.terminals)} vs {list(h.terminals)}")
    gv = _values(g, False)
    hv = _values(h, oracle)
    worst: Fraction | None = Fraction(0)
    for a, b in zip(gv, hv):
        if a == 0:
            ratio = Fraction(1) if b == 0 else None
        else:
            ratio = b / a
        if ratio is None:
            worst = None
        elif worst is not None and ratio > worst:
            worst = ratio
    subsets = canonical_subsets(g.terminals)
    return VerificationReport(list(zip(subsets, gv, hv)), worst)


def set_partitions(n: int):
    """Restricted growth strings of length ``n``."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(rgs)
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def min_contraction_size_bruteforce(g: CapGraph) -> int:
    """Fewest clusters over all vertex partitions whose contraction is exact."""
    n = len(g)
    if n > PARTITION_SEARCH_MAX_VERTICES:
        raise GuardError(f"partition search limited to {PARTITION_SEARCH_MAX_VERTICES} vertices, got {n}")
    target = mtcv(g)
    verts = g.vertices
    term_pos = [g.index(t) for t in g.terminals]
    best = n
    for rgs in set_partitions(n):
        blocks = max(rgs) + 1
        if blocks >= best:
            continue
        tb = [rgs[i] for i in term_pos]
        if len(set(tb)) != len(tb):
            continue
        owner = {rgs[i]: t for i, t in zip(term_pos, g.terminals)}
        part = {v: owner.get(rgs[i], f"#{rgs[i]}") for i, v in enumerate(verts)}
        if mtcv(contract(g, part)) == target:
            best = blocks
    return best


def signature_stats(mn: MimickingNetwork) -> dict:
    """Structural counts over the nonempty clusters of a network."""
    sigs = list(mn.signature_table.values())
    return {
        "clusters": len(sigs),
        "not_upward_closed": sum(not is_upward_closed(s) for s in sigs),
        "disjoint_pairs": sum(has_disjoint_pair(s) for s in sigs),
        "no_common_element": sum(not has_common_element(s) for s in sigs),
    }

