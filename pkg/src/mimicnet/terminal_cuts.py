"""The family of minimum terminal cuts over all terminal bipartitions.

Bipartitions are indexed ``i = 1 .. 2**(k-1) - 1``; bit ``j - 1`` of ``i``
selects terminal ``v_j``. The last terminal is never in an indexed subset,
so each unordered bipartition appears exactly once.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exceptions import GraphError, GuardError
from .graph import CapGraph, format_rational
from .mincut import BRUTE_FORCE_MAX_VERTICES, MinCutResult, min_terminal_cut


def num_cuts(k: int) -> int:
    return 2 ** (k - 1) - 1


def canonical_subsets(terminals: Sequence[str]) -> list[frozenset]:
    k = len(terminals)
    if k < 2:
        raise GraphError("need at least 2 terminals")
    return [frozenset(terminals[j] for j in range(k - 1) if i >> j & 1)
            for i in range(1, 2 ** (k - 1))]


@dataclass(frozen=True)
class TerminalCutFamily:
    terminals: tuple
    cuts: tuple  # MinCutResult per canonical index, index i at position i-1

    def __len__(self):
        return len(self.cuts)

    def __iter__(self):
        return iter(self.cuts)

    def __getitem__(self, pos) -> MinCutResult:
        return self.cuts[pos]

    @property
    def values(self) -> list[Fraction]:
        return [c.value for c in self.cuts]

    @property
    def source_sides(self) -> list[frozenset]:
        return [c.source_side for c in self.cuts]


def cut_family(g: CapGraph) -> TerminalCutFamily:
    cuts = tuple(min_terminal_cut(g, u) for u in canonical_subsets(g.terminals))
    return TerminalCutFamily(g.terminals, cuts)


def mtcv(g: CapGraph) -> list[Fraction]:
    """Minimum terminal cut vector in canonical index order."""
    return cut_family(g).values


def serialize_mtcv(values: Sequence[Fraction]) -> str:
    return json.dumps([format_rational(v) for v in values])


@dataclass
class LaminarReport:
    nested_violations: list = field(default_factory=list)
    disjoint_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.nested_violations and not self.disjoint_violations

    def __bool__(self):
        return self.ok


def check_laminar(fam: TerminalCutFamily) -> LaminarReport:
    """Check nesting and disjointness of the minimal source sides.

    For every pair of indices: nested subsets must have nested sides, and
    disjoint subsets must have disjoint sides. Violations are reported as
    1-based index pairs.
    """
    report = LaminarReport()
    cuts = fam.cuts
    for a in range(len(cuts)):
        for b in range(len(cuts)):
            if a == b:
                continue
            x, y = cuts[a], cuts[b]
            if x.subset <= y.subset and not x.source_side <= y.source_side:
                report.nested_violations.append((a + 1, b + 1))
            if a < b and not (x.subset & y.subset) and (x.source_side & y.source_side):
                report.disjoint_violations.append((a + 1, b + 1))
    return report


def _integer_scale(g: CapGraph):
    den = 1
    for _, _, c in g.edges:
        den = math.lcm(den, c.denominator)
    return den


def brute_force_mtcv(g: CapGraph) -> list[Fraction]:
    """Minimum terminal cut vector by evaluating every vertex subset.

    Independent of the max-flow engine. Capacities are scaled to integers
    by their common denominator so the vectorised sums stay exact. Negative
    capacities are fine.
    """
    n = len(g)
    if n > BRUTE_FORCE_MAX_VERTICES:
        raise GuardError(f"brute force limited to {BRUTE_FORCE_MAX_VERTICES} vertices, got {n}")
    k = g.k
    # vertex order: terminals v_1..v_{k-1} on the low bits, then non-terminals;
    # v_k is always outside the enumerated side
    order = list(g.terminals[:-1]) + list(g.non_terminals)
    pos = {v: i for i, v in enumerate(order)}
    den = _integer_scale(g)
    ints = [int(c * den) for _, _, c in g.edges]
    bound = sum(abs(x) for x in ints)
    dtype = np.int64 if bound < 2 ** 62 else object

    m = len(order)
    masks = np.arange(2 ** m, dtype=np.int64)
    values = np.zeros(2 ** m, dtype=dtype)
    vk = g.terminals[-1]
    for (u, v, _), c in zip(g.edges, ints):
        if c == 0:
            continue
        bu = (masks >> pos[u]) & 1 if u != vk else np.zeros_like(masks)
        bv = (masks >> pos[v]) & 1 if v != vk else np.zeros_like(masks)
        values = values + (bu ^ bv).astype(dtype) * c
    pattern = masks & ((1 << (k - 1)) - 1)
    p = num_cuts(k)
    if dtype is object:
        return [Fraction(int(values[pattern == i].min()), den) for i in range(1, p + 1)]
    best = np.full(p + 1, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(best, pattern, values)
    return [Fraction(int(best[i]), den) for i in range(1, p + 1)]
