"""Input coercion helpers in the spirit of ``sklearn.utils.check_array``."""

from __future__ import annotations

from collections.abc import Mapping

from .exceptions import GraphError
from .graph import CapGraph, parse_graph
from .trees import is_tree


def check_graph(X, *, require_tree: bool = False, allow_negative: bool = True) -> CapGraph:
    """Return ``X`` as a :class:`CapGraph`.

    Accepts a CapGraph, a decoded graph document, or JSON text.
    """
    if isinstance(X, CapGraph):
        g = X
    elif isinstance(X, (str, bytes, Mapping)):
        g = parse_graph(X)
    else:
        raise TypeError(f"expected a CapGraph, mapping or JSON text, got {type(X).__name__}")
    if not allow_negative and any(c < 0 for _, _, c in g.edges):
        raise GraphError("negative capacities are not accepted here")
    if require_tree and not is_tree(g):
        raise GraphError("input is not a tree")
    return g


def check_same_terminals(g: CapGraph, h: CapGraph) -> None:
    if tuple(g.terminals) != tuple(h.terminals):
        raise GraphError(f"terminal set mismatch: {list(g.terminals)} vs {list(h.terminals)}")
