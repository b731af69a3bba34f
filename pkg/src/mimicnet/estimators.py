"""Estimator wrappers so the constructions compose with scikit-learn tooling.

``fit`` learns the vertex clustering (or tree reduction) of one graph and
``transform`` returns the sparsified graph.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import GraphError
from .graph import contract
from .mimicking import build_mimicking_network, verify_mimicking
from .trees import tree_cactus
from .validation import check_graph, check_same_terminals


class MimickingNetworkBuilder(TransformerMixin, BaseEstimator):
    """Signature-clustering mimicking network.

    Parameters
    ----------
    verify : bool
        Check every terminal cut of the fitted graph against the sparsifier
        and store the report in ``report_``.
    oracle : bool
        Use exhaustive enumeration on the sparsifier side when verifying.

    Attributes
    ----------
    network_ : MimickingNetwork
    labels_ : dict
        Vertex to cluster name.
    n_clusters_ : int
    report_ : VerificationReport or None
    """

    def __init__(self, verify=True, oracle=False):
        self.verify = verify
        self.oracle = oracle

    def fit(self, X, y=None):
        g = check_graph(X, allow_negative=False)
        self.network_ = build_mimicking_network(g)
        self.labels_ = dict(self.network_.mapping)
        self.n_clusters_ = self.network_.cluster_count
        self.terminals_ = g.terminals
        self.report_ = verify_mimicking(g, self.network_, oracle=self.oracle) if self.verify else None
        return self

    def transform(self, X):
        """Contract ``X`` with the fitted clustering.

        ``X`` must have the fitted vertex set and terminals; capacities may
        differ (the result is then not guaranteed to be exact).
        """
        check_is_fitted(self, "network_")
        g = check_graph(X, allow_negative=False)
        if set(g.vertices) != set(self.labels_):
            raise GraphError("vertex set differs from the fitted graph")
        if g.terminals != self.terminals_:
            raise GraphError("terminal list differs from the fitted graph")
        return contract(g, self.labels_)

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X).network_.h


class TreeSparsifier(TransformerMixin, BaseEstimator):
    """Tree reduction followed by star-triangle replacement.

    Parameters
    ----------
    clamp : bool
        Cap each star leg at the sum of the other two before replacing it.
    strategy : {"maximum", "inorder"}
        Which degree-3 non-terminals get replaced; see
        :func:`mimicnet.trees.y_delta_reduce`.
    """

    def __init__(self, clamp=True, strategy="maximum"):
        self.clamp = clamp
        self.strategy = strategy

    def fit(self, X, y=None):
        t = check_graph(X, require_tree=True, allow_negative=False)
        self.network_ = tree_cactus(t, clamp=self.clamp, strategy=self.strategy)
        self.terminals_ = t.terminals
        self.n_vertices_ = len(self.network_.graph)
        return self

    def transform(self, X):
        check_is_fitted(self, "network_")
        t = check_graph(X, require_tree=True, allow_negative=False)
        check_same_terminals(t, self.network_.graph)
        return tree_cactus(t, clamp=self.clamp, strategy=self.strategy).graph

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X).network_.graph
