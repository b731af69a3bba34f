class GraphError(ValueError):
    """Invalid graph, partition or terminal subset."""


class GuardError(ValueError):
    """Input exceeds the size limit of an exhaustive enumeration."""
