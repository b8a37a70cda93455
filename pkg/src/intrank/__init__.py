"""intrank: rank symbolic integration methods with tree-based neural selectors."""

__version__ = "0.1.0"
