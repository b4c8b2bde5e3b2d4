"""Sharp convexity bounds for weighted integral transforms on the unit disk."""

__version__ = "0.1.0"
