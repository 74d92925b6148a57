"""Exact computational toolkit for the Block-type Lie algebra and its intermediate-series modules."""

__version__ = "0.1.0"
