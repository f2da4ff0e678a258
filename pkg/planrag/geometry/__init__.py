"""Polygon primitives and operations shared by all planrag packages."""
