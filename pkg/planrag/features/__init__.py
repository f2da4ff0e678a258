"""Rotation, translation and scale invariant shape features."""
