"""Collects and exports classifiers defined in planrag.

Exported classifiers are:

* ``distance-weighted``: DistanceWeightedNetwork, message passing with
  distance-weighted mean aggregation.
"""

# pylint: disable=unused-import
from planrag.classifiers.distance_weighted import DistanceWeightedNetwork
