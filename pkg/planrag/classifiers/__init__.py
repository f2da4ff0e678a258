"""Module for planrag node classifiers.

Classifiers predict the class of every node of a Region Adjacency Graph.
They are pluggable: the builtin network and the ones registered by
plugins are selected by ``NAME``.

Modules:
    abstract_classifier: Defines abstract base class for classifiers and the model file.

    all_classifiers: Collects and exports classifiers defined in planrag.

    distance_weighted: Message passing network with distance-weighted aggregation.

    standardize: Per-dimension z-score of node features.

    training: Training entry point.

    metrics: F1 and area-weighted IoU reports.
"""
