"""Vectorization of filtered plans into Region Adjacency Graphs.

Modules:
    labels: The eight node classes.

    region_graph: Region, FeatureVector, Edge and RegionGraph values and their JSON files.

    vectorize: Region extraction, adjacency and graph assembly.

    relabel: Transfer of ground-truth classes by maximal IoU.
"""
