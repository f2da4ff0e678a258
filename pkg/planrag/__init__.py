"""Floor-plan digitization with region adjacency graphs.

Planrag converts raster floor plans into a Region Adjacency Graph (RAG)
whose nodes carry rotation, scale and translation invariant Zernike
features, classifies the nodes, and post-processes the classified graph
into a room connectivity graph and convex wall segments.

Modules:
    geometry: Polygon primitives shared by the other packages.

    raster: Binary, label and gray rasters, contour tracing and rotation.

    preprocess: Building filter chain applied to the input image.

    features: Normalized Zernike moment features.

    rag: Vectorization and Region Adjacency Graph construction.

    classifiers: Node classifiers, training loop and metrics.

    postprocess: Room merging, door splitting, connectivity and wall partitioning.

    pipeline: Synthetic plans, orchestration, experiments and SVG IO.

    printers: Renderers for pipeline artifacts.

    utils: Common util functions used by other packages in planrag.

    exceptions: Defines exceptions classes for representing exceptions in planrag.
"""
