"""Module for planrag printers.

Printers render the artifacts of a plan (the Region Adjacency Graph, the
Room Connectivity Graph and the wall layout) for inspection: as SVG
overlays, dot graphs or a summary on the terminal.

Modules:
    abstract_printer: Defines abstract base class for printers in planrag.

    all_printers: Collects and exports printers defined in planrag.

    svg_overlay: Printer for exporting the layered SVG overlay.

    rag_dot: Printer for exporting the RAG in dot format.

    rcg_dot: Printer for exporting the RCG in dot format.

    human_summary: Printer to print summary of the plan.
"""
