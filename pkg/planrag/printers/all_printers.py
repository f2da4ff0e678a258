"""Collects and exports printers defined in planrag.

Exported printers are:

* ``human-summary``: PrinterHumanSummary prints summary of the plan.
* ``svg-overlay``: PrinterSvgOverlay exports the layered SVG overlay.
* ``rag-dot``: PrinterRagDot exports the Region Adjacency Graph in dot format.
* ``rcg-dot``: PrinterRcgDot exports the Room Connectivity Graph in dot format.
"""

# pylint: disable=unused-import
from planrag.printers.human_summary import PrinterHumanSummary
from planrag.printers.svg_overlay import PrinterSvgOverlay
from planrag.printers.rag_dot import PrinterRagDot
from planrag.printers.rcg_dot import PrinterRcgDot
