"""Printer for exporting the Region Adjacency Graph in dot format.

Classes:
    PrinterRagDot: Printer to export the RAG.
"""

import os
from pathlib import Path
from typing import Optional

from planrag.printers.abstract_printer import AbstractPrinter
from planrag.utils.output import rag_to_dot


class PrinterRagDot(AbstractPrinter):  # pylint: disable=too-few-public-methods
    """Printer to export the RAG in dot."""

    NAME = "rag-dot"
    HELP = "Export the Region Adjacency Graph to a dot file"

    def print(self) -> Optional[Path]:
        """Export the RAG, nodes colored by class and placed at their centroid."""
        if self.plan.graph is None:
            print(f"\n{self.NAME}: {self.plan.name} has no graph, nothing to export")
            return None
        os.makedirs(self.dest, exist_ok=True)
        filename = self.dest / Path("rag.dot")

        print(f"\nRAG exported to file: {filename}")
        rag_to_dot(self.plan.graph, filename=filename)
        return filename
