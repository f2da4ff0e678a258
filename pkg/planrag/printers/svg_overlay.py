"""Printer for exporting the layered SVG overlay of a plan."""

import os
from pathlib import Path
from typing import Optional

from planrag.pipeline.svg_io import SvgLayers, export_svg, layers_from_graph
from planrag.printers.abstract_printer import AbstractPrinter


class PrinterSvgOverlay(AbstractPrinter):  # pylint: disable=too-few-public-methods
    """Printer to export regions, RAG, separation lines and wall segments as SVG."""

    NAME = "svg-overlay"
    HELP = "Export the regions, the RAG and the wall partition as a layered SVG"

    def print(self) -> Optional[Path]:
        if self.plan.graph is None:
            print(f"\n{self.NAME}: {self.plan.name} has no graph, nothing to export")
            return None
        width, height = self.plan.canvas()
        walls = self.plan.walls
        layers: SvgLayers = layers_from_graph(
            self.plan.graph,
            width,
            height,
            walls.lines if walls is not None else (),
            walls.segments if walls is not None else (),
        )
        os.makedirs(self.dest, exist_ok=True)
        filename = self.dest / Path("overlay.svg")

        print(f"\nSVG overlay exported to file: {filename}")
        export_svg(layers, filename)
        return filename
