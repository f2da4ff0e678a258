"""Printer for exporting the Room Connectivity Graph in dot format.

Classes:
    PrinterRcgDot: Printer to export the RCG.
"""

import os
from pathlib import Path
from typing import Optional

from planrag.printers.abstract_printer import AbstractPrinter
from planrag.utils.output import rcg_to_dot


class PrinterRcgDot(AbstractPrinter):  # pylint: disable=too-few-public-methods
    """Printer to export the RCG in dot."""

    NAME = "rcg-dot"
    HELP = "Export the Room Connectivity Graph to a dot file"

    def print(self) -> Optional[Path]:
        if self.plan.rcg is None:
            print(f"\n{self.NAME}: {self.plan.name} has no room connectivity graph")
            return None
        os.makedirs(self.dest, exist_ok=True)
        filename = self.dest / Path("rcg.dot")

        print(f"\nRCG exported to file: {filename}")
        rcg_to_dot(self.plan.rcg, filename=filename)
        return filename
