"""Printer to print human readable summary of a plan.

Summary includes :
* Number of regions and RAG edges.
* Number of regions and total area of every class, when labeled.
* Number of rooms and doors, and the degree of every door.
* Number of separation lines and wall segments, fallback segments included.
"""

from pathlib import Path
from typing import Dict, Optional

from prettytable import PrettyTable

from planrag.geometry.operations import area
from planrag.printers.abstract_printer import AbstractPrinter
from planrag.rag.labels import ALL_LABELS, ClassLabel


# pylint: disable=too-few-public-methods
class PrinterHumanSummary(AbstractPrinter):
    """Printer to print summary of the plan"""

    NAME = "human-summary"
    HELP = "Print a human-readable summary of the plan"

    def _class_table(self) -> Optional[PrettyTable]:
        graph = self.plan.graph
        if graph is None or not graph.is_labeled:
            return None
        counts: Dict[ClassLabel, int] = {label: 0 for label in ALL_LABELS}
        areas: Dict[ClassLabel, float] = {label: 0.0 for label in ALL_LABELS}
        for region in graph.regions:
            label = graph.label(region.id)
            counts[label] += 1
            areas[label] += region.area
        table = PrettyTable(["Class", "Regions", "Area (px)"])
        for label in ALL_LABELS:
            table.add_row([label.name, counts[label], f"{areas[label]:.0f}"])
        return table

    def print(self) -> Optional[Path]:
        """Print summary of the plan to stdout."""
        plan = self.plan

        txt = "\n"
        txt += f"Plan: {plan.name}\n"
        if plan.graph is not None:
            txt += f"Number of regions: {len(plan.graph)}\n"
            txt += f"Number of RAG edges: {len(plan.graph.edges)}\n"
        table = self._class_table()
        if table is not None:
            txt += f"{table}\n"
        if plan.rcg is not None:
            txt += f"Number of rooms: {len(plan.rcg.rooms)}\n"
            txt += f"Number of doors: {len(plan.rcg.doors)}\n"
            for door in plan.rcg.doors:
                places = ", ".join(str(p) for p in plan.rcg.places_of(door.id))
                txt += f"\tdoor {door.id}: {places}\n"
        if plan.walls is not None:
            fallback = sum(1 for s in plan.walls.segments if s.fallback)
            wall_area = sum(area(p) for p in plan.walls.wall)
            txt += f"Wall area: {wall_area:.0f}\n"
            txt += f"Number of separation lines: {len(plan.walls.lines)}\n"
            txt += f"Number of wall segments: {len(plan.walls.segments)} ({fallback} fallback)\n"
        print(txt)
        return None
