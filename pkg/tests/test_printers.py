from pathlib import Path
from typing import List, Optional, Type

import pytest

from planrag.classifiers.all_classifiers import DistanceWeightedNetwork
from planrag.exceptions import PlanragException
from planrag.planrag import Planrag
from planrag.postprocess.postprocessing import postprocess
from planrag.printers.abstract_printer import AbstractPrinter, IncorrectPrinterInitialization
from planrag.printers.all_printers import (
    PrinterHumanSummary,
    PrinterRagDot,
    PrinterRcgDot,
    PrinterSvgOverlay,
)
from planrag.utils.command_line.command_output import output_classifiers, output_printers
from planrag.utils.output import ROOT_OUTPUT_DIRECTORY, PlanArtifacts, rag_to_dot, rcg_to_dot

from tests.utils import two_room_plan

ALL_PRINTERS: List[Type[AbstractPrinter]] = [
    PrinterHumanSummary,
    PrinterSvgOverlay,
    PrinterRagDot,
    PrinterRcgDot,
]


def _artifacts(name: str = "plan") -> PlanArtifacts:
    graph = two_room_plan()
    result = postprocess(graph)
    return PlanArtifacts(name, graph, result.rcg, result.walls)


def test_rag_to_dot() -> None:
    dot = rag_to_dot(two_room_plan())
    assert dot is not None
    assert dot.startswith("graph rag{")
    assert '3 [label="3 room"' in dot
    assert "3 -- 7" in dot
    assert dot.count(" -- ") == 17


def test_rcg_to_dot(tmp_path: Path) -> None:
    rcg = _artifacts().rcg
    assert rcg is not None
    dot = rcg_to_dot(rcg)
    assert dot is not None
    assert "shape=diamond" in dot
    assert "shape=doubleoctagon" in dot
    for place, door in [(1, 5), (3, 5), (3, 7), (4, 7)]:
        assert f"{place} -- {door};" in dot
    assert rcg_to_dot(rcg, filename=tmp_path / "rcg.dot") is None
    assert (tmp_path / "rcg.dot").read_text(encoding="utf-8") == dot


def test_canvas() -> None:
    assert PlanArtifacts("a", size=(10, 20)).canvas() == (10, 20)
    assert PlanArtifacts("a").canvas() == (0, 0)
    assert _artifacts().canvas() == (50, 40)


def test_file_printers(tmp_path: Path) -> None:
    plan = _artifacts()
    expected = {
        PrinterSvgOverlay: "overlay.svg",
        PrinterRagDot: "rag.dot",
        PrinterRcgDot: "rcg.dot",
    }
    for printer_class, filename in expected.items():
        written = printer_class(plan, tmp_path).print()
        assert written == tmp_path / filename
        assert written.is_file()
    svg = (tmp_path / "overlay.svg").read_text(encoding="utf-8")
    assert svg.lstrip().startswith("<")
    assert "svg" in svg


def test_printers_skip_missing_artifacts(tmp_path: Path) -> None:
    empty = PlanArtifacts("empty")
    for printer_class in [PrinterSvgOverlay, PrinterRagDot, PrinterRcgDot]:
        assert printer_class(empty, tmp_path).print() is None
    assert not list(tmp_path.iterdir())


def test_human_summary(capsys: pytest.CaptureFixture) -> None:  # type: ignore
    assert PrinterHumanSummary(_artifacts("two-rooms")).print() is None
    out = capsys.readouterr().out
    assert "Plan: two-rooms" in out
    assert "Number of regions: 12" in out
    assert "Number of rooms: 2" in out
    assert "Number of doors: 2" in out
    assert "door 7: 3, 4" in out
    assert "Number of wall segments" in out


def test_default_destination() -> None:
    printer = PrinterRagDot(PlanArtifacts("somewhere"))
    assert printer.dest == ROOT_OUTPUT_DIRECTORY / "somewhere"


def test_printer_without_help() -> None:
    class NoHelp(AbstractPrinter):  # pylint: disable=too-few-public-methods
        NAME = "no-help"

        def print(self) -> Optional[Path]:
            return None

    with pytest.raises(IncorrectPrinterInitialization):
        NoHelp(PlanArtifacts("plan"))


def test_planrag_runs_printers(tmp_path: Path) -> None:
    plans = {"b": _artifacts("b"), "a": PlanArtifacts("a")}
    tool = Planrag(plans, tmp_path)
    tool.register_printer(PrinterRagDot)
    assert [p.plan.name for p in tool.printers] == ["a", "b"]
    results = tool.run_printers()
    assert results == [None, tmp_path / "b" / "rag.dot"]
    assert (tmp_path / "b" / "rag.dot").is_file()


def test_planrag_registration_errors() -> None:
    tool = Planrag({"a": PlanArtifacts("a")})
    tool.register_printer(PrinterRcgDot)
    with pytest.raises(PlanragException):
        tool.register_printer(PrinterRcgDot)
    with pytest.raises(PlanragException):
        tool.register_printer(AbstractPrinter)
    with pytest.raises(PlanragException):
        tool.register_printer(DistanceWeightedNetwork)  # type: ignore


def test_output_tables(capsys: pytest.CaptureFixture) -> None:  # type: ignore
    output_printers(ALL_PRINTERS)
    out = capsys.readouterr().out
    for printer_class in ALL_PRINTERS:
        assert printer_class.NAME in out
    assert out.index("human-summary") < out.index("svg-overlay")

    output_classifiers([DistanceWeightedNetwork])
    out = capsys.readouterr().out
    assert DistanceWeightedNetwork.NAME in out
    assert "What it Does" in out
