import argparse
import json
from pathlib import Path
from typing import List

import numpy as np
import pytest

from planrag.__main__ import main
from planrag.exceptions import InputError
from planrag.pipeline.splits import read_split
from planrag.postprocess.connectivity import read_rcg
from planrag.printers.all_printers import PrinterRagDot, PrinterRcgDot
from planrag.rag.region_graph import read_graph
from planrag.raster.io import write_gray
from planrag.raster.rasters import GrayRaster
from planrag.utils.command_line.common import (
    choose_by_name,
    config_overrides,
    load_config,
    validate_command_line_options,
)
from planrag.utils.pipeline_config import InvalidPipelineConfiguration, PipelineConfig


def _exit_code(argv: List[str]) -> int:
    with pytest.raises(SystemExit) as err:
        main(argv)
    return int(err.value.code)


def _synth(out: Path, count: int = 2) -> None:
    main(
        [
            "synth",
            "--out",
            str(out),
            "--count",
            str(count),
            "--rooms",
            "2",
            "--canvas",
            "200",
            "--windows",
            "0",
            "--objects",
            "0",
            "--seed",
            "3",
        ]
    )


def test_synth_and_split(tmp_path: Path) -> None:
    data = tmp_path / "data"
    _synth(data)
    for i in range(2):
        stem = data / f"plan_{i:03d}"
        assert stem.with_suffix(".png").is_file()
        assert stem.with_suffix(".svg").is_file()
        topology = json.loads(stem.with_suffix(".topology.json").read_text(encoding="utf-8"))
        assert topology["format_version"] == 1
        assert topology["rooms"] == 2
        assert topology["seed"] == 3 + i
        assert len(topology["doors"]) == 2

    main(["split", "--data", str(data), "--train", "1", "--test", "1", "--validation", "0"])
    split = read_split(data / "split.json")
    assert sorted(split.train + split.test) == ["plan_000.png", "plan_001.png"]
    assert not split.validation


def test_rag_postprocess_render(
    tmp_path: Path, capsys: pytest.CaptureFixture  # type: ignore
) -> None:
    data = tmp_path / "data"
    _synth(data, count=1)
    image = data / "plan_000.png"
    graph_file = tmp_path / "graph.json"

    main(["rag", str(image), "--truth", str(image.with_suffix(".svg")), "--out", str(graph_file)])
    graph = read_graph(graph_file)
    assert graph.is_labeled

    capsys.readouterr()
    main(["features", "--graph", str(graph_file), "--json", "-"])
    document = json.loads(capsys.readouterr().out)
    assert len(document["nodes"]) == len(graph)
    assert all(node["label"] is not None for node in document["nodes"])

    out = tmp_path / "post"
    main(["postprocess", "--graph", str(graph_file), "--out-dir", str(out)])
    rcg = read_rcg(out / "rcg.json")
    assert rcg.rooms
    assert (out / "walls.json").is_file()

    render = tmp_path / "render"
    main(
        [
            "render",
            "rcg-dot,rag-dot,human-summary",
            "--graph",
            str(graph_file),
            "--rcg",
            str(out / "rcg.json"),
            "--walls",
            str(out / "walls.json"),
            "--name",
            "plan",
            "--out-dir",
            str(render),
        ]
    )
    assert (render / "plan" / "rcg.dot").is_file()
    assert (render / "plan" / "rag.dot").is_file()
    assert "Number of rooms" in capsys.readouterr().out


USAGE_ERRORS: List[List[str]] = [
    [],
    ["train"],
    ["eval", "--model", "model.json"],
    ["predict", "--model", "model.json"],
    ["predict", "plan.png", "--graph", "graph.json", "--model", "model.json"],
    ["run", "plan.png"],
    ["rotate-exp", "--model", "model.json"],
    ["rotate-exp", "--test", "data"],
    ["rotate-exp", "--test", "data", "--model", "model.json", "--ratios", "0.1"],
    ["rotate-exp", "--test", "data", "--model", "model.json", "--compare-raw"],
    ["render", "rag-dot"],
]


@pytest.mark.parametrize("test", USAGE_ERRORS)  # type: ignore
def test_usage_errors(test: List[str], capsys: pytest.CaptureFixture) -> None:  # type: ignore
    assert _exit_code(test) == 1
    assert "CommandLineError" in capsys.readouterr().out


def test_input_errors(tmp_path: Path) -> None:
    missing = str(tmp_path / "missing.json")
    assert _exit_code(["postprocess", "--graph", missing]) == 1
    assert _exit_code(["render", "no-such-printer", "--graph", missing]) == 1
    assert _exit_code(["synth", "--out", str(tmp_path), "--threshold", "300"]) == 1
    assert _exit_code(["synth", "--out", str(tmp_path), "--config", missing]) == 1
    assert _exit_code(["split", "--data", str(tmp_path / "nowhere")]) == 1


def test_stage_failure(tmp_path: Path) -> None:
    blank = tmp_path / "blank.png"
    write_gray(GrayRaster(np.full((40, 40), 255, dtype=np.uint8)), blank)
    assert _exit_code(["preprocess", str(blank), "--out", str(tmp_path / "out.png")]) == 2


def test_validate_accepts_complete_options() -> None:
    args = argparse.Namespace(subcommand="run", model=None, truth="plan.svg")
    validate_command_line_options(args)
    args = argparse.Namespace(
        subcommand="rotate-exp", test="data", model=None, train="train", ratios="0.1"
    )
    validate_command_line_options(args)


def test_load_config(tmp_path: Path) -> None:
    (tmp_path / "config.yaml").write_text("threshold: 100\nepochs: 5\n", encoding="utf-8")
    args = argparse.Namespace(
        config=str(tmp_path / "config.yaml"), cfg_epochs="2", cfg_seed=None, out="x"
    )
    assert config_overrides(args) == {"epochs": "2"}
    cfg = load_config(args)
    assert cfg == PipelineConfig(threshold=100, epochs=2)
    assert load_config(argparse.Namespace()) == PipelineConfig()
    with pytest.raises(InvalidPipelineConfiguration):
        load_config(argparse.Namespace(cfg_grid_D="8"))


def test_choose_by_name() -> None:
    printers = [PrinterRagDot, PrinterRcgDot]
    assert choose_by_name("printer", printers, "rcg-dot, rag-dot") == [PrinterRcgDot, PrinterRagDot]
    with pytest.raises(InputError):
        choose_by_name("printer", printers, "rag-dot,png")
