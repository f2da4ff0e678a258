"""Entry point of **planrag** when executed as a script.

Planrag digitizes raster floor plans. An image is binarized, reduced to
the building it shows and vectorized into a Region Adjacency Graph (RAG)
whose nodes carry Zernike moment features. A node classifier labels the
regions; post-processing then merges the labeled regions into rooms,
pairs the door regions, builds the Room Connectivity Graph (RCG) and
partitions the walls into convex segments.

Classifiers and printers are pluggable. Planrag comes with a builtin
message passing classifier and printers for SVG overlays, dot graphs and
terminal summaries; plugins add more through the ``planrag.plugin``
entry point group.

Once installed, planrag adds a command ``planrag`` to the system which will
invoke the ``main()`` function when executed. Every step of the pipeline
is a subcommand:

* ``synth``: generate synthetic plans with their ground truth.
* ``split``: seed-deterministic train/test/validation split of a dataset.
* ``preprocess``: building filter, with optional stage dumps.
* ``rag``: Region Adjacency Graph of an image, optionally labeled from an SVG.
* ``features``: dump the node features of a graph.
* ``train``: train a classifier on a labeled dataset.
* ``predict``: label a graph or an image with a trained model.
* ``postprocess``: rooms, RCG and wall segments of a labeled graph.
* ``run``: every stage on one image.
* ``eval``: F1 and IoU of a model on a labeled dataset.
* ``rotate-exp``: rotation robustness experiment.
* ``render``: run printers on saved artifacts.

Every pipeline parameter can be set in a YAML configuration file
(``--config``) and overridden with a flag of the same name
(``--refine-radius 4``).

Exit codes: 0 on success, 1 on input errors, 2 when a pipeline stage fails.
"""

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Type

from pkg_resources import require  # type: ignore

from planrag.classifiers.abstract_classifier import AbstractClassifier, read_model, write_model
from planrag.classifiers.metrics import collapse_labels, evaluate_many, parse_class_list
from planrag.classifiers.training import train
from planrag.exceptions import InputError, PlanragException
from planrag.pipeline.experiments import (
    LabeledPlan,
    labeled_graph,
    ratio_sweep,
    rotation_experiment,
)
from planrag.pipeline.orchestrator import map_in_order, run_pipeline
from planrag.pipeline.splits import plan_names, read_split, split_plans, write_split
from planrag.pipeline.svg_io import SvgLayers, export_svg, import_labeled_svg
from planrag.pipeline.synthetic import SyntheticPlanSpec, generate_plan
from planrag.planrag import Planrag
from planrag.postprocess.connectivity import read_rcg, write_rcg
from planrag.postprocess.postprocessing import postprocess, read_walls, write_walls
from planrag.preprocess.building_filter import dump_stages, preprocess_stages
from planrag.preprocess.text_boxes import TextBox, detect_text_boxes, read_text_boxes
from planrag.printers.abstract_printer import AbstractPrinter
from planrag.rag.region_graph import RegionGraph, read_graph, write_graph
from planrag.rag.relabel import relabel_by_iou
from planrag.rag.vectorize import build_rag
from planrag.raster.io import read_gray, write_binary, write_gray
from planrag.raster.operations import binarize
from planrag.raster.rasters import GrayRaster
from planrag.utils.command_line.command_output import output_classifiers, output_printers
from planrag.utils.command_line.common import (
    CONFIG_DEST_PREFIX,
    choose_by_name,
    get_classifiers_and_printers,
    load_config,
    load_labeled_plans,
    validate_command_line_options,
)
from planrag.utils.output import ROOT_OUTPUT_DIRECTORY, PlanArtifacts
from planrag.utils.pipeline_config import InvalidPipelineConfiguration, PipelineConfig

LOGGER_NAMES = (
    "Preprocess",
    "Vectorize",
    "Features",
    "Training",
    "Postprocess",
    "Pipeline",
    "Planrag",
)

EXIT_INPUT_ERROR = 1
EXIT_STAGE_FAILURE = 2

# invariant ratios trained by rotate-exp when --ratios is omitted
DEFAULT_RATIOS = (300.0, 1.0 / 3.0, 1.0 / 80.0)


def config_options(parser: argparse.ArgumentParser) -> None:
    """
    Add the configuration file flag and one override flag per configuration field

    Args:
        parser: the parser to update
    """

    parser.add_argument(
        "--config",
        help="YAML (or JSON) pipeline configuration file",
        action="store",
        default=None,
    )
    group = parser.add_argument_group("Configuration overrides")
    defaults = PipelineConfig()
    for name in PipelineConfig.field_names():
        group.add_argument(
            f"--{name.replace('_', '-')}",
            help=f"defaults to {getattr(defaults, name)}",
            action="store",
            dest=f"{CONFIG_DEST_PREFIX}{name}",
            default=None,
        )


def image_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--text-boxes", help="JSON file with text boxes to erase", default=None)
    parser.add_argument(
        "--detect-text",
        help="Erase small isolated ink components (a size heuristic, not text recognition)",
        action="store_true",
        default=False,
    )


def json_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--json",
        help='Export the results as a JSON file ("--json -" to export to stdout)',
        action="store",
        default=None,
    )


def parse_args(  # pylint: disable=too-many-statements
    classifier_classes: List[Type[AbstractClassifier]],
    printer_classes: List[Type[AbstractPrinter]],
    argv: Optional[Sequence[str]] = None,
) -> argparse.Namespace:
    """parse command line arguments of planrag.

    Args:
        classifier_classes: list of classifiers available to planrag. Used to display
            available classifiers in the train command help message.
        printer_classes: list of printers available to planrag. Used to display
            available printers in the render command help message.
        argv: arguments to parse, ``sys.argv`` when omitted.

    Returns:
        Namespace object representing the parsed command line arguments.
    """

    parser = argparse.ArgumentParser(
        description="Floor-plan digitization with region adjacency graphs",
        usage="planrag [synth | preprocess | rag | train | predict | run | ...] ...",
    )

    subparsers = parser.add_subparsers(dest="subcommand")

    group_synth = subparsers.add_parser("synth", help="Generate synthetic plans")
    group_synth.add_argument("--out", help="Output directory", default="synthetic")
    group_synth.add_argument("--count", help="Number of plans", type=int, default=1)
    group_synth.add_argument("--rooms", type=int, default=SyntheticPlanSpec.rooms)
    group_synth.add_argument("--canvas", type=int, default=SyntheticPlanSpec.canvas)
    group_synth.add_argument("--wall-width", type=int, default=SyntheticPlanSpec.wall_width)
    group_synth.add_argument("--door-width", type=int, default=SyntheticPlanSpec.door_width)
    group_synth.add_argument("--windows", type=int, default=SyntheticPlanSpec.window_count)
    group_synth.add_argument("--rotation", type=float, default=SyntheticPlanSpec.rotation)
    group_synth.add_argument("--margin", type=int, default=SyntheticPlanSpec.margin)
    group_synth.add_argument("--objects", type=int, default=SyntheticPlanSpec.objects)
    group_synth.add_argument("--stairs", type=int, default=SyntheticPlanSpec.stairs)
    group_synth.add_argument("--porch", action="store_true", default=False)
    config_options(group_synth)

    group_split = subparsers.add_parser("split", help="Split a dataset directory")
    group_split.add_argument("--data", help="Dataset directory", required=True)
    group_split.add_argument("--train", help="Count or fraction", default="280")
    group_split.add_argument("--test", help="Count or fraction", default="80")
    group_split.add_argument("--validation", help="Count or fraction", default="40")
    group_split.add_argument("--out", help="Output file, defaults to DATA/split.json")
    config_options(group_split)

    group_preprocess = subparsers.add_parser("preprocess", help="Run the building filter")
    group_preprocess.add_argument("image", help="Plan image")
    group_preprocess.add_argument("--out", help="Filtered binary image", default=None)
    group_preprocess.add_argument("--dump-dir", help="Write every intermediate stage here")
    image_options(group_preprocess)
    config_options(group_preprocess)

    group_rag = subparsers.add_parser("rag", help="Build the Region Adjacency Graph")
    group_rag.add_argument("image", help="Plan image")
    group_rag.add_argument("--truth", help="Labeled SVG; labels the nodes by IoU")
    group_rag.add_argument("--out", help="Graph file", default=None)
    image_options(group_rag)
    config_options(group_rag)

    group_features = subparsers.add_parser("features", help="Dump the node features")
    group_features.add_argument("--graph", help="Graph file", required=True)
    group_features.add_argument("--out", help="CSV file, '-' for stdout", default="-")
    json_option(group_features)

    available_classifiers = ", ".join(c.NAME for c in classifier_classes)
    group_train = subparsers.add_parser("train", help="Train a classifier")
    group_train.add_argument("--data", help="Dataset directory (images + SVG truth)")
    group_train.add_argument("--split", help="split.json selecting train and validation plans")
    group_train.add_argument(
        "--classifier",
        help=f"Classifier to train, available classifiers: {available_classifiers}",
        default="distance-weighted",
    )
    group_train.add_argument("--out", help="Model file", default="model.json")
    group_train.add_argument(
        "--list-classifiers",
        help="List available classifiers",
        action=ListClassifiers,
        nargs=0,
        default=False,
    )
    config_options(group_train)

    group_predict = subparsers.add_parser("predict", help="Label a graph with a model")
    group_predict.add_argument("image", help="Plan image", nargs="?", default=None)
    group_predict.add_argument("--graph", help="Unlabeled graph file")
    group_predict.add_argument("--model", help="Model file", required=True)
    group_predict.add_argument("--out", help="Labeled graph file", default=None)
    image_options(group_predict)
    config_options(group_predict)

    group_post = subparsers.add_parser("postprocess", help="Rooms, RCG and wall segments")
    group_post.add_argument("--graph", help="Labeled graph file", required=True)
    group_post.add_argument("--out-dir", help="Output directory", default=None)
    config_options(group_post)

    group_run = subparsers.add_parser("run", help="Run every stage on one image")
    group_run.add_argument("image", help="Plan image")
    group_run.add_argument("--model", help="Model file")
    group_run.add_argument("--truth", help="Labeled SVG used instead of a model")
    group_run.add_argument("--out-dir", help="Output directory", default=None)
    image_options(group_run)
    config_options(group_run)

    group_eval = subparsers.add_parser("eval", help="Score a model on a labeled dataset")
    group_eval.add_argument("--data", help="Dataset directory (images + SVG truth)")
    group_eval.add_argument("--split", help="split.json; its test plans are scored")
    group_eval.add_argument("--model", help="Model file", required=True)
    group_eval.add_argument(
        "--collapse-to-room",
        help="Comma-separated classes scored as room in prediction and truth",
        default=None,
    )
    json_option(group_eval)
    config_options(group_eval)

    group_rotate = subparsers.add_parser("rotate-exp", help="Rotation robustness experiment")
    group_rotate.add_argument("--train", help="Training dataset directory")
    group_rotate.add_argument("--test", help="Test dataset directory")
    group_rotate.add_argument("--model", help="Model to score instead of training new ones")
    group_rotate.add_argument("--angle", help="Rotation in degrees", type=float, default=45.0)
    group_rotate.add_argument(
        "--ratios",
        help="Comma-separated invariant ratios, one model each (default 300,0.3333,0.0125)",
        default=None,
    )
    group_rotate.add_argument(
        "--compare-raw",
        help="Add a model trained on raw, unnormalized moments",
        action="store_true",
        default=False,
    )
    json_option(group_rotate)
    config_options(group_rotate)

    available_printers = ", ".join(p.NAME for p in printer_classes)
    group_render = subparsers.add_parser("render", help="Use a printer")
    group_render.add_argument(
        "printers_to_run",
        action="store",
        help=f"Comma-separated list of printers to use. Available printers: {available_printers}",
    )
    group_render.add_argument("--graph", help="Graph file")
    group_render.add_argument("--rcg", help="Room connectivity graph file")
    group_render.add_argument("--walls", help="Wall layout file")
    group_render.add_argument("--name", help="Plan name, defaults to the file name")
    group_render.add_argument("--out-dir", help="Output directory", default=None)
    group_render.add_argument(
        "--list-printers",
        help="List available printers",
        action=ListPrinters,
        nargs=0,
        default=False,
    )

    parser.add_argument(
        "--version",
        help="displays the current version",
        version=require("planrag")[0].version,
        action="version",
    )

    parser.add_argument("--debug", help=argparse.SUPPRESS, action="store_true", default=False)

    if argv is None and len(sys.argv) == 1:
        parser.print_help(sys.stderr)
        sys.exit(EXIT_INPUT_ERROR)

    args = parser.parse_args(argv)

    return args


class ListClassifiers(argparse.Action):  # pylint: disable=too-few-public-methods
    """Argparse Action class to display available classifiers.

    This Action will be invoked if ``--list-classifiers`` command line
    argument is selected. Upon invocation, prints a table listing the available
    classifiers along with their name and description.
    """

    def __call__(
        self, parser: argparse.ArgumentParser, *args: Any, **kwargs: Any
    ) -> None:  # pylint: disable=signature-differs
        classifiers, _ = get_classifiers_and_printers()
        output_classifiers(classifiers)
        parser.exit()


class ListPrinters(argparse.Action):  # pylint: disable=too-few-public-methods
    """Argparse Action class to display available printers.

    This Action will be invoked if ``--list-printers`` command line
    argument is selected. Upon invocation, prints a table listing the available
    printers along with their name and description.
    """

    def __call__(
        self, parser: argparse.ArgumentParser, *args: Any, **kwargs: Any
    ) -> None:  # pylint: disable=signature-differs
        _, printers = get_classifiers_and_printers()
        output_printers(printers)
        parser.exit()


def output_json(target: str, data: Dict[str, Any], default_dir: Path) -> None:
    text = json.dumps(data, sort_keys=True, indent=2)
    if target == "-":
        print(text)
        return
    filename = Path(target)
    if not filename.is_absolute() and filename.parent == Path("."):
        filename = default_dir / filename
    filename.parent.mkdir(parents=True, exist_ok=True)
    print(f"json output is written to {filename}")
    with open(filename, "w", encoding="utf-8") as f:
        f.write(text)


def _plan_name(path: str) -> str:
    return Path(path).stem.lower()


def _text_boxes(args: argparse.Namespace, img: GrayRaster, cfg: PipelineConfig) -> List[TextBox]:
    boxes = read_text_boxes(args.text_boxes) if args.text_boxes else []
    if args.detect_text:
        boxes += detect_text_boxes(binarize(img, cfg.threshold))
    return boxes


def _image_graph(args: argparse.Namespace, cfg: PipelineConfig) -> RegionGraph:
    img = read_gray(args.image)
    stages = preprocess_stages(img, _text_boxes(args, img, cfg), cfg)
    return build_rag(stages.filtered, cfg)


def handle_synth(args: argparse.Namespace, cfg: PipelineConfig) -> None:
    out = Path(args.out)
    for i in range(args.count):
        spec = SyntheticPlanSpec(
            rooms=args.rooms,
            canvas=args.canvas,
            wall_width=args.wall_width,
            door_width=args.door_width,
            window_count=args.windows,
            rotation=args.rotation,
            seed=cfg.seed + i,
            margin=args.margin,
            objects=args.objects,
            stairs=args.stairs,
            porch=args.porch,
        )
        plan = generate_plan(spec)
        stem = out / f"plan_{i:03d}"
        write_gray(plan.image, stem.with_suffix(".png"))
        export_svg(
            SvgLayers(plan.image.width, plan.image.height, plan.truth), stem.with_suffix(".svg")
        )
        topology = {
            "format_version": 1,
            "rooms": plan.room_count,
            "doors": [list(pair) for pair in plan.doors],
            "seed": spec.seed,
        }
        with open(stem.with_suffix(".topology.json"), "w", encoding="utf-8") as f:
            json.dump(topology, f, sort_keys=True, indent=2)
    print(f"{args.count} synthetic plans written to {out}")


def handle_split(args: argparse.Namespace, cfg: PipelineConfig) -> None:
    split = split_plans(plan_names(args.data), args.train, args.test, args.validation, cfg.seed)
    out = Path(args.out) if args.out else Path(args.data) / "split.json"
    write_split(split, out)
    print(
        f"split written to {out}: {len(split.train)} train, {len(split.test)} test, "
        f"{len(split.validation)} validation"
    )


def handle_preprocess(args: argparse.Namespace, cfg: PipelineConfig) -> None:
    img = read_gray(args.image)
    stages = preprocess_stages(img, _text_boxes(args, img, cfg), cfg)
    out = (
        Path(args.out)
        if args.out
        else ROOT_OUTPUT_DIRECTORY / _plan_name(args.image) / "filtered.png"
    )
    write_binary(stages.filtered, out)
    print(f"filtered plan written to {out}")
    if args.dump_dir:
        dump_stages(stages, Path(args.dump_dir))


def handle_rag(args: argparse.Namespace, cfg: PipelineConfig) -> None:
    graph = _image_graph(args, cfg)
    if args.truth:
        graph = graph.with_labels(relabel_by_iou(graph.regions, import_labeled_svg(args.truth)))
    name = _plan_name(args.image)
    out = Path(args.out) if args.out else ROOT_OUTPUT_DIRECTORY / name / "graph.json"
    write_graph(graph, out)
    print(f"{graph} written to {out}")


def handle_features(args: argparse.Namespace) -> None:
    graph = read_graph(args.graph)
    rows = []
    for idx in graph.node_ids:
        node = graph.node(idx)
        label = graph.labels[idx]
        rows.append(
            {
                "id": idx,
                "degree": node.features.degree,
                "area": node.features.area,
                "zernike": {
                    f"z_{n}_{m}": value
                    for (n, m), value in zip(
                        node.features.zernike.indices, node.features.zernike.amplitudes
                    )
                },
                "label": label.name if label is not None else None,
            }
        )
    if args.json is not None:
        output_json(args.json, {"format_version": 1, "nodes": rows}, Path("."))
        return
    zernike_names = list(rows[0]["zernike"]) if rows else []
    header = ["id", "degree", "area"] + zernike_names + ["label"]
    f = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8", newline="")
    try:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            values = [row["zernike"][name] for name in zernike_names]
            writer.writerow(
                [row["id"], row["degree"], row["area"]] + values + [row["label"] or ""]
            )
    finally:
        if f is not sys.stdout:
            f.close()


def _dataset(args: argparse.Namespace, part: str) -> List[LabeledPlan]:
    data = Path(args.data)
    names: Optional[List[str]] = None
    if getattr(args, "split", None):
        names = getattr(read_split(args.split), part)
    return [plan for _, plan in load_labeled_plans(data, names)]


def handle_train(
    args: argparse.Namespace,
    cfg: PipelineConfig,
    classifier_classes: List[Type[AbstractClassifier]],
) -> None:
    classifier_class = choose_by_name("classifier", classifier_classes, args.classifier)[0]
    plans = _dataset(args, "train")
    validation_plans = _dataset(args, "validation") if args.split else []

    def graph(plan: LabeledPlan) -> RegionGraph:
        return labeled_graph(plan, cfg)

    graphs = map_in_order(graph, plans, cfg.workers)
    validation = map_in_order(graph, validation_plans, cfg.workers) or None
    model = train(graphs, validation=validation, cfg=cfg, classifier_class=classifier_class)
    write_model(model, args.out)
    final = model.loss_history[-1] if model.loss_history else float("nan")
    print(f"model written to {args.out} (final loss {final:.4f})")


def handle_predict(
    args: argparse.Namespace,
    cfg: PipelineConfig,
    classifier_classes: List[Type[AbstractClassifier]],
) -> None:
    model = read_model(args.model, classifier_classes)
    if args.image is not None:
        # features must be computed the way the model was trained
        graph = _image_graph(args, model.cfg.with_overrides({"threshold": cfg.threshold}))
        name = _plan_name(args.image)
    else:
        graph = read_graph(args.graph)
        name = _plan_name(args.graph)
    labeled = graph.with_labels(model.predict(graph))
    out = Path(args.out) if args.out else ROOT_OUTPUT_DIRECTORY / name / "labeled_graph.json"
    write_graph(labeled, out)
    print(f"labeled graph written to {out}")


def handle_postprocess(args: argparse.Namespace, cfg: PipelineConfig) -> None:
    graph = read_graph(args.graph)
    if not graph.is_labeled:
        raise InputError(f"{args.graph}: postprocessing needs a labeled graph")
    result = postprocess(graph, cfg)
    out = Path(args.out_dir) if args.out_dir else ROOT_OUTPUT_DIRECTORY / _plan_name(args.graph)
    write_rcg(result.rcg, out / "rcg.json")
    write_walls(result.walls, out / "walls.json")
    print(
        f"{len(result.rcg.rooms)} rooms, {len(result.rcg.doors)} doors, "
        f"{len(result.walls.segments)} wall segments written to {out}"
    )


def handle_run(
    args: argparse.Namespace,
    cfg: PipelineConfig,
    classifier_classes: List[Type[AbstractClassifier]],
) -> None:
    img = read_gray(args.image)
    model = read_model(args.model, classifier_classes) if args.model else None
    truth = import_labeled_svg(args.truth) if args.truth else None
    out = Path(args.out_dir) if args.out_dir else ROOT_OUTPUT_DIRECTORY / _plan_name(args.image)
    result = run_pipeline(img, _text_boxes(args, img, cfg), cfg, model, truth, out)
    print(
        f"{len(result.graph)} regions, {len(result.rcg.rooms)} rooms, "
        f"{len(result.rcg.doors)} doors; artifacts written to {out}"
    )


def handle_eval(
    args: argparse.Namespace,
    cfg: PipelineConfig,
    classifier_classes: List[Type[AbstractClassifier]],
) -> None:
    model = read_model(args.model, classifier_classes)
    collapse = parse_class_list(args.collapse_to_room) if args.collapse_to_room else []
    plans = _dataset(args, "test")

    def scored(plan: LabeledPlan) -> Any:
        graph = labeled_graph(plan, model.cfg)
        truth = {idx: graph.label(idx) for idx in graph.node_ids}
        pred = model.predict(graph)
        areas = {region.id: region.area for region in graph.regions}
        return collapse_labels(pred, collapse), collapse_labels(truth, collapse), areas

    report = evaluate_many(map_in_order(scored, plans, cfg.workers))
    print(report.table(f"{model.NAME} on {len(plans)} plans"))
    print(f"node accuracy: {100 * report.accuracy:.2f}")
    if args.json is not None:
        output_json(args.json, {"format_version": 1, "report": report.to_json()}, Path("."))


def handle_rotate_exp(
    args: argparse.Namespace,
    cfg: PipelineConfig,
    classifier_classes: List[Type[AbstractClassifier]],
) -> None:
    test_plans = [plan for _, plan in load_labeled_plans(Path(args.test))]
    results: Dict[str, Any] = {}
    if args.model:
        model = read_model(args.model, classifier_classes)
        report = rotation_experiment(test_plans, model, args.angle, cfg)
        print(report.table(model.NAME))
        results[model.NAME] = report.to_json()
    else:
        train_plans = [plan for _, plan in load_labeled_plans(Path(args.train))]
        try:
            ratios = (
                [float(r) for r in args.ratios.split(",")]
                if args.ratios
                else list(DEFAULT_RATIOS)
            )
        except ValueError as err:
            raise InputError(f"--ratios: {err}") from err
        arms = ratio_sweep(train_plans, test_plans, ratios, cfg, args.angle, args.compare_raw)
        for arm in arms:
            print(arm.report.table(arm.name))
            results[arm.name] = arm.report.to_json()
    if args.json is not None:
        output_json(args.json, {"format_version": 1, "arms": results}, Path("."))


def handle_render(args: argparse.Namespace, printer_classes: List[Type[AbstractPrinter]]) -> None:
    printers = choose_by_name("printer", printer_classes, args.printers_to_run)
    first = args.graph or args.rcg or args.walls
    name = args.name or _plan_name(first)
    plan = PlanArtifacts(
        name,
        read_graph(args.graph) if args.graph else None,
        read_rcg(args.rcg) if args.rcg else None,
        read_walls(args.walls) if args.walls else None,
    )
    planrag = Planrag({name: plan}, Path(args.out_dir) if args.out_dir else None)
    for printer_cls in printers:
        planrag.register_printer(printer_cls)
    planrag.run_printers()


def dispatch(
    args: argparse.Namespace,
    classifier_classes: List[Type[AbstractClassifier]],
    printer_classes: List[Type[AbstractPrinter]],
) -> None:
    """Run the selected subcommand."""
    if args.subcommand == "features":
        handle_features(args)
        return
    if args.subcommand == "render":
        handle_render(args, printer_classes)
        return

    cfg = load_config(args)
    if args.subcommand == "synth":
        handle_synth(args, cfg)
    elif args.subcommand == "split":
        handle_split(args, cfg)
    elif args.subcommand == "preprocess":
        handle_preprocess(args, cfg)
    elif args.subcommand == "rag":
        handle_rag(args, cfg)
    elif args.subcommand == "train":
        handle_train(args, cfg, classifier_classes)
    elif args.subcommand == "predict":
        handle_predict(args, cfg, classifier_classes)
    elif args.subcommand == "postprocess":
        handle_postprocess(args, cfg)
    elif args.subcommand == "run":
        handle_run(args, cfg, classifier_classes)
    elif args.subcommand == "eval":
        handle_eval(args, cfg, classifier_classes)
    elif args.subcommand == "rotate-exp":
        handle_rotate_exp(args, cfg, classifier_classes)
    else:
        print(f"{args.subcommand} not implemented")


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Entry point of the planrag tool.

    This function is called when planrag command is executed or planrag is
    executed as a script. This function directs execution flow of the tool
    based on the command line arguments given by the user.

    Args:
        argv: command line arguments, ``sys.argv`` when omitted.
    """

    classifier_classes, printer_classes = get_classifiers_and_printers()
    args = parse_args(classifier_classes, printer_classes, argv)
    validate_command_line_options(args)

    logging.basicConfig(format="%(name)s: %(message)s")
    default_log = logging.INFO if not args.debug else logging.DEBUG
    for logger_name in LOGGER_NAMES:
        logger = logging.getLogger(logger_name)
        logger.setLevel(default_log)

    try:
        dispatch(args, classifier_classes, printer_classes)
    except (InputError, InvalidPipelineConfiguration) as e:
        print(f"Error: {e}")
        sys.exit(EXIT_INPUT_ERROR)
    except PlanragException as e:
        print(f"Error: {e}")
        sys.exit(EXIT_STAGE_FAILURE)


if __name__ == "__main__":
    main()
