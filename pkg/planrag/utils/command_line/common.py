"""Helpers of the command line: plugin discovery, option validation, plan loading.

A dataset directory holds plan images; the ground truth of ``plan.png``
is the labeled SVG ``plan.svg`` next to it.

Functions:
    collect_plugins() -> (classifiers, printers)
    get_classifiers_and_printers() -> (classifiers, printers)
    validate_command_line_options(args) -> None
    load_config(args) -> PipelineConfig
    load_labeled_plans(directory, names) -> List[Tuple[str, LabeledPlan]]
"""

import argparse
import inspect
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type

from pkg_resources import iter_entry_points  # type: ignore

from planrag.classifiers import all_classifiers
from planrag.classifiers.abstract_classifier import AbstractClassifier
from planrag.exceptions import InputError, PlanragException
from planrag.pipeline.experiments import LabeledPlan
from planrag.pipeline.splits import plan_names
from planrag.pipeline.svg_io import import_labeled_svg
from planrag.printers import all_printers
from planrag.printers.abstract_printer import AbstractPrinter
from planrag.raster.io import read_gray
from planrag.utils.pipeline_config import PipelineConfig, read_config_from_file

# prefix of the argparse destinations holding configuration overrides
CONFIG_DEST_PREFIX = "cfg_"


def collect_plugins() -> Tuple[List[Type[AbstractClassifier]], List[Type[AbstractPrinter]]]:
    """collect classifiers and printers installed in form of plugins.

    plugins are collected using the entry point group `planrag.plugin`.
    The entry point of each plugin has to return tuple containing list of classifiers and
    list of printers defined in the plugin when called.

    Returns:
        (Tuple[List[Type[AbstractClassifier]], List[Type[AbstractPrinter]]]): classifiers and
        printers added in the form of plugins.

    Raises:
        PlanragException: raises exception if a plugin's classifier is not a subclass of
            AbstractClassifier or if a plugin's printer is not a subclass of AbstractPrinter.
    """
    classifier_classes: List[Type[AbstractClassifier]] = []
    printer_classes: List[Type[AbstractPrinter]] = []
    for entry_point in iter_entry_points(group="planrag.plugin", name=None):
        make_plugin = entry_point.load()

        plugin_classifiers, plugin_printers = make_plugin()
        for classifier in plugin_classifiers:
            if not (inspect.isclass(classifier) and issubclass(classifier, AbstractClassifier)):
                raise PlanragException(
                    f"Error when loading plugin {entry_point}, {classifier} is not a classifier"
                )
        for printer in plugin_printers:
            if not (inspect.isclass(printer) and issubclass(printer, AbstractPrinter)):
                raise PlanragException(
                    f"Error when loading plugin {entry_point}, {printer} is not a printer"
                )

        classifier_classes += plugin_classifiers
        printer_classes += plugin_printers

    return classifier_classes, printer_classes


def get_classifiers_and_printers() -> Tuple[
    List[Type[AbstractClassifier]], List[Type[AbstractPrinter]]
]:
    """Get list of classifiers and printers available to planrag.

    Classifiers, Printers are considered available to planrag either if they
    are defined in planrag itself or if they are defined in one of the
    planrag plugins installed in the system.

    Returns:
        list of classifiers, list of printers defined in planrag and plugins
        combined.
    """

    classifier_classes = [getattr(all_classifiers, name) for name in dir(all_classifiers)]
    classifier_classes = [
        c
        for c in classifier_classes
        if inspect.isclass(c) and issubclass(c, AbstractClassifier) and c is not AbstractClassifier
    ]

    printer_classes = [getattr(all_printers, name) for name in dir(all_printers)]
    printer_classes = [
        p
        for p in printer_classes
        if inspect.isclass(p) and issubclass(p, AbstractPrinter) and p is not AbstractPrinter
    ]

    plugins_classifiers, plugins_printers = collect_plugins()

    classifier_classes += plugins_classifiers
    printer_classes += plugins_printers

    return classifier_classes, printer_classes


def print_and_exit(message: str) -> None:
    print(f"CommandLineError: {message}")
    sys.exit(1)


# pylint: disable=too-many-branches
def validate_command_line_options(args: argparse.Namespace) -> None:
    """Validate command line options and print message and exit the program

    - a subcommand is required
    - train, eval and rotate-exp need a dataset (--data, or --train/--test for rotate-exp)
    - predict takes exactly one of an image or --graph
    - run needs one of --model or --truth
    - render needs at least one of --graph, --rcg or --walls

    Args:
        args: Command line arguments
    """

    if not args.subcommand:
        print_and_exit(
            "Use one of these subcommand: synth | preprocess | rag | features | train | "
            "predict | postprocess | run | eval | rotate-exp | render | split"
        )

    if args.subcommand in ("train", "eval") and args.data is None:
        print_and_exit(f"{args.subcommand} requires --data")
    elif args.subcommand == "predict":
        if (args.image is None) == (args.graph is None):
            print_and_exit("predict takes exactly one of an image or --graph")
    elif args.subcommand == "run":
        if args.model is None and args.truth is None:
            print_and_exit("run requires one of --model or --truth")
    elif args.subcommand == "rotate-exp":
        if args.test is None:
            print_and_exit("rotate-exp requires --test")
        if args.model is None and args.train is None:
            print_and_exit("rotate-exp requires --model or --train")
        if args.model is not None and (args.ratios is not None or args.compare_raw):
            print_and_exit("--ratios and --compare-raw train their own models, drop --model")
    elif args.subcommand == "render":
        if args.graph is None and args.rcg is None and args.walls is None:
            print_and_exit("render requires one of --graph, --rcg or --walls")


def config_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        key[len(CONFIG_DEST_PREFIX) :]: value
        for key, value in vars(args).items()
        if key.startswith(CONFIG_DEST_PREFIX) and value is not None
    }


def load_config(args: argparse.Namespace) -> PipelineConfig:
    """The configuration file, if any, with the command line overrides applied.

    Raises:
        InvalidPipelineConfiguration: on an unreadable file or a bad value.
    """
    config_file = getattr(args, "config", None)
    cfg = read_config_from_file(Path(config_file)) if config_file else PipelineConfig()
    return cfg.with_overrides(config_overrides(args))


def truth_path(image: Path) -> Path:
    return image.with_suffix(".svg")


def load_labeled_plans(
    directory: Path, names: Optional[Sequence[str]] = None
) -> List[Tuple[str, LabeledPlan]]:
    """Read the images of a dataset directory with their SVG ground truth.

    Args:
        directory: dataset directory.
        names: image file names to load; every image when omitted.

    Returns:
        (name, plan) pairs, in the order of ``names``.

    Raises:
        InputError: if an image has no ground truth or nothing is found.
    """
    names = list(names) if names is not None else plan_names(directory)
    if not names:
        raise InputError(f"no plan images in {directory}")
    plans = []
    for name in names:
        image = directory / name
        truth = truth_path(image)
        if not truth.is_file():
            raise InputError(f"missing ground truth {truth}")
        plans.append((Path(name).stem, LabeledPlan(read_gray(image), import_labeled_svg(truth))))
    return plans


def choose_by_name(thing_name: str, classes: Sequence[Type[Any]], names: str) -> List[Type[Any]]:
    """Select classes by their comma separated NAMEs.

    Raises:
        InputError: if a name is not available.
    """
    available = {cls.NAME: cls for cls in classes}
    chosen = []
    for name in names.split(","):
        name = name.strip()
        if name not in available:
            raise InputError(f"{name} is not a {thing_name}")
        chosen.append(available[name])
    return chosen
