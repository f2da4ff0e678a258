from typing import Tuple, Type, List, TYPE_CHECKING

from planrag_centroid_plugin.classifiers.nearest_centroid import NearestCentroid

if TYPE_CHECKING:
    from planrag.classifiers.abstract_classifier import AbstractClassifier
    from planrag.printers.abstract_printer import AbstractPrinter


def make_plugin() -> Tuple[List[Type["AbstractClassifier"]], List[Type["AbstractPrinter"]]]:
    plugin_classifiers: List[Type["AbstractClassifier"]] = [NearestCentroid]
    plugin_printers: List[Type["AbstractPrinter"]] = []

    return plugin_classifiers, plugin_printers
