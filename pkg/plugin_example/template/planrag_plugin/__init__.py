from typing import Tuple, Type, List, TYPE_CHECKING

from planrag_plugin.classifiers.example import Example

if TYPE_CHECKING:
    from planrag.classifiers.abstract_classifier import AbstractClassifier
    from planrag.printers.abstract_printer import AbstractPrinter


def make_plugin() -> Tuple[List[Type["AbstractClassifier"]], List[Type["AbstractPrinter"]]]:
    # import and add classifiers, printers defined to the below lists
    plugin_classifiers: List[Type["AbstractClassifier"]] = [Example]
    plugin_printers: List[Type["AbstractPrinter"]] = []

    return plugin_classifiers, plugin_printers
