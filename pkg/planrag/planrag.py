import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Type

from planrag.exceptions import PlanragException
from planrag.printers.abstract_printer import AbstractPrinter
from planrag.utils.output import PlanArtifacts


def _check_common_things(
    thing_name: str, cls: Any, base_cls: Any, instance_list: List[Any]
) -> None:
    """Check if the class is correct subclass and is unique.

    check if :cls: is subclass of :base_cls: and it's instance is not already
    present in :instance_list:. if either of the conditions fail, then an
    exception is raised.

    Args:
        thing_name: name of the add-on that will run on the plans
            ("printer"). Used for error reporting.
        cls: Class representing the feature.
        base_cls: Base class for the feature.
        instance_list: List of objects already registered to run.

    Raises:
        PlanragException: raises exception if the :cls: is not subclass of
            :base_cls: or if an object of :cls: is present in the
            :instance_list:.
    """

    if not issubclass(cls, base_cls) or cls is base_cls:
        raise PlanragException(
            f"You can't register {cls.__name__} as a {thing_name}. "
            f"You need to pass a class that inherits from {base_cls.__name__}"
        )

    if any(isinstance(obj, cls) for obj in instance_list):
        raise PlanragException(f"You can't register {cls.__name__} twice.")


class Planrag:
    """Base class for the tool.

    Holds the artifacts of the loaded plans and the printers registered
    to run on them.

    Args:
        plans: plan name -> artifacts.
        dest: output directory of the printers; every plan gets its own
            subdirectory. ``ROOT_OUTPUT_DIRECTORY`` when omitted.
    """

    def __init__(self, plans: Dict[str, PlanArtifacts], dest: Optional[Path] = None):
        self._plans = plans
        self._dest = dest
        self._printers: List[AbstractPrinter] = []

    @property
    def plans(self) -> Dict[str, PlanArtifacts]:
        return self._plans

    @property
    def printers(self) -> List[AbstractPrinter]:
        """return list of registered printers.

        Returns:
            Returns the list of registered printers, one instance per plan.
        """
        return self._printers

    def register_printer(self, printer_class: Type[AbstractPrinter]) -> None:
        """Register printer to run on every plan.

        Args:
            printer_class: Class representing the printer.
        """

        _check_common_things("printer", printer_class, AbstractPrinter, self._printers)
        for name in sorted(self._plans):
            dest = self._dest / Path(name) if self._dest is not None else None
            self._printers.append(printer_class(self._plans[name], dest))

    def run_printers(self) -> List[Optional[Path]]:
        """Run all the registered printers.

        Returns:
            List of results, each result is the file written by a single
            printer run (None for printers writing to stdout only).
        """
        logger = logging.getLogger("Planrag")
        results = []
        for p in self._printers:
            logger.debug(f'[+] Running printer "{p.NAME}" on {p.plan.name}')
            results.append(p.print())
        return results
