"""Defines abstract base class for printers in planrag.

This module contains implementation of abstract class which
defines the attributes, common methods and must implement methods
of printers. All printers in planrag must inherit from this class
and set attributes, override abstract methods.

Classes:
    AbstractPrinter: Abstract class to represent printers in planrag.
"""

import abc
from pathlib import Path
from typing import Optional

from planrag.exceptions import PlanragException
from planrag.utils.output import ROOT_OUTPUT_DIRECTORY, PlanArtifacts


class IncorrectPrinterInitialization(PlanragException):
    """Exception class to represent incorrect printer intialization.

    This exception will be used if any of the necessary attributes
    of the AbstractPrinter are not set by the inheriting printer class.
    """


class AbstractPrinter(metaclass=abc.ABCMeta):  # pylint: disable=too-few-public-methods
    """Abstract class to represent printers in planrag.

    All printers in planrag must inherit from this class and override the
    abstract methods with functionality specific to them. ``print`` method
    of each printer will be called to execute the printer.

    Attributes:
        NAME: Name of the printer. printer name will be used while
            displaying information about the printer and also for selecting
            the printer from command line.
        HELP: Description of the printer.

    Args:
        plan: artifacts of the plan the printer runs on.
        dest: output directory; ``ROOT_OUTPUT_DIRECTORY / plan.name`` when omitted.

    Raises:
        IncorrectPrinterInitialization: Exception is raised if NAME, HELP
            attributes are not set by the inheriting printer class.
    """

    NAME = ""
    HELP = ""

    def __init__(self, plan: PlanArtifacts, dest: Optional[Path] = None):
        self.plan = plan
        self.dest = dest if dest is not None else ROOT_OUTPUT_DIRECTORY / Path(plan.name)

        if not self.NAME:
            raise IncorrectPrinterInitialization(
                f"NAME is not initialized {self.__class__.__name__}"
            )

        if not self.HELP:
            raise IncorrectPrinterInitialization(
                f"HELP is not initialized {self.__class__.__name__}"
            )

    @abc.abstractmethod
    def print(self) -> Optional[Path]:
        """entry method of the printer.

        Returns:
            the written file, None if the printer only writes to stdout
            or lacks the artifact it renders.
        """
