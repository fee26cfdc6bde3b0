"""Busy beaver laboratory: machines, simulators, Collatz-like rule chains,
deciders, tree-normal-form enumeration and the record dataset."""

from .machine import (HALT, ClassId, Machine, MachineFormatError, Transition,
                      class_size, normalize, parse_machine, print_machine)
from .simulate import (Configuration, Outcome, RunOutcome, config_equals,
                       run_from, run_from_blank)

__version__ = "0.1.0"

__all__ = [
    "HALT", "ClassId", "Machine", "MachineFormatError", "Transition", "class_size",
    "normalize", "parse_machine", "print_machine", "Configuration", "Outcome",
    "RunOutcome", "config_equals", "run_from", "run_from_blank",
]
