import os
from enum import unique
from typing import List, Optional, Tuple

from cliffsemi import (ClosedForm, GenusTooLargeError, NumericalSemigroup,
                       ParseError, TypeBaseEnum, from_gaps, from_generators,
                       nonplanar_family, parse_semigroup, plane_closed_form)

GENUS_CAP_ENV = 'CLIFFSEMI_MAX_GENUS'
DEFAULT_GENUS_CAP = 25


@unique
class Command(TypeBaseEnum):
    ANALYZE = 'analyze'
    SCROLL = 'scroll'
    SURVEY = 'survey'
    ORACLE = 'oracle'


@unique
class OutputFormat(TypeBaseEnum):
    TEXT = 'text'
    JSON = 'json'
    CSV = 'csv'


@unique
class InputKind(TypeBaseEnum):
    TEXT = 'text'
    GENERATORS = 'gens'
    GAPS = 'gaps'
    PLANE_FAMILY = 'plane-family'
    NONPLANAR_FAMILY = 'nonplanar-family'


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.replace(' ', '').split(',') if v != '']
    except ValueError:
        raise ParseError(
            "Can't read '{0}' as a comma-separated integer list.".format(text)
        )


def default_genus_cap() -> int:
    """Safety cap on the genus, from CLIFFSEMI_MAX_GENUS when set."""
    raw = os.environ.get(GENUS_CAP_ENV)
    if raw is None or raw.strip() == '':
        return DEFAULT_GENUS_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ParseError("{0} must be an integer, got '{1}'.".format(
            GENUS_CAP_ENV, raw))
    if cap < 0:
        raise ValueError("{0} can't be negative.".format(GENUS_CAP_ENV))
    return cap


class RunConfig:
    """Validated settings of one command-line run."""

    def __init__(self, command: Command):
        self.command = command
        self._genus_cap = default_genus_cap()

    @property
    def command(self) -> Command:
        return self._command

    @command.setter
    def command(self, value: Command) -> None:
        if not isinstance(value, Command):
            raise TypeError("Command must be a valid subcommand.")
        self._command = value

    @property
    def input_kind(self) -> Optional[InputKind]:
        if not hasattr(self, '_input_kind'):
            self._input_kind = None
        return self._input_kind

    @property
    def input_value(self) -> Optional[str]:
        if not hasattr(self, '_input_value'):
            self._input_value = None
        return self._input_value

    def set_input(self, kind: InputKind, value: str) -> None:
        if not isinstance(kind, InputKind):
            raise TypeError("Input kind must be a valid selector.")
        if not isinstance(value, str):
            raise TypeError("Input value must be a string.")
        self._input_kind = kind
        self._input_value = value

    @property
    def output_format(self) -> OutputFormat:
        """Rendering of the results on stdout."""
        if not hasattr(self, '_output_format'):
            self._output_format = OutputFormat.TEXT
        return self._output_format

    @output_format.setter
    def output_format(self, value: OutputFormat) -> None:
        if not isinstance(value, OutputFormat):
            raise TypeError("Output format must be text, json or csv.")
        self._output_format = value

    @property
    def genus_cap(self) -> int:
        """Safety cap (default 25, CLIFFSEMI_MAX_GENUS overrides it)."""
        return self._genus_cap

    @property
    def max_genus(self) -> int:
        """Genus bound of the run; the safety cap unless set."""
        if not hasattr(self, '_max_genus'):
            self._max_genus = self._genus_cap
        return self._max_genus

    @max_genus.setter
    def max_genus(self, value: int) -> None:
        if not isinstance(value, int):
            raise TypeError("Maximum genus must be an integer.")
        if value < 0:
            raise ValueError("Maximum genus can't be negative.")
        if value > self._genus_cap:
            raise GenusTooLargeError(
                "Maximum genus {0} is above the safety cap {1} (set {2} to "
                "raise it).".format(value, self._genus_cap, GENUS_CAP_ENV)
            )
        self._max_genus = value

    @property
    def jobs(self) -> int:
        if not hasattr(self, '_jobs'):
            self._jobs = 1
        return self._jobs

    @jobs.setter
    def jobs(self, value: int) -> None:
        if not isinstance(value, int):
            raise TypeError("Number of jobs must be an integer.")
        if value < 1:
            raise ValueError("Number of jobs must be at least 1.")
        self._jobs = value

    @property
    def with_oracle(self) -> bool:
        if not hasattr(self, '_with_oracle'):
            self._with_oracle = False
        return self._with_oracle

    @with_oracle.setter
    def with_oracle(self, value: bool) -> None:
        if not isinstance(value, bool):
            raise TypeError("Oracle toggle must be a boolean.")
        self._with_oracle = value

    @property
    def progress(self) -> bool:
        if not hasattr(self, '_progress'):
            self._progress = True
        return self._progress

    @progress.setter
    def progress(self, value: bool) -> None:
        if not isinstance(value, bool):
            raise TypeError("Progress toggle must be a boolean.")
        self._progress = value

    @property
    def sheaf(self) -> List[int]:
        """Sheaf exponents of the scroll command."""
        if not hasattr(self, '_sheaf'):
            self._sheaf = []
        return self._sheaf

    @sheaf.setter
    def sheaf(self, value: List[int]) -> None:
        if not isinstance(value, list) or \
                not all(isinstance(v, int) for v in value):
            raise TypeError("Sheaf exponents must be a list of integers.")
        self._sheaf = value

    @property
    def pencil(self) -> Optional[Tuple[int, int]]:
        if not hasattr(self, '_pencil'):
            self._pencil = None
        return self._pencil

    @pencil.setter
    def pencil(self, value: List[int]) -> None:
        if len(value) != 2 or not all(isinstance(v, int) for v in value):
            raise ParseError("A pencil is given by two exponents 'u,v'.")
        self._pencil = (value[0], value[1])

    # ------------------------------------------------------------ resolving
    def semigroup(self) -> NumericalSemigroup:
        """Semigroup selected by the input, checked against the genus bound.
        """
        kind, value = self.input_kind, self.input_value
        if kind is None:
            raise ParseError("No semigroup given: pass generators, --gens, "
                             "--gaps or a family selector.")

        if kind == InputKind.TEXT:
            S = parse_semigroup(value)
        elif kind == InputKind.GENERATORS:
            S = from_generators(parse_int_list(value))
        elif kind == InputKind.GAPS:
            S = from_gaps(parse_int_list(value))
        else:
            form = self.closed_form()
            S = form.semigroup

        if S.genus > self.max_genus:
            raise GenusTooLargeError(
                "Genus {0} of {1} is above the bound {2}.".format(
                    S.genus, S, self.max_genus)
            )
        return S

    def closed_form(self) -> Optional[ClosedForm]:
        """Expected invariants when the input is one of the two families."""
        kind = self.input_kind
        if kind not in (InputKind.PLANE_FAMILY, InputKind.NONPLANAR_FAMILY):
            return None

        try:
            alpha = int(self.input_value)
        except ValueError:
            raise ParseError("Family selector needs an integer multiplicity, "
                             "got '{0}'.".format(self.input_value))

        if kind == InputKind.PLANE_FAMILY:
            return plane_closed_form(alpha)
        _, form = nonplanar_family(alpha)
        return form
