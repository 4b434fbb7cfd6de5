import logging
import sys
import traceback
from typing import Optional

from cliffsemi import (CliffordUndefinedError, CliffsemiError,
                       ConsistencyError)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNDEFINED = 2
EXIT_INTERNAL = 3

_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]
_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def configure_logging(verbosity: int = 0,
                      log_file: Optional[str] = None) -> None:
    """Configure the root logger once, on stderr or in `log_file`."""
    level = _LEVELS[min(max(verbosity, 0), len(_LEVELS) - 1)]
    if log_file is None:
        logging.basicConfig(stream=sys.stderr, level=level, format=_FORMAT,
                            force=True)
    else:
        logging.basicConfig(filename=log_file, filemode='w', level=level,
                            format=_FORMAT, force=True)


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, ConsistencyError):
        return EXIT_INTERNAL
    if isinstance(error, CliffordUndefinedError):
        return EXIT_UNDEFINED
    if isinstance(error, (CliffsemiError, ValueError, TypeError)):
        return EXIT_INPUT
    return EXIT_INTERNAL


def my_exception_hook(exctype, value, tback):
    """Exception hook that logs unexpected crashes with their traceback and
    stops the program with the internal error code.
    """
    str_error_msg = ''.join(traceback.format_exception(exctype, value, tback))
    logging.critical(str_error_msg)

    sys.stderr.write(
        "cliffsemi: internal error, this is a bug: {0}\n".format(value)
    )
    sys.exit(EXIT_INTERNAL)
