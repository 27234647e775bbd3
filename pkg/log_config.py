# log_config.py
# Logging setup for the library and the command line front end

import logging
import sys

from pythonjsonlogger import jsonlogger
from rich.console import Console
from rich.logging import RichHandler

# Attribute used to recognise the handler installed here
_HANDLER_MARK = "_negabeta_handler"


def configure_logging(level="WARNING", json_format=False):
    """
    Install a single handler on the root logger.

    Args:
        level: Logging level name or number
        json_format: Emit one JSON object per record instead of rich console output

    Returns:
        The installed handler
    """
    root = logging.getLogger()

    # Replace whatever a previous call installed
    for handler in list(root.handlers):
        if getattr(handler, _HANDLER_MARK, False):
            root.removeHandler(handler)

    if json_format:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(
            jsonlogger.JsonFormatter("%(levelname)s %(name)s %(message)s")
        )
    else:
        handler = RichHandler(
            console=Console(stderr=True),
            show_time=False,
            show_path=False,
            rich_tracebacks=False,
        )
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))

    setattr(handler, _HANDLER_MARK, True)
    root.addHandler(handler)
    root.setLevel(level.upper() if isinstance(level, str) else level)
    return handler
