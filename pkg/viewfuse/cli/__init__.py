"""CLI package for viewfuse."""

from __future__ import annotations

# Import subcommand modules so their @app.command() decorators register
from . import data_cmd as _data_cmd  # noqa: F401
from . import eval_cmd as _eval_cmd  # noqa: F401
from . import models_cmd as _models_cmd  # noqa: F401
from .errors import CliUsageError, InvalidListError
from .state import app


def cli() -> None:
    """CLI entrypoint."""
    app(prog_name="viewfuse")


__all__ = ["CliUsageError", "InvalidListError", "app", "cli"]


if __name__ == "__main__":
    cli()
