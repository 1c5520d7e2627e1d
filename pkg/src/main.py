"""Main entry point: ``python -m src.main <command> [options]``."""

import logging
import sys
from typing import List, Optional

from .interface.cli import build_parser
from .interface.commands import CommandController
from .interface.display import ResultDisplay
from .models.errors import BudgetExceededError, InconsistentSyndromeError
from .models.run_config import RunConfig
from .utils.logging import setup_logging

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONSISTENT_SYNDROME = 3
EXIT_BUDGET = 4


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the command and map errors to exit codes."""
    args = build_parser().parse_args(argv)
    if args.verbose:
        level = logging.DEBUG
    else:
        level = logging.INFO if args.command == "mc" else logging.WARNING
    setup_logging(level)
    display = ResultDisplay()
    try:
        config = RunConfig.from_namespace(args)
        return CommandController(config, display).run()
    except InconsistentSyndromeError as e:
        display.show_error(str(e))
        return EXIT_INCONSISTENT_SYNDROME
    except BudgetExceededError as e:
        display.show_error(str(e))
        return EXIT_BUDGET
    except ValueError as e:
        display.show_error(str(e))
        return EXIT_INPUT_ERROR
    except KeyboardInterrupt:
        display.show_error("interrupted")
        return EXIT_FAILURE
    except Exception as e:
        display.show_error(f"unexpected error: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
