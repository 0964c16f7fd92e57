"""
CrossTalk - Main Application
Probe susceptibilities of a four-level J=1/2 <-> J=1/2 system with cross talk

Usage: python -m src.main <command> [options]
"""
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.cli import CommandRunner, RunConfig, build_parser
from src.config import settings
from src.utils.exceptions import CrossTalkError, ParameterValidationError
from src.utils.logging_config import setup_logging

logger = logging.getLogger("crosstalk")

IO_ERROR_EXIT = 4


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one command and map failures to exit codes

    Returns:
        0 on success, 1 on failed verification, 2 for invalid parameters,
        3 for engine errors, 4 for I/O errors
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level or settings.LOG_LEVEL)

    try:
        config = RunConfig.from_args(args)
        return CommandRunner().run(config)
    except (ValidationError, json.JSONDecodeError) as e:
        logger.error("Invalid input: %s", e)
        return ParameterValidationError.exit_code
    except CrossTalkError as e:
        logger.error("%s: %s", type(e).__name__, e, exc_info=settings.LOG_LEVEL.upper() == "DEBUG")
        return e.exit_code
    except OSError as e:
        logger.error("I/O error: %s", e)
        return IO_ERROR_EXIT


if __name__ == "__main__":
    sys.exit(main())
