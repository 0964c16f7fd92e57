from .commands import CommandRunner, RunConfig, build_parser
from .output import OutputDocument, COLUMNS, format_number

__all__ = ["CommandRunner", "RunConfig", "build_parser", "OutputDocument", "COLUMNS", "format_number"]
