import json
import logging
import sys
from typing import Any, Sequence


def setup_logging(verbose: bool = False) -> None:
    """Routes log records to stderr; -v switches to DEBUG."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def dump_json(document: Any) -> str:
    return json.dumps(document, indent=2, sort_keys=False)


def parse_sizes(text: str) -> Sequence[int]:
    """Parses "10000,20000" into sizes; raises ValueError on junk."""
    sizes = [int(part) for part in text.split(",") if part.strip()]
    if not sizes or any(size <= 0 for size in sizes):
        raise ValueError(f"sizes must be positive integers, got {text!r}")
    return sizes
