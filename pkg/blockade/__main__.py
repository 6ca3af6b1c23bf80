"""Blockade CLI entry point.

Allows running via `python -m blockade` and provides the console script
defined in `pyproject.toml`.
"""

from __future__ import annotations

import sys

from .cli import run


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":  # pragma: no cover
    main()
