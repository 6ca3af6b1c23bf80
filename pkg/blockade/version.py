from __future__ import annotations

import importlib.metadata


def get_version() -> str:
    # Source checkouts that were never installed have no distribution metadata
    try:
        return importlib.metadata.version("blockade")
    except importlib.metadata.PackageNotFoundError:
        return "0+unknown"


def get_version_string() -> str:
    return f"blockade {get_version()}"
