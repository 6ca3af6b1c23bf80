"""Constants and configuration defaults for blockade."""


class BlockadeConstants:
    """Central configuration constants."""

    # Report format
    REPORT_SCHEMA = "blockade.report/1"
    REPORT_INDENT = 2

    # Weight-diagram memo cache
    DEFAULT_CACHE_LIMIT = 256  # Diagrams kept before FIFO eviction
    MAX_CACHE_LIMIT = 1_000_000
    CACHE_LIMIT_ENV = "BLOCKADE_CACHE_LIMIT"

    # Settings file
    APP_NAME = "blockade"
    APP_AUTHOR = "blockade"
    SETTINGS_FILENAME = "settings.json"
    CONFIG_DIR_ENV = "BLOCKADE_CONFIG_DIR"

    # Batch evaluation
    DEFAULT_WORKERS = 1
    MAX_WORKERS = 64

    # Linkage search
    DEFAULT_CHAIN_BOUND = 6
    MAX_CHAIN_BOUND = 64

    # Descriptor files larger than this are refused
    MAX_DESCRIPTOR_BYTES = 4 * 1024 * 1024  # 4MB

    # Valid (type, rank) pairs
    MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}
    MAX_RANK = {"E": 8, "F": 4, "G": 2}

    # Classical positive-root counts, indexed by type then rank
    POSITIVE_ROOT_COUNTS = {
        "E": {6: 36, 7: 63, 8: 120},
        "F": {4: 24},
        "G": {2: 6},
    }

    # Exit codes
    EXIT_OK = 0
    EXIT_DOMAIN_ERROR = 1
    EXIT_USAGE_ERROR = 2
