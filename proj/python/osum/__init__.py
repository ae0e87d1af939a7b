"""On-shelf high-utility sequential pattern mining."""

from ._osum import (
    BudgetError,
    LimitError,
    MinedPattern,
    MiningReport,
    ParseError,
    TemporalDatabase,
    ValidationError,
    __version__,
    generate_scaled,
    mine,
    parse_database,
    write_dataset,
)

__all__ = [
    "BudgetError",
    "LimitError",
    "MinedPattern",
    "MiningReport",
    "ParseError",
    "TemporalDatabase",
    "ValidationError",
    "__version__",
    "generate_scaled",
    "mine",
    "parse_database",
    "write_dataset",
]
