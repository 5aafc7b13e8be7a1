"""Significant interval and frequent episode discovery over access logs."""

from ._core import (
    DataError,
    Episode,
    FoldedSeries,
    LogRecord,
    ParseError,
    SignificantInterval,
    classify_pair,
    clean,
    fold,
    fold_all,
    format_clock,
    generate,
    interval,
    make_interval,
    one_pass_allsi,
    one_pass_fed,
    one_pass_si,
    parse_log,
    pattern_confidence,
    period_count,
    prune_contained,
)

__version__ = "0.1.0"
