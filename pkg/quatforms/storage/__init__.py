from .cache import CACHE_KINDS, JsonCache, cache_key, open_cache
from .schema import (
    ClassicalityEntry,
    ClassRepEntry,
    ClassSetReport,
    CriterionResult,
    EigenformEntry,
    EigenformReport,
    HeckeReport,
    LevelHeader,
    SlopeEntry,
    SlopeReport,
    VerifyReport,
    dump_report,
)

__all__ = [
    "CACHE_KINDS",
    "JsonCache",
    "cache_key",
    "open_cache",
    "ClassicalityEntry",
    "ClassRepEntry",
    "ClassSetReport",
    "CriterionResult",
    "EigenformEntry",
    "EigenformReport",
    "HeckeReport",
    "LevelHeader",
    "SlopeEntry",
    "SlopeReport",
    "VerifyReport",
    "dump_report",
]
