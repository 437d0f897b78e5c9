"""Foundational-layer semantic graphs: parsing, validation, interchange,
scoring and statistics."""

from .categories import (
    BASE_LABELS,
    DESCRIPTIONS,
    SECONDARY_LABELS,
    CategorySet,
    InvalidCategory,
)
from .core import (
    IMPLICIT,
    INTERNAL,
    TERMINAL,
    BuildError,
    CategoryCounts,
    DanglingEdge,
    DuplicateId,
    Edge,
    EdgeSpec,
    InvalidRemote,
    InvalidToken,
    InvalidUnit,
    MultiplePrimaryParents,
    MultipleRoots,
    NotInternal,
    Passage,
    PrimaryCycle,
    RemoteCycle,
    Token,
    TokenCoverageGap,
    UccaError,
    Unit,
    UnitSpec,
    UnknownUnit,
    build_passage,
    is_scene_unit,
    isomorphic,
    stats,
    yield_of,
)
from .interchange import (
    FILE_EXTENSION,
    FORMAT_VERSION,
    MalformedDocument,
    UnsupportedVersion,
    canonical_json_bytes,
    from_interchange,
    to_interchange,
)
from .notation import (
    AmbiguousContinuation,
    AmbiguousRemote,
    DanglingContinuation,
    MisplacedRemote,
    OrphanContinuation,
    ParseError,
    RenderError,
    UnbalancedBrackets,
    UnknownCategoryLabel,
    UnresolvedRemote,
    lex,
    parse_passage,
    render,
    split_passages,
)
from .scoring import ClassScores, EdgeSignature, ScoreReport, TokenMismatch, score, signatures
from .validation import Diagnostic, RuleInfo, list_rules, load_config, parse_config, validate

__version__ = "0.1.0"

__all__ = [
    "BASE_LABELS",
    "DESCRIPTIONS",
    "SECONDARY_LABELS",
    "CategorySet",
    "InvalidCategory",
    "IMPLICIT",
    "INTERNAL",
    "TERMINAL",
    "BuildError",
    "CategoryCounts",
    "DanglingEdge",
    "DuplicateId",
    "Edge",
    "EdgeSpec",
    "InvalidRemote",
    "InvalidToken",
    "InvalidUnit",
    "MultiplePrimaryParents",
    "MultipleRoots",
    "NotInternal",
    "Passage",
    "PrimaryCycle",
    "RemoteCycle",
    "Token",
    "TokenCoverageGap",
    "UccaError",
    "Unit",
    "UnitSpec",
    "UnknownUnit",
    "build_passage",
    "is_scene_unit",
    "isomorphic",
    "stats",
    "yield_of",
    "FILE_EXTENSION",
    "FORMAT_VERSION",
    "MalformedDocument",
    "UnsupportedVersion",
    "canonical_json_bytes",
    "from_interchange",
    "to_interchange",
    "AmbiguousContinuation",
    "AmbiguousRemote",
    "DanglingContinuation",
    "MisplacedRemote",
    "OrphanContinuation",
    "ParseError",
    "RenderError",
    "UnbalancedBrackets",
    "UnknownCategoryLabel",
    "UnresolvedRemote",
    "lex",
    "parse_passage",
    "render",
    "split_passages",
    "ClassScores",
    "EdgeSignature",
    "ScoreReport",
    "TokenMismatch",
    "score",
    "signatures",
    "Diagnostic",
    "RuleInfo",
    "list_rules",
    "load_config",
    "parse_config",
    "validate",
]
