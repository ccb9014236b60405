"""Hybrid PC/permutation representation of finite groups."""

from .group import (
    HybridElement,
    HybridError,
    HybridGroup,
    VerificationResult,
    build_from_perm_group,
    dumps_presentation,
    export_presentation,
    find_seed,
    hybrid_class_count,
    import_presentation,
    verify_presentation,
)
from .pc import PcPresentation
from .todd_coxeter import enumerate_cosets
from .words import format_word, parse_word

__all__ = [
    "HybridElement",
    "HybridError",
    "HybridGroup",
    "PcPresentation",
    "VerificationResult",
    "build_from_perm_group",
    "dumps_presentation",
    "enumerate_cosets",
    "export_presentation",
    "find_seed",
    "format_word",
    "hybrid_class_count",
    "import_presentation",
    "parse_word",
    "verify_presentation",
]
