"""Exact calculus of marked reflection lattices, tori and their normalizer
extensions: catalog access, marking enumeration, extension verdicts, 2-adic
classification, and the acceptance selftest."""

from ._core import (
    catalog_names,
    catalog_entry,
    root_system,
    markings,
    torus_markings,
    nt_verdicts,
    presentation_check,
    tits_vs_reflection_check,
    classify_block,
    di4_invariants,
    validate_document,
    export_entry,
    selftest,
)

__all__ = [
    "catalog_names",
    "catalog_entry",
    "root_system",
    "markings",
    "torus_markings",
    "nt_verdicts",
    "presentation_check",
    "tits_vs_reflection_check",
    "classify_block",
    "di4_invariants",
    "validate_document",
    "export_entry",
    "selftest",
]
