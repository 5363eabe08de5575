"""Logic-based veracity checking for data-to-text generation.

The library classifies (input MR, output MR) pairs into an eight-way
taxonomy grounded in entailment, maps verdicts onto older hallucination/
omission vocabularies, aggregates corpus-level category frequencies, and
detects two misleading patterns (withholding, half truths) in explicit
communication scenarios.  The ``verity`` command exposes all of it.
"""

from .bdi import (
    FindingKind,
    MisleadingFinding,
    Scenario,
    ScenarioError,
    default_candidates,
    detect_half_truth,
    detect_withholding,
    load_scenario,
    scan_misleading,
)
from .entail import (
    DEFAULT_ASSIGNMENT_LIMIT,
    EntailmentResult,
    ResourceLimit,
    entails,
    is_contradiction,
    is_tautology,
    satisfiable,
)
from .mr import (
    And,
    CatAtom,
    CategoricalComparisonOnNumeric,
    DuplicateAttribute,
    DuplicateValue,
    FALSE,
    FalseConst,
    Formula,
    Implies,
    MissingKey,
    Model,
    MrError,
    Not,
    NumAtom,
    NumericComparisonOnCategorical,
    Or,
    ParseError,
    Schema,
    SourceError,
    TRUE,
    TrueConst,
    UnknownAttribute,
    ValueNotInDomain,
    evaluate,
    format_model,
    fraction_str,
    iter_atoms,
    parse_formula,
    parse_schema,
    print_formula,
    validate_formula,
    validate_model,
)
from .oracle import (
    OracleDivergence,
    checked_classify,
    checked_entails,
    checked_is_contradiction,
    checked_is_tautology,
    checked_satisfiable,
    oracle_classify,
    oracle_entails,
    oracle_is_contradiction,
    oracle_is_tautology,
    oracle_satisfiable,
)
from .report import (
    CategoryCounts,
    CorpusRecord,
    LineError,
    REPORT_FORMATS,
    UnknownFormat,
    ingest_corpus,
    render_report,
    tally,
)
from .taxonomy import (
    JiLabel,
    LegacyLabels,
    UnmappableVerdict,
    Verdict,
    classify,
    legacy_labels,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "CatAtom",
    "CategoricalComparisonOnNumeric",
    "CategoryCounts",
    "CorpusRecord",
    "DEFAULT_ASSIGNMENT_LIMIT",
    "DuplicateAttribute",
    "DuplicateValue",
    "EntailmentResult",
    "FALSE",
    "FalseConst",
    "FindingKind",
    "Formula",
    "Implies",
    "JiLabel",
    "LegacyLabels",
    "LineError",
    "MisleadingFinding",
    "MissingKey",
    "Model",
    "MrError",
    "Not",
    "NumAtom",
    "NumericComparisonOnCategorical",
    "Or",
    "OracleDivergence",
    "ParseError",
    "REPORT_FORMATS",
    "ResourceLimit",
    "Scenario",
    "ScenarioError",
    "Schema",
    "SourceError",
    "TRUE",
    "TrueConst",
    "UnknownAttribute",
    "UnknownFormat",
    "UnmappableVerdict",
    "ValueNotInDomain",
    "Verdict",
    "checked_classify",
    "checked_entails",
    "checked_is_contradiction",
    "checked_is_tautology",
    "checked_satisfiable",
    "classify",
    "default_candidates",
    "detect_half_truth",
    "detect_withholding",
    "entails",
    "evaluate",
    "format_model",
    "fraction_str",
    "ingest_corpus",
    "is_contradiction",
    "is_tautology",
    "iter_atoms",
    "legacy_labels",
    "load_scenario",
    "oracle_classify",
    "oracle_entails",
    "oracle_is_contradiction",
    "oracle_is_tautology",
    "oracle_satisfiable",
    "parse_formula",
    "parse_schema",
    "print_formula",
    "render_report",
    "satisfiable",
    "scan_misleading",
    "tally",
    "validate_formula",
    "validate_model",
]
