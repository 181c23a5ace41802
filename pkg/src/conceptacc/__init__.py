"""Word accuracy and concept accuracy evaluation for spoken dialogue systems."""

from .alignment import (
    Alignment,
    AlignmentOp,
    CostTable,
    EditCounts,
    OpKind,
    align,
    backtrace,
    cost_table,
    edit_counts,
    render_alignment,
)
from .concept_parser import Grammar, Lexicon, RuleSet, extract_concepts, load_lexicon, load_rules, measure_coverage
from .corpus_io import (
    CorpusStats,
    UtteranceRecord,
    corpus_stats,
    generate_synthetic_corpus,
    load_corpus,
    load_templates,
    save_corpus,
)
from .errors import (
    ConfigError,
    DegenerateInput,
    EmptyReference,
    EmptyVocabulary,
    FormatError,
    MalformedUnit,
    NoScorableRecords,
    UnknownAttribute,
)
from .metrics import AccuracyResult, CorpusMetric, MetricKind, concept_accuracy, corpus_accuracy, word_accuracy
from .semantics import AttributeInventory, SemanticUnit, load_inventory, parse_annotation, serialize_annotation, su_equal
from .simulator import ErrorSpec, SweepPoint, Targeting, corrupt, linear_fit, sweep

__version__ = "0.1.0"
