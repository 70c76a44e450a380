"""tgl: symbolic node label inference on citation graphs of ground terms."""

from .gff import Dataset, NodeRecord, ParseError, ValidationError, load_fact_file, parse_fact_file, parse_term, serialize_term
from .inference import Params, TermGraphClassifier, evaluate_accuracy, infer_label, vote_for_best_label
from .similarity import MEASURES, score
from .terms import Atom, Compound, GroundTerm, Int

__all__ = [
    "Atom",
    "Compound",
    "Dataset",
    "GroundTerm",
    "Int",
    "MEASURES",
    "NodeRecord",
    "ParseError",
    "Params",
    "TermGraphClassifier",
    "ValidationError",
    "evaluate_accuracy",
    "infer_label",
    "load_fact_file",
    "parse_fact_file",
    "parse_term",
    "score",
    "serialize_term",
    "vote_for_best_label",
]

__version__ = "0.1.0"
