"""paramine: mine lexical verb paraphrases from a single parsed corpus.

The pipeline finds pairs of verb instances that look like two statements
of one fact (shared non-pronoun subject and object, high tf-idf sentence
overlap, no contradicting arguments) and ranks verb pairs by how unlikely
those overlaps are to be chance. A per-slot distributional-similarity
baseline is included for comparison.
"""

__version__ = "0.1.0"

from .config import PipelineConfig, load_config
from .conllu import Corpus, Sentence, Token, load_corpus, parse_conllu
from .errors import ConsistencyError, ParamineError, ParseError
from .extraction import VerbInstance, extend_head, extract_instances, is_pronoun
from .stats import CorpusStats, build_stats, idf

__all__ = [
    "PipelineConfig",
    "load_config",
    "Corpus",
    "Sentence",
    "Token",
    "load_corpus",
    "parse_conllu",
    "ConsistencyError",
    "ParamineError",
    "ParseError",
    "VerbInstance",
    "extend_head",
    "extract_instances",
    "is_pronoun",
    "CorpusStats",
    "build_stats",
    "idf",
]
