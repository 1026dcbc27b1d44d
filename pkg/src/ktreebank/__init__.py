"""Korean treebank toolkit: KAIST/Sejong trees, Penn-style transformation,
dependency conversion, validation and corpus bookkeeping."""
from .audit import (AgreementReport, Manifest, ManifestError, StatsReport,
                    corpus_stats, is_projective, morph_agreement, split_corpus,
                    substitute_morphology, validate_dependency)
from .depconv import head_child_index, to_dependency
from .model import (DEFAULT_REGISTRY, Eojeol, Morpheme, TagError, Tagset,
                    TagsetRegistry, case_label, coarse_tag, eojeol,
                    is_grammatical_affix, is_punct, validate_tag)
from .transform import to_penn
from .treeio import (DependencyTree, DepToken, Diagnostic, Phrase, Terminal,
                     TreeSyntaxError, from_conll, parse_tree, read_conll,
                     read_morph_file, read_treebank, serialize_tree, write_conll)

__version__ = "0.1.0"

__all__ = [
    "AgreementReport", "DEFAULT_REGISTRY", "DepToken", "DependencyTree",
    "Diagnostic", "Eojeol", "Manifest", "ManifestError", "Morpheme", "Phrase",
    "StatsReport", "TagError", "Tagset", "TagsetRegistry", "Terminal",
    "TreeSyntaxError", "case_label", "coarse_tag", "corpus_stats", "eojeol",
    "from_conll", "head_child_index", "is_grammatical_affix", "is_projective",
    "is_punct", "morph_agreement", "parse_tree", "read_conll", "read_morph_file",
    "read_treebank", "serialize_tree", "split_corpus", "substitute_morphology",
    "to_dependency", "to_penn", "validate_dependency", "validate_tag",
    "write_conll",
]
