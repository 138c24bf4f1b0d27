"""Optimal binary fixed-to-variable distribution matchers and Tunstall codes."""

from ._kernels import BACKEND
from .codec import (MatcherCode, as_bits, bits_to_str, match_decode,
                    match_encode, source_decode, source_encode)
from .core import (BinaryWeights, CodeTree, LeafStats, balanced_tree,
                   distribution, is_complete, leaf_stats, make_weights,
                   tree_from_codewords)
from .metrics import (TreeMetrics, expected_length, idiv_compress, idiv_match,
                      leaf_entropy, normalized_idiv, tree_metrics)
from .optimizer import (OptimizerResult, TraceStep, completeness_sufficient,
                        global_optimality_check, optimize_matcher, perbit_bound)
from .oracle import (EnumerationSpec, brute_min, catalan, enumerate_complete,
                     enumerate_prefix_codes)
from .tunstall import scale_weights, tunstall_build

__version__ = "0.1.0"
