"""Design of DNA codes with constant GC content and reverse-complement constraints.

Submodules: :mod:`.seqcore` (packed words), :mod:`.codeset` (codes and
verification), :mod:`.sls` (local search), :mod:`.graph` (conflict graphs and
DIMACS), :mod:`.clique` (exact maximum clique) and :mod:`.tables` (reference
values and the recomputation harness).
"""

from .codeset import CodeParams, CodeSet, VerifyReport, halving_upper_bound, verify_strong, verify_weak
from .errors import DnaCodexError
from .seqcore import Sequence, gc_content, hamming, parse, reverse_complement

__version__ = "0.1.0"

__all__ = [
    "CodeParams",
    "CodeSet",
    "DnaCodexError",
    "Sequence",
    "VerifyReport",
    "gc_content",
    "halving_upper_bound",
    "hamming",
    "parse",
    "reverse_complement",
    "verify_strong",
    "verify_weak",
]
