"""
lacunary-harmonic: exact verification of Lehmer-type congruences.

A Python library and CLI for lacunary harmonic sums H_{r,m}(p-1), lacunary
binomial sums T_{r,m}(n) and Fibonacci/Pell numbers modulo prime powers.

Key features:
- Truncated p-adic arithmetic in Z/p^e with exact division by p
- Registry of congruence and identity checks with independent sides
- Exhaustive sweeps over prime ranges with deterministic JSON/CSV reports
- Rich CLI with progress tracking and per-cell explanations
"""

from .congruences import get_check, list_checks, run_check
from .padic_core import PrimeRange, Residue, make_residue
from .suite import Report, SuiteOptions, run_suite

# Version is managed by hatch-vcs and set during build
try:
    from ._version import __version__
except ImportError:
    # Fallback for development installs without build
    __version__ = "0.0.0.dev0+unknown"

__all__ = [
    "PrimeRange",
    "Report",
    "Residue",
    "SuiteOptions",
    "get_check",
    "list_checks",
    "make_residue",
    "run_check",
    "run_suite",
    "__version__",
]
