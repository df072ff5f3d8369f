"""hyperdet: definite determinantal representations of hyperbolic plane curves."""

__version__ = "0.1.0"

from .detmap import SymPair, extract_diag_candidates, fiber_counts, pair_coeffs
from .nuij import LinearFormSet, NuijFamily, PathKind, fixed_endpoint
from .ternary import HyperbolicityReport, TernaryForm, check_hyperbolic

__all__ = [
    "HyperbolicityReport",
    "LinearFormSet",
    "NuijFamily",
    "PathKind",
    "SymPair",
    "TernaryForm",
    "check_hyperbolic",
    "extract_diag_candidates",
    "fiber_counts",
    "fixed_endpoint",
    "pair_coeffs",
    "__version__",
]
