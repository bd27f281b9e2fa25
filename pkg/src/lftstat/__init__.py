"""Injectivity, equivalence-class counts and Monte Carlo key-space estimates
for linear finite transducers over GF(2)."""

from .census import CountParams, ct_canonical_count, nm_count, total_classes
from .estimator import (
    EstimateReport,
    class_probability,
    estimate_injective_classes,
    estimate_injective_percentage,
    exhaustive_census,
    random_lft,
    required_sample_size,
)
from .gf2 import BitMatrix
from .poly import LocalFrac, Poly2, PolyMatrix, smith_normal_form
from .transducer import (
    Lft,
    class_size,
    diagnostic_matrix,
    is_canonical,
    is_injective_with_delay,
    left_inverse_transfer,
    min_injectivity_delay,
    transfer_numerator,
)

__version__ = "0.1.0"
