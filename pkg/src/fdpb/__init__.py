"""Finite-dimensional pseudo-bosons.

Builds triples ``(a, b, k)`` with ``[a, b] = 1 - n k``, the biorthonormal
eigenvector chains of ``h = (p^2 + q^2)/2`` and ``h^dagger``, the metric
operators relating the two chains, and the Hermitian triple recovered from
them.
"""

from .algebra import (
    DerivedOperators,
    FdpbRep,
    HermitianRep,
    buchdahl_rep,
    check_identities,
    derived_ops,
    random_similarity,
    similarity_deform,
    validate_rep,
)
from .chain import (
    BiorthogonalSystem,
    Label,
    build_system,
    reconstruct_operators,
    seed_phi,
    seed_psi,
    verify_reconstruction,
    verify_system,
)
from .errors import FdpbError
from .matrix import DEFAULT_TOL, Tolerance
from .metric import HermitianSystem, MetricPair, build_metrics, hermitize, verify_hermitian_system, verify_metrics
from .models import (
    ShiftedOscillator,
    SpectrumReport,
    SwansonModel,
    n4_alpha,
    shifted_oscillator,
    swanson,
    swanson_spectrum_report,
)
from .pipeline import PipelineResult, run_pipeline
from .report import Check, ValidationReport

__version__ = "0.1.0"
