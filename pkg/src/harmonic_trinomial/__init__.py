"""Exact zero counting for harmonic trinomials ``a z**n + b conj(z)**m + c``."""

from .config import DEFAULT_TOLERANCES, Tolerances
from .core import (
    HarmonicTrinomial,
    NormalizedTrinomial,
    coprime_reduce,
    evaluate,
    jacobian,
    new_trinomial,
    normalize,
    normalize_phase,
)
from .counting import (
    CountResult,
    JumpEvent,
    analytic_roots,
    count_profile,
    count_roots_in_disk,
    degenerate_diagnostics,
    jump_radii,
    perturbation_fallback,
    roots_on_circle,
    total_root_count,
)
from .errors import (
    BadExponents,
    BracketFailure,
    CoefficientRange,
    FallbackDisagreement,
    GridExhausted,
    InvalidTrinomial,
    NoCandidate,
    NonCoprime,
    NotATriangle,
    OracleError,
    OutsideRegion,
    SingularRoot,
    TrinomialError,
    ZeroCoefficient,
)
from .oracle import RootSet, SearchParams, find_all_roots, oracle_count, verify
from .regions import Case, RegionProfile, RegionTag, breakpoints, monotone_pieces, zero_free_classification
from .triangle import TriangleState, angles, omega_star, p_star, triangle_state

__version__ = "0.1.0"
