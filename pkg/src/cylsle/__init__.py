"""Left-passage probabilities for the kappa = 2 trace on a cylinder.

Closed-form probabilities built on theta-type series with automatic
representation switching, cross-validated by an SDE Monte Carlo of the
driving process, a loop-erased-walk lattice sampler, and the regularized
spectral determinant of the discrete Laplacian.
"""

from .precision import (
    DEFAULT_PRECISION,
    DomainError,
    PartialResultError,
    PrecisionError,
    SeriesPrecision,
)
from .special import (
    dedekind_eta,
    hypergeom_2f1,
    theta1,
    v_double_prime,
    v_field,
    v_prime,
)
from .kernels import (
    KernelValue,
    excursion_kernel,
    excursion_kernel_prime,
    greens_function,
    partition_function,
    sde_drift,
)
from .passage import (
    HalfPlanePoint,
    SideArc,
    hitting_density,
    lambda_density,
    left_passage,
    left_passage_arc,
    left_passage_arc_asymptotic,
    left_passage_small_p,
    omega_big,
    omega_big_heat,
    schramm_half_plane,
)
from .geometry import DiskObstacle, disk_to_cylinder, schramm_cylinder_crosscheck
from .lattice import LatticeDomain, LatticePath
from .sle_mc import McEstimate, SdeRunConfig, simulate_arc_passage, simulate_passage
from .lerw_mc import LerwConfig, loop_erase, sample_lerw
from .spectral import (
    CATALAN,
    SpectralReport,
    log_det_bruteforce,
    log_det_exact,
    regularize,
)
from ._engine import IMPLEMENTATION as ENGINE_IMPLEMENTATION

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRECISION",
    "DomainError",
    "PartialResultError",
    "PrecisionError",
    "SeriesPrecision",
    "theta1",
    "v_field",
    "v_prime",
    "v_double_prime",
    "dedekind_eta",
    "hypergeom_2f1",
    "KernelValue",
    "excursion_kernel",
    "excursion_kernel_prime",
    "greens_function",
    "partition_function",
    "sde_drift",
    "SideArc",
    "HalfPlanePoint",
    "omega_big",
    "omega_big_heat",
    "lambda_density",
    "left_passage",
    "left_passage_small_p",
    "hitting_density",
    "left_passage_arc",
    "left_passage_arc_asymptotic",
    "schramm_half_plane",
    "DiskObstacle",
    "disk_to_cylinder",
    "schramm_cylinder_crosscheck",
    "LatticeDomain",
    "LatticePath",
    "SdeRunConfig",
    "McEstimate",
    "simulate_passage",
    "simulate_arc_passage",
    "LerwConfig",
    "loop_erase",
    "sample_lerw",
    "SpectralReport",
    "CATALAN",
    "log_det_exact",
    "log_det_bruteforce",
    "regularize",
    "ENGINE_IMPLEMENTATION",
    "__version__",
]
