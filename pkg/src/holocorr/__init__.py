"""Numerics for the modular correspondences F_a and the parabolic family P_A."""
from types import ModuleType as _ModuleType

from .corr import (
    BranchPair,
    ParamA,
    Z_to_z,
    corr_images,
    corr_preimages,
    cov_images,
    estimate_fixed_branch_coeff,
    fixed_branch_multiplier,
    fixed_branch_quadratic_coeff,
    involution_J,
    minkowski_q,
    z_to_Z,
    z_to_zprime,
    zigzag_defect,
)
from .cycles import (
    CycleClass,
    CycleData,
    Family,
    attracting_cycle,
    branch_fixed_points,
    branch_multiplier,
    center_newton,
    chi_hat,
    pa_attracting_cycle,
)
from .errors import (
    BranchPointOnCycle,
    BranchTrackingLost,
    DegenerateParam,
    DomainError,
    HolocorrError,
    InvalidParam,
    InversionFailure,
    NoConvergence,
    NotHyperbolic,
    NotInPetal,
    NotInShiftLocus,
    PeriodMismatch,
    PoleInput,
)
from .fatou import (
    FatouChart,
    MilnorPoint,
    check_h_conjugacy,
    fatou_coordinate,
    milnor_coordinate,
    prefatou_psi,
)
from .loci import (
    EscapeOutcome,
    Raster,
    Status,
    Window,
    branch_into_lune,
    entry_time,
    in_m1,
    in_mgamma,
    m1_escape,
    mandelbrot_escape,
    mgamma_escape,
    render_filled_julia,
    render_limit_set,
    render_parameter_locus,
    tile_regular_set,
)
from .lunes import (
    LuneConfig,
    check_lune_containment,
    in_doubly_truncated_lune,
    in_dynamical_lune,
    in_param_lune,
    in_truncated_lune,
)

__version__ = "0.1.0"

__all__ = sorted(
    name for name, obj in globals().items()
    if not name.startswith("_") and not isinstance(obj, _ModuleType)
)
