"""Resolvent-based regularity and stability diagnostics for coupled damped
elastic systems, represented through the eigenvalue sequence of the
principal operator."""

__version__ = "0.1.0"

from .asymptotics import (
    DifferentiabilityEstimate,
    ExponentFit,
    RegularityClass,
    check_bound,
    classify,
    estimate_K0,
    fit_exponent,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateParametersError,
    InternalInconsistencyError,
    ResolventLabError,
    SingularMatrixError,
)
from .modal import (
    ModalBlock,
    ModalState,
    build_modal_block,
    dissipativity_form,
    hnorm,
    hnorm2,
    modal_resolvent_norm,
    modal_solve,
)
from .model import (
    SpectrumModel,
    SystemParams,
    make_membrane_spectrum,
    make_plate_spectrum,
    mode_at,
    omega_pow,
)
from .scan import (
    GlobalNorm,
    ResolventScan,
    ScanConfig,
    global_resolvent_norm,
    resonance_grid,
    scan,
    scan_at,
)
from .simulate import (
    InitialData,
    Trace,
    abscissa_profile,
    evolve,
    fit_decay,
    smooth_profile,
    spectral_abscissa,
    sync_check,
)
from .witness import Witness, certify_lower_bound, witness_nonanalytic, witness_polyopt

__all__ = [
    "__version__",
    "ConfigError",
    "ConvergenceError",
    "DegenerateParametersError",
    "DifferentiabilityEstimate",
    "ExponentFit",
    "GlobalNorm",
    "InitialData",
    "InternalInconsistencyError",
    "ModalBlock",
    "ModalState",
    "RegularityClass",
    "ResolventLabError",
    "ResolventScan",
    "ScanConfig",
    "SingularMatrixError",
    "SpectrumModel",
    "SystemParams",
    "Trace",
    "Witness",
    "abscissa_profile",
    "build_modal_block",
    "certify_lower_bound",
    "check_bound",
    "classify",
    "dissipativity_form",
    "estimate_K0",
    "evolve",
    "fit_decay",
    "fit_exponent",
    "global_resolvent_norm",
    "hnorm",
    "hnorm2",
    "make_membrane_spectrum",
    "make_plate_spectrum",
    "modal_resolvent_norm",
    "modal_solve",
    "mode_at",
    "omega_pow",
    "resonance_grid",
    "scan",
    "scan_at",
    "smooth_profile",
    "spectral_abscissa",
    "sync_check",
    "witness_nonanalytic",
    "witness_polyopt",
]
