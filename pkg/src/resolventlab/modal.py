"""Per-mode generator blocks and modal resolvent evaluation.

Restricted to the invariant subspace of one eigenfunction (eigenvalue
omega), the generator of the coupled system is a 4x4 matrix acting on the
modal coordinates (u, v, w, z).  The similarity by
D = diag(sqrt(a*omega), 1, sqrt(b*omega), 1) turns the energy norm into the
Euclidean norm, so singular values of the weighted block measure exactly
what the theorems measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InternalInconsistencyError, SingularMatrixError
from .model import SystemParams, omega_pow
from . import smallmat


@dataclass(frozen=True)
class ModalState:
    """Coefficients of one mode of the state (u, v, w, z) against e_n."""

    omega: float
    u: complex
    v: complex
    w: complex
    z: complex

    def __post_init__(self):
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive, got {self.omega}")

    def vector(self):
        return np.array([self.u, self.v, self.w, self.z], dtype=complex)


def hnorm2(params, state):
    """Squared energy norm: a*omega*|u|^2 + |v|^2 + b*omega*|w|^2 + |z|^2."""
    om = state.omega
    return (params.a * om * abs(state.u) ** 2 + abs(state.v) ** 2
            + params.b * om * abs(state.w) ** 2 + abs(state.z) ** 2)


def hnorm(params, state):
    """Energy norm of a single-mode state."""
    return math.sqrt(hnorm2(params, state))


@dataclass(frozen=True)
class ModalBlock:
    """Raw and norm-isometric 4x4 restrictions of the generator to one mode."""

    omega: float
    raw: np.ndarray
    weighted: np.ndarray


def _weighted_rows(params, omega):
    """Weighted block as a row list; the hot path for resolvent evaluation."""
    sa = math.sqrt(params.a * omega)
    sb = math.sqrt(params.b * omega)
    g = params.gamma_eff * omega_pow(omega, params.theta)
    return [
        [0j, sa + 0j, 0j, 0j],
        [-sa + 0j, -g + 0j, 0j, -g + 0j],
        [0j, 0j, 0j, sb + 0j],
        [0j, -g + 0j, -sb + 0j, -g + 0j],
    ]


def build_modal_block(params, omega):
    """Modal 4x4 generator in raw coordinates and in weighted coordinates.

    omega**theta is evaluated as exp(theta*log(omega)); both matrices are
    finite for every theta in [-1, 1] including the endpoints.
    """
    if not (omega > 0 and math.isfinite(omega)):
        raise ValueError(f"omega must be positive, got {omega}")
    g = params.gamma_eff * omega_pow(omega, params.theta)
    raw = np.array([
        [0.0, 1.0, 0.0, 0.0],
        [-params.a * omega, -g, 0.0, -g],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, -g, -params.b * omega, -g],
    ], dtype=complex)
    weighted = np.array(_weighted_rows(params, omega), dtype=complex)
    return ModalBlock(omega=float(omega), raw=raw, weighted=weighted)


def dissipativity_form(params, state):
    """Re(A_theta Z, Z) on one mode: -gamma * omega**theta * |v + z|^2."""
    if params.undamped:
        return 0.0
    return -params.gamma * omega_pow(state.omega, params.theta) * abs(state.v + state.z) ** 2


def _resolvent_norm_rows(params, omega, lam):
    """Modal resolvent norm with the weighted rows already known.

    Computed as the operator norm of the explicitly inverted shifted block;
    mathematically 1/sigma_min(i*lam - W).  Inverting first keeps the
    norm extraction a largest-eigenvalue problem, which the Jacobi sweep
    resolves to full relative accuracy even when the block is nearly
    singular (forming the cross matrix of the forward block would lose the
    smallest singular value to roundoff there).
    """
    W = _weighted_rows(params, omega)
    ilam = 1j * lam
    M = [[(ilam if i == j else 0j) - W[i][j] for j in range(4)] for i in range(4)]
    try:
        G = smallmat._inverse_rows(M)
    except SingularMatrixError as exc:
        if params.gamma_eff > 0:
            raise InternalInconsistencyError(
                f"resolvent singular at lambda={lam} with positive damping"
            ) from exc
        return math.inf
    ev = smallmat._jacobi_hermitian(smallmat._cross_rows(G))
    return math.sqrt(max(0.0, max(ev)))


def modal_resolvent_norm(params, omega, lam):
    """Norm of the modal resolvent (i*lam*I - A_theta)^(-1) on mode omega.

    Returns math.inf when i*lam lies in the spectrum, which happens only in
    the undamped case; with positive damping a singular shift raises
    InternalInconsistencyError (the imaginary axis belongs to the resolvent
    set).
    """
    if not (omega > 0 and math.isfinite(omega)):
        raise ValueError(f"omega must be positive, got {omega}")
    if params.undamped:
        # The weighted block is exactly skew-Hermitian: the resolvent norm
        # is the reciprocal distance to the spectrum {+-i sqrt(a w), +-i sqrt(b w)}.
        sa = math.sqrt(params.a * omega)
        sb = math.sqrt(params.b * omega)
        al = abs(lam)
        dist = min(abs(al - sa), abs(al + sa), abs(al - sb), abs(al + sb))
        if dist == 0.0:
            return math.inf
        return 1.0 / dist
    return _resolvent_norm_rows(params, omega, lam)


def modal_solve(params, omega, lam, rhs):
    """Solve (i*lam*I - A_theta) Z = rhs on one mode, in raw coordinates."""
    if rhs.omega != omega:
        raise ValueError(f"rhs carries omega={rhs.omega}, expected {omega}")
    block = build_modal_block(params, omega)
    ilam = 1j * lam
    M = ilam * np.eye(4, dtype=complex) - block.raw
    x = smallmat.solve(M, rhs.vector())
    return ModalState(omega=float(omega), u=x[0], v=x[1], w=x[2], z=x[3])
