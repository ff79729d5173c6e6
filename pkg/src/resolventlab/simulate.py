"""Time-domain semigroup evaluation by per-mode matrix exponentials.

Modes evolve independently, so the semigroup is evaluated exactly (to
kernel tolerance) as state(t) = expm(t*W) state(0) in weighted coordinates,
with total norms assembled by orthogonal summation.  No time stepping is
involved: grids are arbitrary and stiffness of the damping entries is
irrelevant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InternalInconsistencyError
from .modal import ModalState, build_modal_block, dissipativity_form, hnorm2
from .model import mode_at, omega_pow
from . import smallmat


@dataclass(frozen=True)
class InitialData:
    """Finite modal expansion of the initial state.

    ``modes`` maps distinct 1-based mode indices to single-mode states; by
    orthogonality the total squared energy norm is the sum of the modal
    ones.
    """

    modes: tuple

    def __post_init__(self):
        entries = tuple((int(n), st) for n, st in self.modes)
        if not entries:
            raise ValueError("initial data needs at least one mode")
        seen = set()
        for n, st in entries:
            if n < 1:
                raise ValueError(f"mode index must be >= 1, got {n}")
            if n in seen:
                raise ValueError(f"duplicate mode index {n}")
            seen.add(n)
            if not isinstance(st, ModalState):
                raise ValueError("modal coefficients must be ModalState instances")
        object.__setattr__(self, "modes", entries)

    def total_hnorm(self, params):
        return math.sqrt(sum(hnorm2(params, st) for _, st in self.modes))


def smooth_profile(spectrum, count, scale=1.0):
    """Initial data with coefficients proportional to 1/omega_n.

    Places the data in the generator domain with controlled graph norm (the
    polynomial decay estimate is relative to the graph norm).  The two
    position components get opposite signs so y0 != z0.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    modes = []
    for n in range(1, int(count) + 1):
        om = mode_at(spectrum, n)
        c = scale / om
        modes.append((n, ModalState(omega=om, u=c, v=0.0, w=-c, z=0.0)))
    return InitialData(modes=tuple(modes))


@dataclass(frozen=True)
class Trace:
    """Norm history of a simulation.

    ``dissipation`` carries sum_modes Re(A_theta Z, Z) at each time, so the
    energy identity d/dt ||Z||^2 = 2*dissipation can be checked by finite
    differences.  ``q_norm``/``p_norm`` are populated by the a = b
    synchronization check only.
    """

    times: np.ndarray
    total_norm: np.ndarray
    graph_norm: float
    dissipation: np.ndarray
    undamped: bool
    mode_indices: tuple = None
    mode_norms: np.ndarray = None
    q_norm: np.ndarray = None
    p_norm: np.ndarray = None


def _check_times(times):
    t = np.asarray(list(times), dtype=float)
    if t.size < 1 or t[0] != 0.0:
        raise ValueError("time grid must start at 0")
    if np.any(np.diff(t) <= 0):
        raise ValueError("time grid must be strictly increasing")
    return t


def _weights(params, omega):
    return np.array([math.sqrt(params.a * omega), 1.0,
                     math.sqrt(params.b * omega), 1.0])


def _evolve_states(params, data, times):
    """Weighted-coordinate states per mode: list of (n, omega, array (T, 4))."""
    out = []
    for n, st in data.modes:
        block = build_modal_block(params, st.omega)
        d = _weights(params, st.omega)
        x0 = d * st.vector()
        states = np.empty((times.size, 4), dtype=complex)
        for k, t in enumerate(times):
            states[k] = smallmat.expm(block.weighted, float(t)) @ x0
        out.append((n, st.omega, states))
    return out


def _graph_norm(params, data):
    total = 0.0
    for _, st in data.modes:
        block = build_modal_block(params, st.omega)
        d = _weights(params, st.omega)
        x = st.vector()
        total += hnorm2(params, st) + float(np.sum(np.abs(d * (block.raw @ x)) ** 2))
    return math.sqrt(total)


def _dissipation(params, evolved, times):
    out = np.zeros(times.size)
    if params.undamped:
        return out
    for _, omega, states in evolved:
        gw = params.gamma * omega_pow(omega, params.theta)
        out -= gw * np.abs(states[:, 1] + states[:, 3]) ** 2
    return out


def evolve(params, data, times, keep_mode_norms=False):
    """Norm trace of the semigroup applied to the initial data.

    For positive damping the total norm is non-increasing (contraction
    semigroup); with the undamped flag it is conserved.
    """
    t = _check_times(times)
    evolved = _evolve_states(params, data, t)
    mode_norms = np.empty((len(evolved), t.size))
    for i, (_, _, states) in enumerate(evolved):
        mode_norms[i] = np.sqrt(np.sum(np.abs(states) ** 2, axis=1))
    total = np.sqrt(np.sum(mode_norms ** 2, axis=0))
    return Trace(
        times=t,
        total_norm=total,
        graph_norm=_graph_norm(params, data),
        dissipation=_dissipation(params, evolved, t),
        undamped=params.undamped,
        mode_indices=tuple(n for n, _, _ in evolved) if keep_mode_norms else None,
        mode_norms=mode_norms if keep_mode_norms else None,
    )


def sync_check(params, data, times):
    """Synchronization trace for a = b: difference and average energies.

    With equal stiffness the difference q = y - z satisfies the undamped
    equation q_tt + a A q = 0, so its energy a*omega*|u-w|^2 + |v-z|^2 is
    constant along the flow regardless of the damping; the average
    p = y + z is damped like a single elastic system and decays.
    """
    if params.a != params.b:
        raise ValueError(f"sync_check requires a == b, got a={params.a}, b={params.b}")
    t = _check_times(times)
    evolved = _evolve_states(params, data, t)
    q2 = np.zeros(t.size)
    p2 = np.zeros(t.size)
    total2 = np.zeros(t.size)
    for _, omega, states in evolved:
        sa = math.sqrt(params.a * omega)
        u = states[:, 0] / sa
        w = states[:, 2] / sa
        v = states[:, 1]
        z = states[:, 3]
        q2 += params.a * omega * np.abs(u - w) ** 2 + np.abs(v - z) ** 2
        p2 += params.a * omega * np.abs(u + w) ** 2 + np.abs(v + z) ** 2
        total2 += np.sum(np.abs(states) ** 2, axis=1)
    return Trace(
        times=t,
        total_norm=np.sqrt(total2),
        graph_norm=_graph_norm(params, data),
        dissipation=_dissipation(params, evolved, t),
        undamped=params.undamped,
        q_norm=np.sqrt(q2),
        p_norm=np.sqrt(p2),
    )


def fit_decay(trace, model):
    """Fit a decay law to a trace; returns (rate, fit residual).

    ``exponential`` fits log norm against t.  ``polynomial`` fits log of
    the graph-norm-relative norm against log(1+t), the form of the
    polynomial decay estimate.  Finite modal truncations decay faster than
    the infinite-dimensional sharp rate, so fitted rates should be read as
    at-least statements.
    """
    norms = np.asarray(trace.total_norm, dtype=float)
    t = np.asarray(trace.times, dtype=float)
    if norms.size < 16:
        raise ValueError(f"need at least 16 trace points, got {norms.size}")
    if trace.undamped:
        raise ValueError("decay fitting requires a damped trace")
    growth = np.diff(norms) > 1e-9 * norms[:-1]
    if growth.any():
        j = int(np.argmax(growth))
        raise InternalInconsistencyError(
            f"norm increased at t={t[j + 1]} under positive damping"
        )
    if model == "exponential":
        y = np.log(np.maximum(norms, 1e-300))
        slope, intercept = np.polyfit(t, y, 1)
        resid = float(np.sqrt(np.mean((y - (slope * t + intercept)) ** 2)))
        return -float(slope), resid
    if model == "polynomial":
        x = np.log1p(t)
        y = np.log(np.maximum(norms / trace.graph_norm, 1e-300))
        slope, intercept = np.polyfit(x, y, 1)
        resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
        return -float(slope), resid
    raise ValueError(f"unknown decay model {model!r}")


def abscissa_profile(params, spectrum, n_max):
    """(n, omega_n, max Re eigenvalue) for each mode up to n_max."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    n_top = n_max if spectrum.count is None else min(n_max, spectrum.count)
    out = []
    for n in range(1, n_top + 1):
        om = mode_at(spectrum, n)
        block = build_modal_block(params, om)
        re = max(ev.real for ev in smallmat.eigenvalues(block.weighted))
        out.append((n, om, re))
    return out


def spectral_abscissa(params, spectrum, n_max):
    """Largest real part among modal eigenvalues over modes 1..n_max.

    A uniform negative value accompanies exponential decay; an abscissa
    creeping to zero as n_max grows is the hallmark of the merely
    polynomial regime.  Explicit spectra are truncated at their length.
    """
    profile = abscissa_profile(params, spectrum, n_max)
    best, arg = -math.inf, 0
    for n, _, re in profile:
        if re > best:
            best, arg = re, n
    return best, arg
