"""Global resolvent norm over the spectrum and frequency-grid scans.

The modal subspaces are invariant and mutually orthogonal, so the resolvent
norm of the full system at i*lam is the supremum of the modal norms.  The
modal norm at a fixed lam peaks where lam**2 is comparable to a*omega or
b*omega (the undamped eigenfrequencies) or to alpha*omega (the constrained
average mode that dominates under heavy damping), so the search is
restricted to the window omega in [lam^2/(K*max(a,b)), K*lam^2/min(a,b)]
together with a low-mode baseline and, for explicit spectra, the final
mode.  Within the window the candidate modes are the analytic resonance
anchors, a geometric lattice, and an integer hill climb from the best
basins.  Whether this search attains the true supremum for every parameter
combination is validated empirically against exhaustive maxima (see the
window-equality tests), not proved.
"""

from __future__ import annotations

import bisect
import math
import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .modal import modal_resolvent_norm
from .model import mode_at

_LATTICE_POINTS = 24
_CLIMB_SEEDS = 3


@dataclass(frozen=True)
class ScanConfig:
    """Log-spaced frequency grid plus window-search tuning."""

    lambda_min: float
    lambda_max: float
    points: int
    window_factor: float = 10.0
    baseline_modes: int = 8

    def __post_init__(self):
        if not (self.lambda_min > 0 and math.isfinite(self.lambda_min)):
            raise ValueError(f"lambda_min must be positive, got {self.lambda_min}")
        if not (self.lambda_max > self.lambda_min and math.isfinite(self.lambda_max)):
            raise ValueError("lambda_max must exceed lambda_min")
        if self.points < 2:
            raise ValueError(f"points must be at least 2, got {self.points}")
        if self.window_factor < 1:
            raise ValueError(f"window_factor must be >= 1, got {self.window_factor}")
        if self.baseline_modes < 1:
            raise ValueError(f"baseline_modes must be >= 1, got {self.baseline_modes}")

    def grid(self):
        return np.geomspace(self.lambda_min, self.lambda_max, self.points)


class GlobalNorm(NamedTuple):
    norm: float
    mode_index: int
    omega: float
    modes_examined: int


@dataclass(frozen=True)
class ResolventScan:
    """Per-grid-point global resolvent norms with dominating-mode bookkeeping."""

    lambdas: np.ndarray
    norms: np.ndarray
    mode_indices: np.ndarray
    omegas: np.ndarray
    modes_examined: np.ndarray

    def __len__(self):
        return len(self.lambdas)


def _index_window(spectrum, lo_om, hi_om):
    """1-based index range [n_lo, n_hi] with omega_n inside [lo_om, hi_om]."""
    if spectrum.kind == "explicit":
        vals = spectrum.values
        n_lo = bisect.bisect_left(vals, lo_om) + 1
        n_hi = bisect.bisect_right(vals, hi_om)
        return n_lo, min(n_hi, len(vals))
    p = spectrum.exponent
    c = spectrum.scale
    n_lo = max(1, math.ceil((lo_om / c) ** (1.0 / p) - 1e-9))
    n_hi = math.floor((hi_om / c) ** (1.0 / p) + 1e-9)
    return n_lo, n_hi


def _index_near(spectrum, om):
    """1-based index whose omega_n is nearest to om (approximately)."""
    if spectrum.kind == "explicit":
        return bisect.bisect_left(spectrum.values, om) + 1
    return round((om / spectrum.scale) ** (1.0 / spectrum.exponent))


def _anchor_omegas(params, lam):
    """Frequencies where the modal norm can peak at this lam.

    Undamped resonances omega = lam^2/a, lam^2/b, the constrained-average
    resonance lam^2/alpha, and the under/overdamped transitions where
    gamma*omega**theta crosses sqrt(a*omega) or sqrt(b*omega).
    """
    lam2 = lam * lam
    anchors = [lam2 / params.a, lam2 / params.b, lam2 / params.alpha_avg]
    g = params.gamma_eff
    if g > 0 and abs(2.0 * params.theta - 1.0) > 1e-12:
        expo = 1.0 / (2.0 * params.theta - 1.0)
        for x in (params.a, params.b):
            try:
                anchors.append((x / (g * g)) ** expo)
            except OverflowError:
                pass
    return [om for om in anchors if om > 0 and math.isfinite(om)]


def global_resolvent_norm(params, spectrum, lam, window_factor=10.0,
                          baseline_modes=8):
    """Supremum of modal resolvent norms: max, dominating mode, evaluations.

    Requires positive damping (the undamped resolvent norm is unbounded on
    the resonance set).  For explicit spectra the reported supremum is over
    the available truncation only.
    """
    if params.gamma_eff <= 0:
        raise ValueError("global resolvent norm requires positive damping")
    if window_factor < 1:
        raise ValueError(f"window_factor must be >= 1, got {window_factor}")
    if baseline_modes < 1:
        raise ValueError(f"baseline_modes must be >= 1, got {baseline_modes}")

    n_total = spectrum.count  # None for power law
    best = [0.0, 0]  # norm, index
    seen = {}

    def ev(n):
        if n in seen:
            return seen[n]
        v = modal_resolvent_norm(params, mode_at(spectrum, n), lam)
        seen[n] = v
        if v > best[0]:
            best[0], best[1] = v, n
        return v

    top = baseline_modes if n_total is None else min(baseline_modes, n_total)
    for n in range(1, top + 1):
        ev(n)
    if n_total is not None:
        ev(n_total)

    K = window_factor
    lo_om = lam * lam / (K * max(params.a, params.b))
    hi_om = K * lam * lam / min(params.a, params.b)
    n_lo, n_hi = _index_window(spectrum, lo_om, hi_om)
    if n_total is not None:
        n_hi = min(n_hi, n_total)
    if n_hi >= n_lo:
        cands = {n_lo, n_hi}
        for om in _anchor_omegas(params, lam):
            base = _index_near(spectrum, om)
            for dn in range(-2, 3):
                k = base + dn
                if n_lo <= k <= n_hi:
                    cands.add(k)
        if n_hi > n_lo:
            ratio = (n_hi / n_lo) ** (1.0 / (_LATTICE_POINTS - 1))
            x = float(n_lo)
            while x <= n_hi + 0.5:
                cands.add(min(n_hi, max(n_lo, round(x))))
                x *= max(ratio, 1.0000001)
        for n in sorted(cands):
            ev(n)
        window_vals = sorted(
            ((v, n) for n, v in seen.items() if n_lo <= n <= n_hi), reverse=True
        )
        for _, n0 in window_vals[:_CLIMB_SEEDS]:
            cur = n0
            while True:
                # pick an ascent direction, then ride it with doubling steps
                # (never unit-walk a monotone stretch)
                direction = 0
                for d in (1, -1):
                    cand = cur + d
                    if n_lo <= cand <= n_hi and ev(cand) > seen[cur]:
                        direction = d
                        cur = cand
                        break
                if direction == 0:
                    break
                step = 2
                while True:
                    cand = cur + direction * step
                    if n_lo <= cand <= n_hi and ev(cand) > seen[cur]:
                        cur = cand
                        step *= 2
                    else:
                        break

    idx = best[1]
    return GlobalNorm(norm=best[0], mode_index=idx,
                      omega=mode_at(spectrum, idx), modes_examined=len(seen))


def _thread_count():
    raw = os.environ.get("RESOLVENTLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def scan_at(params, spectrum, lambdas, window_factor=10.0, baseline_modes=8):
    """Evaluate the global resolvent norm at an explicit frequency list.

    Grid points are independent; with RESOLVENTLAB_THREADS > 1 they are
    evaluated in a thread pool and merged back in grid order, so the output
    is identical to the serial run.
    """
    lambdas = np.asarray(list(lambdas), dtype=float)
    if lambdas.size == 0:
        raise ValueError("empty frequency grid")

    def one(lam):
        return global_resolvent_norm(params, spectrum, float(lam),
                                     window_factor=window_factor,
                                     baseline_modes=baseline_modes)

    workers = _thread_count()
    if workers > 1 and lambdas.size > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, lambdas))
    else:
        results = [one(lam) for lam in lambdas]
    return ResolventScan(
        lambdas=lambdas,
        norms=np.array([r.norm for r in results]),
        mode_indices=np.array([r.mode_index for r in results], dtype=int),
        omegas=np.array([r.omega for r in results]),
        modes_examined=np.array([r.modes_examined for r in results], dtype=int),
    )


def scan(params, spectrum, config):
    """Log-spaced scan of the global resolvent norm."""
    return scan_at(params, spectrum, config.grid(),
                   window_factor=config.window_factor,
                   baseline_modes=config.baseline_modes)


def resonance_grid(params, spectrum, lambda_min, lambda_max, points):
    """Frequencies lam_n = sqrt(a*omega_n) for log-spaced mode indices.

    For theta < 0 the resolvent peaks have width ~ gamma*omega**theta,
    narrower than any fixed log grid, so asymptotic slopes in the
    polynomial regime are measured at the modal resonance frequencies (the
    frequencies along which the optimality witnesses certify blowup).
    """
    if not (0 < lambda_min < lambda_max):
        raise ValueError("need 0 < lambda_min < lambda_max")
    if points < 2:
        raise ValueError(f"points must be at least 2, got {points}")
    lams = []
    n_prev = 0
    for target in np.geomspace(lambda_min, lambda_max, points):
        om_target = target * target / params.a
        n = max(1, _index_near(spectrum, om_target), n_prev + 1)
        if spectrum.count is not None and n > spectrum.count:
            break
        n_prev = n
        lams.append(math.sqrt(params.a * mode_at(spectrum, n)))
    return np.array(lams)
