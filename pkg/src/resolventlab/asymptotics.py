"""Regime classification and asymptotic exponent estimation from scans.

The theta-regimes of the coupled system:

    theta in (1/2, 1]   semigroup not analytic; lam**r * R blows up along a
                        subsequence for every r > 2*(1-theta)
    theta in (0, 1)     differentiable, with log(lam) * R bounded; the
                        differentiability horizon is 3*K0 where K0 is the
                        limsup of log(lam) * R
    theta in (0, 1/4]   Gevrey class delta for delta > 1/(2*theta), since
                        lam**(2*theta) * R stays bounded (optimal)
    theta in (1/4, 1/2] Gevrey with s = 3*theta/(1+2*theta) (sharpness open)
    theta in [0, 1]     exponentially stable
    theta in [-1, 0)    polynomially stable at rate -1/(2*theta), optimal

Bounds proved as limsup statements are probed here with finite two-scan
ratio tests (stable vs growing sup of lam**s * R when the grid is
extended); the thresholds are heuristics with margin, not certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

YES = "yes"
NO = "no"
NOT_ASSERTED = "not-asserted"
EXPONENTIAL = "exponential"
POLYNOMIAL = "polynomial"


@dataclass(frozen=True)
class RegularityClass:
    """Pure function of theta reproducing the theorem table."""

    theta: float
    analytic: str
    differentiable: str
    gevrey_s: float | None
    gevrey_delta_threshold: float | None
    stability: str
    poly_rate: float | None
    nonanalytic_threshold: float | None
    optimal_lower_exponent: float | None


def classify(theta):
    """Regularity/stability regime for a damping power theta in [-1, 1]."""
    if not (-1.0 <= theta <= 1.0):
        raise ValueError(f"theta must lie in [-1, 1], got {theta}")
    analytic = NO if theta > 0.5 else NOT_ASSERTED
    differentiable = YES if 0.0 < theta < 1.0 else NOT_ASSERTED
    nonanalytic_threshold = 2.0 * (1.0 - theta) if theta > 0.5 else None
    if 0.0 < theta <= 0.25:
        gevrey_s = 2.0 * theta
    elif 0.25 < theta <= 0.5:
        gevrey_s = 3.0 * theta / (1.0 + 2.0 * theta)
    else:
        gevrey_s = None
    gevrey_delta_threshold = 1.0 / gevrey_s if gevrey_s else None
    if theta >= 0.0:
        stability, poly_rate = EXPONENTIAL, None
    else:
        stability, poly_rate = POLYNOMIAL, -1.0 / (2.0 * theta)
    if 0.0 < theta < 0.5:
        optimal_lower_exponent = 2.0 * theta
    elif theta < 0.0:
        optimal_lower_exponent = -2.0 * theta
    else:
        optimal_lower_exponent = None
    return RegularityClass(
        theta=float(theta),
        analytic=analytic,
        differentiable=differentiable,
        gevrey_s=gevrey_s,
        gevrey_delta_threshold=gevrey_delta_threshold,
        stability=stability,
        poly_rate=poly_rate,
        nonanalytic_threshold=nonanalytic_threshold,
        optimal_lower_exponent=optimal_lower_exponent,
    )


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares slope of log R against log lam over a trailing window."""

    slope: float
    intercept: float
    window: tuple
    residual: float


def fit_exponent(scan, decades):
    """Fit log R ~ slope * log lam over the trailing `decades` decades.

    The trailing window avoids pre-asymptotic contamination from the low
    modes.  Requires at least 8 points spanning at least `decades` decades.
    """
    if decades <= 0:
        raise ValueError(f"decades must be positive, got {decades}")
    lam = np.asarray(scan.lambdas, dtype=float)
    if lam.size < 8:
        raise ValueError(f"need at least 8 scan points, got {lam.size}")
    span = math.log10(lam[-1] / lam[0])
    if span < decades * (1.0 - 1e-9):
        raise ValueError(
            f"scan spans {span:.3f} decades, need at least {decades}"
        )
    lo = lam[-1] / 10.0 ** decades
    mask = lam >= lo * (1.0 - 1e-12)
    x = np.log10(lam[mask])
    y = np.log10(np.asarray(scan.norms, dtype=float)[mask])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return ExponentFit(slope=float(slope), intercept=float(intercept),
                       window=(float(lo), float(lam[-1])), residual=resid)


def check_bound(scan, s):
    """Grid maximum of lam**s * R(lam) and the frequency attaining it."""
    lam = np.asarray(scan.lambdas, dtype=float)
    if lam.size == 0:
        raise ValueError("empty scan")
    vals = lam ** s * np.asarray(scan.norms, dtype=float)
    j = int(np.argmax(vals))
    return float(vals[j]), float(lam[j])


@dataclass(frozen=True)
class DifferentiabilityEstimate:
    """Grid estimates of the log-weighted resolvent maxima."""

    K0_estimate: float
    lambda0: float
    log_power_checks: tuple


def estimate_K0(scan, lambda0, log_powers=()):
    """Max over lam >= lambda0 of log(lam) * R, plus (log lam)**r variants.

    K0 estimates the constant whose triple bounds the differentiability
    horizon; the log-power maxima probe the strengthened estimate available
    for theta in (0, 1).
    """
    lam = np.asarray(scan.lambdas, dtype=float)
    if not (lambda0 > 1.0):
        raise ValueError(f"lambda0 must exceed 1, got {lambda0}")
    if lambda0 > lam[-1]:
        raise ValueError(f"lambda0={lambda0} beyond scan range (max {lam[-1]})")
    mask = lam >= lambda0 * (1.0 - 1e-12)
    if not mask.any():
        raise ValueError("no scan points at or above lambda0")
    loglam = np.log(lam[mask])
    R = np.asarray(scan.norms, dtype=float)[mask]
    checks = tuple((float(r), float(np.max(loglam ** r * R))) for r in log_powers)
    return DifferentiabilityEstimate(
        K0_estimate=float(np.max(loglam * R)),
        lambda0=float(lambda0),
        log_power_checks=checks,
    )
