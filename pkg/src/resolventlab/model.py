"""System parameters and spectral representation of the principal operator.

The coupled system is driven by a single positive self-adjoint operator A
with eigenpairs ``A e_n = omega_n e_n`` and normalized eigenfunctions.
Everything downstream depends on A only through the eigenvalue sequence
``omega_n``, so the operator is represented here either by an explicit list
of eigenvalues or by a power-law generator ``omega_n = scale * n**exponent``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SystemParams:
    """Constants of the coupled system.

    Parameters
    ----------
    a, b : float
        Stiffness constants of the two wave equations (positive).
    gamma : float
        Damping gain (positive; may be 0 only with ``undamped=True``).
    theta : float
        Fractional power of the principal operator in the damping,
        restricted to [-1, 1].
    undamped : bool, optional
        When True the damping is treated as exactly zero regardless of
        ``gamma``.  Only the conservative-case simulations admit this;
        every theorem-facing operation requires positive damping.

    Notes
    -----
    ``alpha_avg = (a+b)/2`` and ``beta_half = (a-b)/2`` are derived and kept
    consistent with ``a`` and ``b`` by construction.  The optimality-witness
    operations additionally require ``beta_half != 0``; ``a == b`` is
    permitted only for the synchronization simulation.
    """

    a: float
    b: float
    gamma: float
    theta: float
    undamped: bool = False
    alpha_avg: float = field(init=False)
    beta_half: float = field(init=False)

    def __post_init__(self):
        if not (self.a > 0 and math.isfinite(self.a)):
            raise ValueError(f"stiffness a must be positive, got {self.a}")
        if not (self.b > 0 and math.isfinite(self.b)):
            raise ValueError(f"stiffness b must be positive, got {self.b}")
        if self.undamped:
            if not (self.gamma >= 0 and math.isfinite(self.gamma)):
                raise ValueError(f"gamma must be nonnegative, got {self.gamma}")
        elif not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not (-1.0 <= self.theta <= 1.0):
            raise ValueError(f"theta must lie in [-1, 1], got {self.theta}")
        object.__setattr__(self, "alpha_avg", 0.5 * (self.a + self.b))
        object.__setattr__(self, "beta_half", 0.5 * (self.a - self.b))

    @property
    def gamma_eff(self):
        """Damping gain actually applied (0 when the undamped flag is set)."""
        return 0.0 if self.undamped else self.gamma


def omega_pow(omega, theta):
    """omega**theta evaluated as exp(theta*log(omega)).

    Underflow to 0 for theta < 0 at large omega is legitimate: vanishing
    high-frequency damping is the polynomial-decay mechanism.
    """
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if theta == 0.0:
        return 1.0
    return math.exp(theta * math.log(omega))


@dataclass(frozen=True)
class SpectrumModel:
    """Eigenvalue sequence of the principal operator.

    Either an explicit finite list (treated as a truncation by all
    operations) or a lazily enumerated power law ``omega_n = scale * n**p``.
    Repeated eigenvalues contribute identical modal blocks and leave every
    sup-over-modes unchanged, so explicit lists may carry duplicates
    (non-decreasing); generated spectra are strictly increasing.
    """

    kind: str
    values: tuple = None
    scale: float = None
    exponent: float = None

    def __post_init__(self):
        if self.kind == "explicit":
            vals = tuple(float(v) for v in self.values)
            if not vals:
                raise ValueError("explicit spectrum needs at least one eigenvalue")
            prev = 0.0
            for i, v in enumerate(vals):
                if not (v > 0 and math.isfinite(v)):
                    raise ValueError(f"eigenvalue {i + 1} must be positive, got {v}")
                if v < prev:
                    raise ValueError(
                        f"eigenvalues must be non-decreasing, got {v} after {prev}"
                    )
                prev = v
            object.__setattr__(self, "values", vals)
        elif self.kind == "power-law":
            if not (self.scale is not None and self.scale > 0 and math.isfinite(self.scale)):
                raise ValueError(f"power-law scale must be positive, got {self.scale}")
            if not (self.exponent is not None and self.exponent > 0 and math.isfinite(self.exponent)):
                raise ValueError(f"power-law exponent must be positive, got {self.exponent}")
        else:
            raise ValueError(f"unknown spectrum kind {self.kind!r}")

    @classmethod
    def explicit(cls, values):
        return cls(kind="explicit", values=tuple(values))

    @classmethod
    def power_law(cls, scale, exponent):
        return cls(kind="power-law", scale=float(scale), exponent=float(exponent))

    @property
    def count(self):
        """Number of modes, or None for the (infinite) power law."""
        return len(self.values) if self.kind == "explicit" else None


def make_membrane_spectrum(length, count):
    """Dirichlet-Laplacian eigenvalues of an interval: omega_n = (n*pi/length)**2."""
    if not (length > 0 and math.isfinite(length)):
        raise ValueError(f"length must be positive, got {length}")
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    return SpectrumModel.explicit(
        (n * math.pi / length) ** 2 for n in range(1, int(count) + 1)
    )


def make_plate_spectrum(length, count):
    """Clamped bi-Laplacian surrogate on an interval: omega_n = (n*pi/length)**4."""
    if not (length > 0 and math.isfinite(length)):
        raise ValueError(f"length must be positive, got {length}")
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    return SpectrumModel.explicit(
        (n * math.pi / length) ** 4 for n in range(1, int(count) + 1)
    )


def mode_at(spectrum, n):
    """omega_n for 1-based mode index n."""
    if n < 1:
        raise IndexError(f"mode index must be >= 1, got {n}")
    if spectrum.kind == "explicit":
        if n > len(spectrum.values):
            raise IndexError(
                f"mode {n} out of range for {len(spectrum.values)}-mode spectrum"
            )
        return spectrum.values[n - 1]
    return spectrum.scale * float(n) ** spectrum.exponent
