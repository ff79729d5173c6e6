"""Optimality witness sequences and certified resolvent lower bounds.

Single-mode unit states Z_n = (a_n, i*lam_n*a_n, c_n, i*lam_n*c_n) built so
that (i*lam_n - A_theta) Z_n collapses to a single small component; the
reciprocal of the collapse residual is then a certified lower bound on the
resolvent norm at lam_n.  Two constructions are provided:

* the non-analyticity sequence, driven at the constrained-average frequency
  lam_n = sqrt(alpha*omega_n) with alpha = (a+b)/2, whose residual scales
  like omega**(1-theta); and
* the polynomial/Gevrey optimality sequence, driven at lam_n =
  sqrt(a*omega_n), whose residual scales like gamma*omega**theta.

Both require distinct stiffness constants (beta = (a-b)/2 != 0).

The constructions are evaluated internally at 40 significant digits and
rounded to doubles for storage.  This is not cosmetic: the damping term
couples the residual to quantities about gamma*lam*omega**theta/|residual|
times larger (around 1e12 at theta = 1, omega = 1e8), so a double-precision
state cannot reproduce its own residual to the 1e-9 cross-validation level
there.  The dual-route check (closed form against direct application of
the generator) still validates the algebra; extended precision only removes
rounding noise from the comparison.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from mpmath import mp

from .errors import DegenerateParametersError, InternalInconsistencyError
from .modal import ModalState, hnorm, modal_resolvent_norm
from .model import SpectrumModel

_DPS = 40


@dataclass(frozen=True)
class Witness:
    """One rung of an optimality sequence.

    ``lower_bound = 1/residual`` certifies that the resolvent norm at
    ``lam`` is at least ``lower_bound`` (the state has unit energy norm).
    ``residual_direct`` is the independent evaluation of the defect by
    applying the modal generator; it must agree with the closed form.
    """

    kind: str
    n: int
    omega: float
    lam: float
    state: ModalState
    residual: float
    residual_direct: float
    lower_bound: float
    hnorm_error: float
    a_n: complex
    c_n: complex
    alpha0: float = None
    beta0: float = None
    r_n: float = None
    zeta_n: float = None
    theta_warning: bool = False


def _require_witness_params(params):
    if params.gamma_eff <= 0:
        raise ValueError("witness constructions require positive damping")
    if params.beta_half == 0.0:
        raise DegenerateParametersError(
            "witness constructions require distinct stiffness constants a != b"
        )


def _direct_residual(a, b, g, th, om, lam, an, cn):
    """hnorm of (i*lam*I - raw_block) Z at working precision.

    The first and third components vanish identically (the state is built
    with v = i*lam*u, z = i*lam*w), so only the two velocity components
    contribute; their energy weight is 1.
    """
    ilam = mp.mpc(0, 1) * lam
    gg = g * om ** th
    v = ilam * an
    z = ilam * cn
    vz = v + z
    comp2 = ilam * v + a * om * an + gg * vz
    comp4 = ilam * z + b * om * cn + gg * vz
    return mp.sqrt(abs(comp2) ** 2 + abs(comp4) ** 2)


def _finish(kind, n, params, omega, lam, an, cn, res_cf, res_dir, extra,
            theta_warning=False):
    rel_dev = abs(res_cf - res_dir) / res_cf
    if rel_dev > mp.mpf("1e-20"):
        raise InternalInconsistencyError(
            f"closed-form and direct residuals disagree at {float(rel_dev):.3e}"
        )
    lam_f = float(lam)
    state = ModalState(omega=float(omega), u=complex(an), v=complex(1j * lam_f * complex(an)),
                       w=complex(cn), z=complex(1j * lam_f * complex(cn)))
    residual = float(res_cf)
    w = Witness(
        kind=kind,
        n=n,
        omega=float(omega),
        lam=lam_f,
        state=state,
        residual=residual,
        residual_direct=float(res_dir),
        lower_bound=1.0 / residual,
        hnorm_error=abs(hnorm(params, state) - 1.0),
        a_n=complex(an),
        c_n=complex(cn),
        theta_warning=theta_warning,
        **extra,
    )
    return w


def witness_nonanalytic(params, omega, n=0):
    """Non-analyticity witness at the constrained frequency sqrt(alpha*omega).

    Intended for theta in (1/2, 1], where lam**r/residual blows up along the
    sequence for every r > 2*(1-theta).  The algebra is valid for any theta
    in [-1, 1]; outside (1/2, 1] the witness is still built (useful for
    probing where the conclusion fails) and flagged with a warning.
    """
    _require_witness_params(params)
    if not (omega > 0 and math.isfinite(omega)):
        raise ValueError(f"omega must be positive, got {omega}")
    theta_warning = not (params.theta > 0.5)
    if theta_warning:
        warnings.warn(
            f"non-analyticity witness built outside theta in (1/2, 1] "
            f"(theta={params.theta}); the vanishing conclusion needs theta > 1/2",
            RuntimeWarning,
            stacklevel=2,
        )
    with mp.workdps(_DPS):
        a, b, g = mp.mpf(params.a), mp.mpf(params.b), mp.mpf(params.gamma)
        th, om = mp.mpf(params.theta), mp.mpf(omega)
        al = (a + b) / 2
        be = (a - b) / 2
        lam = mp.sqrt(al * om)
        gh = mp.sqrt(al) * g * om ** (th - mp.mpf(1) / 2)
        zeta = ((a + al) * be ** 2
                / (4 * al * ((b + al) * be ** 2 + 4 * al ** 2 * g ** 2 * om ** (2 * th - 1))))
        a0 = 1 / mp.sqrt(4 * (a + b))
        b0 = a0
        ssum = a0 + b0
        r = zeta / (mp.sqrt(ssum ** 2 + 2 * zeta) + ssum)
        cn = mp.mpc(a0 + r, b0 + r) / mp.sqrt(om)
        an = -mp.mpc(0, 1) * gh * cn / (be + mp.mpc(0, 1) * gh)
        res_cf = be ** 2 * om * abs(cn) / mp.sqrt(be ** 2 + al * g ** 2 * om ** (2 * th - 1))
        res_dir = _direct_residual(a, b, g, th, om, lam, an, cn)
        return _finish(
            "nonanalytic", n, params, omega, lam, an, cn, res_cf, res_dir,
            extra={
                "alpha0": float(a0),
                "beta0": float(b0),
                "r_n": float(r),
                "zeta_n": float(zeta),
            },
            theta_warning=theta_warning,
        )


def witness_polyopt(params, omega, n=0):
    """Optimality witness at the first resonance sqrt(a*omega).

    Used for the Gevrey optimality range theta in (0, 1/2) (lam**r/residual
    blows up for r > 2*theta) and reused verbatim for the polynomial-decay
    optimality range theta in [-1, 0) (lam**r * residual -> 0 exactly when
    r < -2*theta).  The phase of c_n is fixed real positive; only its
    modulus is constrained by the unit-norm requirement.
    """
    _require_witness_params(params)
    if not (omega > 0 and math.isfinite(omega)):
        raise ValueError(f"omega must be positive, got {omega}")
    if params.theta > 0.5:
        raise ValueError(
            f"polyopt witness requires theta in [-1, 1/2], got {params.theta}"
        )
    with mp.workdps(_DPS):
        a, b, g = mp.mpf(params.a), mp.mpf(params.b), mp.mpf(params.gamma)
        th, om = mp.mpf(params.theta), mp.mpf(omega)
        be = (a - b) / 2
        lam = mp.sqrt(a * om)
        cn = mp.mpc(om ** (th - 1)
                    / mp.sqrt((3 * a + b) * om ** (2 * th - 1) + 8 * be ** 2 / g ** 2), 0)
        an = -(1 + 2 * mp.mpc(0, 1) * be * om ** (mp.mpf(1) / 2 - th) / (g * mp.sqrt(a))) * cn
        res_cf = 2 * abs(be) * om * abs(cn)
        res_dir = _direct_residual(a, b, g, th, om, lam, an, cn)
        return _finish("polyopt", n, params, omega, lam, an, cn, res_cf,
                       res_dir, extra={})


def certify_lower_bound(params, w, spectrum=None):
    """Certify 1/residual as a lower bound on the resolvent norm at lam_n.

    Checks the modal norm at (omega_n, lam_n) and the global norm over a
    spectrum containing omega_n (a single-mode spectrum by default) against
    the bound; a violation beyond 1e-8 relative slack indicates a kernel or
    construction bug and raises InternalInconsistencyError.
    """
    bound = w.lower_bound
    slack = bound * (1.0 - 1e-8)
    mn = modal_resolvent_norm(params, w.omega, w.lam)
    if mn < slack:
        raise InternalInconsistencyError(
            f"modal resolvent norm {mn:.12e} below certified bound {bound:.12e}"
        )
    if spectrum is None:
        spectrum = SpectrumModel.explicit([w.omega])
    from .scan import global_resolvent_norm

    gn = global_resolvent_norm(params, spectrum, w.lam)
    if gn.norm < slack:
        raise InternalInconsistencyError(
            f"global resolvent norm {gn.norm:.12e} below certified bound {bound:.12e}"
        )
    return bound
