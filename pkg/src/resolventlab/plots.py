"""Figure rendering for the CLI report path (Agg backend, PNG files)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def scan_figure(scan, path, title="resolvent norm"):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.loglog(scan.lambdas, scan.norms, "-", lw=1.2)
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel(r"$\|(i\lambda - \mathcal{A})^{-1}\|$")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, path)


def witness_figure(witnesses, path, title="certified resolvent lower bounds"):
    lams = [w.lam for w in witnesses]
    bounds = [w.lower_bound for w in witnesses]
    residuals = [w.residual for w in witnesses]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.loglog(lams, bounds, "o-", ms=3, lw=1.0, label="lower bound 1/residual")
    ax.loglog(lams, residuals, "s--", ms=3, lw=1.0, label="residual")
    ax.set_xlabel(r"$\lambda_n$")
    ax.set_title(title)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, path)


def trace_figure(trace, path, title="energy decay"):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.semilogy(trace.times, trace.total_norm, "-", lw=1.2, label="total norm")
    if trace.q_norm is not None:
        ax.semilogy(trace.times, trace.q_norm, "--", lw=1.0, label="q (difference)")
    if trace.p_norm is not None:
        ax.semilogy(trace.times, trace.p_norm, ":", lw=1.0, label="p (average)")
    ax.set_xlabel("t")
    ax.set_ylabel("energy norm")
    ax.set_title(title)
    ax.legend()
    ax.grid(True, alpha=0.3)
    return _save(fig, path)


def abscissa_figure(profile, path, title="spectral abscissa by mode"):
    omegas = [om for _, om, _ in profile]
    res = [re for _, _, re in profile]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.semilogx(omegas, res, ".-", ms=3, lw=0.8)
    ax.axhline(0.0, color="k", lw=0.6)
    ax.set_xlabel(r"$\omega_n$")
    ax.set_ylabel("max Re eigenvalue")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, path)
