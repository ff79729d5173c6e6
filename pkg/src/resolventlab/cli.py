"""Command-line interface.

Subcommands mirror the toolkit operations one-to-one:

    scan | classify | witness | simulate | abscissa | certify

Each takes ``--config <json>`` and ``--out <dir>`` and writes a JSON report
plus CSV data files and PNG figures (``--no-plots`` suppresses the
figures).  Exit codes: 0 success, 2 config error, 3 computation error.
Set RESOLVENTLAB_THREADS to parallelize scan grids.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import report as rep
from .asymptotics import classify, fit_exponent
from .config import COMMANDS, load_job
from .errors import ConfigError, ResolventLabError
from .model import mode_at
from .scan import ScanConfig, global_resolvent_norm, resonance_grid, scan, scan_at
from .simulate import abscissa_profile, evolve, fit_decay, sync_check
from .witness import certify_lower_bound, witness_nonanalytic, witness_polyopt

_REGIME_SAMPLES = (
    ("[-1, 0)", -0.5),
    ("{0}", 0.0),
    ("(0, 1/4]", 0.2),
    ("(1/4, 1/2]", 0.4),
    ("(1/2, 1)", 0.75),
    ("{1}", 1.0),
)


def _classify_table():
    lines = [
        f"{'theta':<12}{'analytic':<14}{'differentiable':<16}"
        f"{'gevrey s':<12}{'stability':<14}{'decay rate'}"
    ]
    for label, th in _REGIME_SAMPLES:
        rc = classify(th)
        gev = f"{rc.gevrey_s:.4g}" if rc.gevrey_s is not None else "-"
        rate = f"(1+t)^-{rc.poly_rate:.4g}" if rc.poly_rate is not None else "exp"
        lines.append(f"{label:<12}{rc.analytic:<14}{rc.differentiable:<16}"
                     f"{gev:<12}{rc.stability:<14}{rate}")
    return "\n".join(lines)


def _build_witnesses(job, options):
    build = witness_nonanalytic if options.construction == "nonanalytic" else witness_polyopt
    out = []
    for n in options.modes:
        om = mode_at(job.spectrum, n)
        out.append(build(job.params, om, n=n))
    return out


def _run_scan(job, out_dir, render):
    opts = job.scan
    if opts.grid == "resonance":
        grid = resonance_grid(job.params, job.spectrum, opts.lambda_min,
                              opts.lambda_max, opts.points)
        result = scan_at(job.params, job.spectrum, grid,
                         window_factor=opts.window_factor,
                         baseline_modes=opts.baseline_modes)
    else:
        cfg = ScanConfig(lambda_min=opts.lambda_min, lambda_max=opts.lambda_max,
                         points=opts.points, window_factor=opts.window_factor,
                         baseline_modes=opts.baseline_modes)
        result = scan(job.params, job.spectrum, cfg)
    csv_path = os.path.join(out_dir, "scan.csv")
    rep.write_csv(csv_path, rep.SCAN_HEADER, rep.scan_rows(result))
    results = {
        "points": len(result),
        "sup_norm": float(result.norms.max()),
        "sup_at_lambda": float(result.lambdas[result.norms.argmax()]),
        "grid": opts.grid,
    }
    if opts.fit_decades is not None:
        fit = fit_exponent(result, opts.fit_decades)
        results["fit"] = fit
        print(f"fitted log-log slope over trailing {opts.fit_decades} decades: "
              f"{fit.slope:.4f} (rms residual {fit.residual:.2e})")
    figures = []
    if render:
        from . import plots
        figures.append(plots.scan_figure(
            result, os.path.join(out_dir, "scan.png"),
            title=f"resolvent norm (theta={job.params.theta})"))
    print(f"scan: {len(result)} points, sup norm {results['sup_norm']:.6g} "
          f"at lambda={results['sup_at_lambda']:.6g}")
    return results, [csv_path], figures


def _run_classify(job, out_dir, render):
    rc = classify(job.params.theta)
    print(f"theta = {job.params.theta}")
    print(f"  analytic:        {rc.analytic}")
    print(f"  differentiable:  {rc.differentiable}")
    if rc.gevrey_s is not None:
        print(f"  gevrey s:        {rc.gevrey_s} (class delta > {rc.gevrey_delta_threshold})")
    if rc.nonanalytic_threshold is not None:
        print(f"  blowup for r >   {rc.nonanalytic_threshold}")
    print(f"  stability:       {rc.stability}"
          + (f" (rate (1+t)^-{rc.poly_rate})" if rc.poly_rate is not None else ""))
    if rc.optimal_lower_exponent is not None:
        print(f"  optimal exponent: {rc.optimal_lower_exponent}")
    print()
    print(_classify_table())
    return rc, [], []


def _run_witness(job, out_dir, render):
    witnesses = _build_witnesses(job, job.witness)
    csv_path = os.path.join(out_dir, "witness.csv")
    rep.write_csv(csv_path, rep.WITNESS_HEADER, rep.witness_rows(witnesses))
    results = {
        "construction": job.witness.construction,
        "count": len(witnesses),
        "max_hnorm_error": max(w.hnorm_error for w in witnesses),
        "max_residual_deviation": max(
            abs(w.residual - w.residual_direct) / w.residual for w in witnesses),
    }
    figures = []
    if render:
        from . import plots
        figures.append(plots.witness_figure(
            witnesses, os.path.join(out_dir, "witness.png"),
            title=f"{job.witness.construction} witnesses (theta={job.params.theta})"))
    print(f"witness: {len(witnesses)} states, max |hnorm-1| = "
          f"{results['max_hnorm_error']:.3e}")
    return results, [csv_path], figures


def _run_certify(job, out_dir, render):
    witnesses = _build_witnesses(job, job.certify)
    rows = []
    from .modal import modal_resolvent_norm

    for w in witnesses:
        bound = certify_lower_bound(job.params, w, spectrum=job.spectrum)
        mn = modal_resolvent_norm(job.params, w.omega, w.lam)
        gn = global_resolvent_norm(job.params, job.spectrum, w.lam)
        rows.append((w.n, w.omega, w.lam, bound, mn, gn.norm))
    csv_path = os.path.join(out_dir, "certify.csv")
    rep.write_csv(csv_path, rep.CERTIFY_HEADER, rows)
    results = {
        "construction": job.certify.construction,
        "count": len(rows),
        "min_margin": min(r[5] / r[3] for r in rows),
    }
    figures = []
    if render:
        from . import plots
        figures.append(plots.witness_figure(
            witnesses, os.path.join(out_dir, "certify.png"),
            title="certified lower bounds"))
    print(f"certify: {len(rows)} bounds hold "
          f"(min global/bound margin {results['min_margin']:.6g})")
    return results, [csv_path], figures


def _run_simulate(job, out_dir, render):
    opts = job.simulate
    data = job.initial_data()
    if opts.sync:
        trace = sync_check(job.params, data, opts.times)
    else:
        trace = evolve(job.params, data, opts.times, keep_mode_norms=opts.mode_norms)
    csv_path = os.path.join(out_dir, "trace.csv")
    header, rows = rep.trace_header_rows(trace)
    rep.write_csv(csv_path, header, rows)
    results = {
        "modes": len(data.modes),
        "initial_norm": float(trace.total_norm[0]),
        "final_norm": float(trace.total_norm[-1]),
        "graph_norm": trace.graph_norm,
        "sync": opts.sync,
    }
    if opts.fit is not None:
        rate, resid = fit_decay(trace, opts.fit)
        results["decay_fit"] = {"model": opts.fit, "rate": rate, "residual": resid}
        print(f"fitted {opts.fit} decay rate: {rate:.4f} (rms residual {resid:.2e})")
    figures = []
    if render:
        from . import plots
        figures.append(plots.trace_figure(
            trace, os.path.join(out_dir, "trace.png"),
            title=f"energy trace (theta={job.params.theta})"))
    print(f"simulate: norm {results['initial_norm']:.6g} -> "
          f"{results['final_norm']:.6g} over t in [0, {opts.times[-1]:g}]")
    return results, [csv_path], figures


def _run_abscissa(job, out_dir, render):
    profile = abscissa_profile(job.params, job.spectrum, job.abscissa.n_max)
    best = max(profile, key=lambda row: row[2])
    csv_path = os.path.join(out_dir, "abscissa.csv")
    rep.write_csv(csv_path, rep.ABSCISSA_HEADER, profile)
    results = {
        "abscissa": best[2],
        "argmax_mode": best[0],
        "argmax_omega": best[1],
        "n_max": job.abscissa.n_max,
    }
    figures = []
    if render:
        from . import plots
        figures.append(plots.abscissa_figure(
            profile, os.path.join(out_dir, "abscissa.png"),
            title=f"spectral abscissa (theta={job.params.theta})"))
    print(f"abscissa: {best[2]:.6g} attained at mode {best[0]}")
    return results, [csv_path], figures


_RUNNERS = {
    "scan": _run_scan,
    "classify": _run_classify,
    "witness": _run_witness,
    "simulate": _run_simulate,
    "abscissa": _run_abscissa,
    "certify": _run_certify,
}


def run(command, job, out_dir, render_plots=True):
    """Execute a validated job; returns the results payload."""
    os.makedirs(out_dir, exist_ok=True)
    results, csv_files, figures = _RUNNERS[command](job, out_dir, render_plots)
    report_path = os.path.join(out_dir, "report.json")
    rep.write_report(report_path, command, job.echo, results,
                     [os.path.basename(p) for p in csv_files],
                     [os.path.basename(p) for p in figures])
    return results


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="resolventlab",
        description="Resolvent-based regularity and stability diagnostics "
                    "for coupled damped elastic systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON job configuration")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--no-plots", action="store_true",
                       help="skip figure rendering")
    args = parser.parse_args(argv)
    try:
        job = load_job(args.config, command=args.command)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        run(args.command, job, args.out, render_plots=not args.no_plots)
    except (ResolventLabError, ValueError, IndexError) as exc:
        print(f"computation error in {args.command}: "
              f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
