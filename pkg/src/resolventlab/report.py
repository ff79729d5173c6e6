"""Serialization of results: CSV data files and the JSON job report.

Numeric CSV cells use the shortest round-trip decimal representation
(Python's repr), so byte-identical configs produce byte-identical files.
Column layouts are documented in FORMATS.md.
"""

from __future__ import annotations

import dataclasses
import json
import sys


def _cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def scan_rows(scan):
    for lam, norm, idx, om, ex in zip(scan.lambdas, scan.norms, scan.mode_indices,
                                      scan.omegas, scan.modes_examined):
        yield (float(lam), float(norm), int(idx), float(om), int(ex))


SCAN_HEADER = ("lambda", "norm", "mode_index", "omega", "modes_examined")


def witness_rows(witnesses):
    for w in witnesses:
        yield (w.n, w.omega, w.lam, w.residual, w.lower_bound, w.hnorm_error)


WITNESS_HEADER = ("n", "omega", "lambda", "residual", "lower_bound", "hnorm_error")

CERTIFY_HEADER = ("n", "omega", "lambda", "lower_bound", "modal_norm", "global_norm")


def trace_header_rows(trace):
    header = ["t", "total_norm"]
    columns = [trace.times, trace.total_norm]
    if trace.q_norm is not None:
        header.append("q_norm")
        columns.append(trace.q_norm)
    if trace.p_norm is not None:
        header.append("p_norm")
        columns.append(trace.p_norm)
    if trace.mode_norms is not None:
        for i, n in enumerate(trace.mode_indices):
            header.append(f"mode_{n}_norm")
            columns.append(trace.mode_norms[i])
    rows = [tuple(float(col[k]) for col in columns) for k in range(len(trace.times))]
    return tuple(header), rows


ABSCISSA_HEADER = ("n", "omega", "max_real_part")


def _jsonable(value):
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return _jsonable(value.item())
    return value


def write_report(path, command, config_echo, results, csv_files, figure_files):
    import matplotlib
    import mpmath
    import numpy

    from . import __version__

    doc = {
        "tool": {"name": "resolventlab", "version": __version__},
        "command": command,
        "config": _jsonable(config_echo),
        "versions": {
            "python": sys.version.split()[0],
            "numpy": numpy.__version__,
            "matplotlib": matplotlib.__version__,
            "mpmath": mpmath.__version__,
        },
        "results": _jsonable(results),
        "outputs": {"csv": list(csv_files), "figures": list(figure_files)},
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return path
