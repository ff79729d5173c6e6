"""Job configuration: a single JSON document, strictly validated.

Unknown fields are rejected and every diagnostic carries the JSON path of
the offending entry (or the line/column for parse errors), so a config
failure is always attributable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ConfigError
from .modal import ModalState
from .model import SpectrumModel, SystemParams, mode_at

COMMANDS = ("scan", "classify", "witness", "simulate", "abscissa", "certify")


def _require_object(value, loc):
    if not isinstance(value, dict):
        raise ConfigError(f"expected an object, got {type(value).__name__}", loc)
    return value


def _reject_extras(obj, allowed, loc):
    extras = sorted(set(obj) - set(allowed))
    if extras:
        raise ConfigError(f"unknown field(s): {', '.join(extras)}", loc)


def _number(value, loc):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {type(value).__name__}", loc)
    if not math.isfinite(value):
        raise ConfigError("number must be finite", loc)
    return float(value)


def _integer(value, loc):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {type(value).__name__}", loc)
    return value


def _boolean(value, loc):
    if not isinstance(value, bool):
        raise ConfigError(f"expected a boolean, got {type(value).__name__}", loc)
    return value


def _complex(value, loc):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if isinstance(value, list) and len(value) == 2:
        return complex(_number(value[0], f"{loc}[0]"), _number(value[1], f"{loc}[1]"))
    raise ConfigError("expected a number or [re, im] pair", loc)


def _parse_params(obj, loc):
    _require_object(obj, loc)
    _reject_extras(obj, ("a", "b", "gamma", "theta", "undamped"), loc)
    kwargs = {}
    for key in ("a", "b", "gamma", "theta"):
        if key not in obj:
            raise ConfigError(f"missing required field {key!r}", loc)
        kwargs[key] = _number(obj[key], f"{loc}.{key}")
    if "undamped" in obj:
        kwargs["undamped"] = _boolean(obj["undamped"], f"{loc}.undamped")
    try:
        return SystemParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc), loc) from exc


def _parse_spectrum(obj, loc):
    _require_object(obj, loc)
    kind = obj.get("kind")
    if kind == "power-law":
        _reject_extras(obj, ("kind", "scale", "exponent"), loc)
        for key in ("scale", "exponent"):
            if key not in obj:
                raise ConfigError(f"missing required field {key!r}", loc)
        try:
            return SpectrumModel.power_law(_number(obj["scale"], f"{loc}.scale"),
                                           _number(obj["exponent"], f"{loc}.exponent"))
        except ValueError as exc:
            raise ConfigError(str(exc), loc) from exc
    if kind == "explicit":
        _reject_extras(obj, ("kind", "values"), loc)
        values = obj.get("values")
        if not isinstance(values, list):
            raise ConfigError("explicit spectrum needs a 'values' list", loc)
        vals = [_number(v, f"{loc}.values[{i}]") for i, v in enumerate(values)]
        try:
            return SpectrumModel.explicit(vals)
        except ValueError as exc:
            raise ConfigError(str(exc), f"{loc}.values") from exc
    raise ConfigError("spectrum kind must be 'power-law' or 'explicit'", f"{loc}.kind")


@dataclass(frozen=True)
class ScanOptions:
    lambda_min: float
    lambda_max: float
    points: int
    window_factor: float = 10.0
    baseline_modes: int = 8
    grid: str = "log"
    fit_decades: float = None


def _parse_scan(obj, loc):
    _require_object(obj, loc)
    _reject_extras(obj, ("lambda_min", "lambda_max", "points", "window_factor",
                         "baseline_modes", "grid", "fit_decades"), loc)
    for key in ("lambda_min", "lambda_max", "points"):
        if key not in obj:
            raise ConfigError(f"missing required field {key!r}", loc)
    opts = {
        "lambda_min": _number(obj["lambda_min"], f"{loc}.lambda_min"),
        "lambda_max": _number(obj["lambda_max"], f"{loc}.lambda_max"),
        "points": _integer(obj["points"], f"{loc}.points"),
    }
    if "window_factor" in obj:
        opts["window_factor"] = _number(obj["window_factor"], f"{loc}.window_factor")
    if "baseline_modes" in obj:
        opts["baseline_modes"] = _integer(obj["baseline_modes"], f"{loc}.baseline_modes")
    if "grid" in obj:
        grid = obj["grid"]
        if grid not in ("log", "resonance"):
            raise ConfigError("grid must be 'log' or 'resonance'", f"{loc}.grid")
        opts["grid"] = grid
    if "fit_decades" in obj:
        fd = _number(obj["fit_decades"], f"{loc}.fit_decades")
        if fd <= 0:
            raise ConfigError("fit_decades must be positive", f"{loc}.fit_decades")
        opts["fit_decades"] = fd
    if opts["points"] < 2:
        raise ConfigError("points must be at least 2", f"{loc}.points")
    if not (0 < opts["lambda_min"] < opts["lambda_max"]):
        raise ConfigError("need 0 < lambda_min < lambda_max", loc)
    if opts.get("window_factor", 10.0) < 1:
        raise ConfigError("window_factor must be >= 1", f"{loc}.window_factor")
    if opts.get("baseline_modes", 8) < 1:
        raise ConfigError("baseline_modes must be >= 1", f"{loc}.baseline_modes")
    return ScanOptions(**opts)


@dataclass(frozen=True)
class WitnessOptions:
    construction: str
    modes: tuple


def _parse_witness(obj, loc):
    _require_object(obj, loc)
    _reject_extras(obj, ("construction", "modes", "first", "last"), loc)
    construction = obj.get("construction")
    if construction not in ("nonanalytic", "polyopt"):
        raise ConfigError("construction must be 'nonanalytic' or 'polyopt'",
                          f"{loc}.construction")
    if "modes" in obj:
        if "first" in obj or "last" in obj:
            raise ConfigError("give either 'modes' or 'first'/'last', not both", loc)
        raw = obj["modes"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError("'modes' must be a non-empty list", f"{loc}.modes")
        modes = tuple(_integer(v, f"{loc}.modes[{i}]") for i, v in enumerate(raw))
    else:
        if "first" not in obj or "last" not in obj:
            raise ConfigError("need 'modes' or both 'first' and 'last'", loc)
        first = _integer(obj["first"], f"{loc}.first")
        last = _integer(obj["last"], f"{loc}.last")
        if first < 1 or last < first:
            raise ConfigError("need 1 <= first <= last", loc)
        modes = tuple(range(first, last + 1))
    for i, n in enumerate(modes):
        if n < 1:
            raise ConfigError(f"mode index must be >= 1, got {n}", f"{loc}.modes[{i}]")
    return WitnessOptions(construction=construction, modes=modes)


@dataclass(frozen=True)
class SimulateOptions:
    times: tuple
    data: tuple = None         # tuple of (mode, u, v, w, z) complex entries
    profile_count: int = None
    profile_scale: float = 1.0
    sync: bool = False
    mode_norms: bool = False
    fit: str = None


def _parse_times(obj, loc):
    _require_object(obj, loc)
    if "values" in obj:
        _reject_extras(obj, ("values",), loc)
        raw = obj["values"]
        if not isinstance(raw, list) or len(raw) < 1:
            raise ConfigError("'values' must be a non-empty list", f"{loc}.values")
        return tuple(_number(v, f"{loc}.values[{i}]") for i, v in enumerate(raw))
    _reject_extras(obj, ("start", "stop", "count"), loc)
    for key in ("start", "stop", "count"):
        if key not in obj:
            raise ConfigError(f"missing required field {key!r}", loc)
    start = _number(obj["start"], f"{loc}.start")
    stop = _number(obj["stop"], f"{loc}.stop")
    count = _integer(obj["count"], f"{loc}.count")
    if start != 0.0:
        raise ConfigError("time grids must start at 0", f"{loc}.start")
    if stop <= start or count < 2:
        raise ConfigError("need stop > 0 and count >= 2", loc)
    return tuple(start + (stop - start) * k / (count - 1) for k in range(count))


def _parse_simulate(obj, loc):
    _require_object(obj, loc)
    _reject_extras(obj, ("times", "data", "profile", "sync", "mode_norms", "fit"), loc)
    if "times" not in obj:
        raise ConfigError("missing required field 'times'", loc)
    times = _parse_times(obj["times"], f"{loc}.times")
    opts = {"times": times}
    has_data = "data" in obj
    has_profile = "profile" in obj
    if has_data == has_profile:
        raise ConfigError("give exactly one of 'data' or 'profile'", loc)
    if has_data:
        raw = obj["data"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError("'data' must be a non-empty list", f"{loc}.data")
        entries = []
        for i, item in enumerate(raw):
            iloc = f"{loc}.data[{i}]"
            _require_object(item, iloc)
            _reject_extras(item, ("mode", "u", "v", "w", "z"), iloc)
            if "mode" not in item:
                raise ConfigError("missing required field 'mode'", iloc)
            mode = _integer(item["mode"], f"{iloc}.mode")
            coeffs = tuple(_complex(item.get(key, 0.0), f"{iloc}.{key}")
                           for key in ("u", "v", "w", "z"))
            entries.append((mode,) + coeffs)
        opts["data"] = tuple(entries)
    else:
        ploc = f"{loc}.profile"
        prof = _require_object(obj["profile"], ploc)
        _reject_extras(prof, ("kind", "count", "scale"), ploc)
        if prof.get("kind") != "smooth":
            raise ConfigError("profile kind must be 'smooth'", f"{ploc}.kind")
        if "count" not in prof:
            raise ConfigError("missing required field 'count'", ploc)
        opts["profile_count"] = _integer(prof["count"], f"{ploc}.count")
        if opts["profile_count"] < 1:
            raise ConfigError("count must be >= 1", f"{ploc}.count")
        if "scale" in prof:
            opts["profile_scale"] = _number(prof["scale"], f"{ploc}.scale")
    if "sync" in obj:
        opts["sync"] = _boolean(obj["sync"], f"{loc}.sync")
    if "mode_norms" in obj:
        opts["mode_norms"] = _boolean(obj["mode_norms"], f"{loc}.mode_norms")
    if "fit" in obj:
        fit = obj["fit"]
        if fit not in ("exponential", "polynomial"):
            raise ConfigError("fit must be 'exponential' or 'polynomial'", f"{loc}.fit")
        opts["fit"] = fit
    return SimulateOptions(**opts)


@dataclass(frozen=True)
class AbscissaOptions:
    n_max: int


def _parse_abscissa(obj, loc):
    _require_object(obj, loc)
    _reject_extras(obj, ("n_max",), loc)
    if "n_max" not in obj:
        raise ConfigError("missing required field 'n_max'", loc)
    n_max = _integer(obj["n_max"], f"{loc}.n_max")
    if n_max < 1:
        raise ConfigError("n_max must be >= 1", f"{loc}.n_max")
    return AbscissaOptions(n_max=n_max)


@dataclass(frozen=True)
class JobConfig:
    params: SystemParams
    spectrum: SpectrumModel = None
    command: str = None
    seed: int = None
    scan: ScanOptions = None
    witness: WitnessOptions = None
    simulate: SimulateOptions = None
    abscissa: AbscissaOptions = None
    certify: WitnessOptions = None
    echo: dict = field(default_factory=dict)

    def initial_data(self):
        """Materialize the configured simulate initial data."""
        from .simulate import InitialData, smooth_profile

        opts = self.simulate
        if opts.data is not None:
            modes = []
            for mode, u, v, w, z in opts.data:
                om = mode_at(self.spectrum, mode)
                modes.append((mode, ModalState(omega=om, u=u, v=v, w=w, z=z)))
            return InitialData(modes=tuple(modes))
        return smooth_profile(self.spectrum, opts.profile_count, opts.profile_scale)


_SECTION_PARSERS = {
    "scan": _parse_scan,
    "witness": _parse_witness,
    "simulate": _parse_simulate,
    "abscissa": _parse_abscissa,
    "certify": _parse_witness,
}

_NEEDS_SPECTRUM = {"scan", "witness", "simulate", "abscissa", "certify"}


def parse_job(doc, command=None):
    """Validate a parsed JSON document into a JobConfig.

    ``command`` is the CLI subcommand about to run; the matching options
    section must be present, and a 'command' field in the document must
    agree with it.
    """
    _require_object(doc, "$")
    allowed = ("command", "seed", "params", "spectrum") + tuple(_SECTION_PARSERS)
    _reject_extras(doc, allowed, "$")
    declared = doc.get("command")
    if declared is not None:
        if declared not in COMMANDS:
            raise ConfigError(f"unknown command {declared!r}", "$.command")
        if command is not None and declared != command:
            raise ConfigError(
                f"config declares command {declared!r} but {command!r} was invoked",
                "$.command")
    if "params" not in doc:
        raise ConfigError("missing required field 'params'", "$")
    params = _parse_params(doc["params"], "$.params")
    spectrum = None
    if "spectrum" in doc:
        spectrum = _parse_spectrum(doc["spectrum"], "$.spectrum")
    seed = None
    if "seed" in doc:
        seed = _integer(doc["seed"], "$.seed")
    sections = {}
    for name, parser in _SECTION_PARSERS.items():
        if name in doc:
            sections[name] = parser(doc[name], f"$.{name}")
    effective = command or declared
    if effective is not None and effective != "classify":
        if effective not in sections:
            raise ConfigError(f"missing required section {effective!r}", "$")
        if spectrum is None:
            raise ConfigError(
                f"command {effective!r} requires a 'spectrum' section", "$")
    return JobConfig(params=params, spectrum=spectrum, command=declared,
                     seed=seed, echo=doc, **sections)


def load_job(path, command=None):
    """Parse and validate a JSON job file; diagnostics carry locations."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_job(doc, command=command)
