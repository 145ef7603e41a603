"""Command-line interface: spectra, resonances, sweeps, oracle runs, fits.

Every invocation resolves one parameter set (built-in reference values or a
TOML file, plus --set overrides), runs one subcommand, and writes its
artifacts plus a manifest.json into the output directory.  All writes are
atomic (temp file + rename) and deterministic: rerunning a command whose
manifest matches a previous run reproduces the artifact files byte for byte.

Exit codes: 0 success, 2 usage or configuration error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .analysis import (detuning_sweep, fit_fpu, fit_lorentzian, fpu_sweep,
                       load_spectrum_csv)
from .errors import (ConfigError, DegenerateLinewidths, OutOfRange,
                     PolarisimError, UnsupportedElectricalAnharmonicity)
from .modes import (build_h, build_h_damped, eigenvalues,
                    match_poles_eigenvalues, poles)
from .params import (DEFAULT_GRID, SpectralGrid, SystemParams,
                     apply_overrides, load_config, paper_defaults)
from .response import (_atomic_write_text, absorption_spectrum,
                       pump_probe_spectrum, reflection_spectrum,
                       transmission_spectrum, write_spectrum_csv)
from .timedomain import DEFAULT_ORACLE_GRID, oracle_check

_CONFIG_ERRORS = (ConfigError, OutOfRange, UnsupportedElectricalAnharmonicity,
                  DegenerateLinewidths, OSError)


def _parse_grid(text: str) -> SpectralGrid:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("--grid expects MIN:MAX:STEP, got %r" % text)
    try:
        lo, hi, step = (float(v) for v in parts)
    except ValueError:
        raise ConfigError("--grid values must be numbers, got %r" % text)
    try:
        return SpectralGrid(lo, hi, step)
    except OutOfRange as exc:
        raise ConfigError("invalid --grid %r: %s" % (text, exc))


def _parse_overrides(pairs) -> dict:
    overrides = {}
    for pair in pairs or ():
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ConfigError("--set expects key=value, got %r" % pair)
        try:
            overrides[key] = float(value)
        except ValueError:
            raise ConfigError("--set %s: %r is not a number" % (key, value))
    return overrides


def _resolve_params(args) -> SystemParams:
    if args.paper_defaults and args.config is not None:
        raise ConfigError("give --paper-defaults or --config, not both")
    p = paper_defaults() if args.config is None else load_config(args.config)
    return apply_overrides(p, _parse_overrides(args.set))


def _write_json(path, obj):
    _atomic_write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _grid_dict(grid: SpectralGrid) -> dict:
    return {"omega_min_cm1": grid.omega_min, "omega_max_cm1": grid.omega_max,
            "step_cm1": grid.step}


def _write_manifest(outdir, command, p: SystemParams, grid, outputs,
                    extras=None):
    manifest = {
        "tool": "polarisim",
        "version": __version__,
        "command": command,
        "params": {
            "omega_0_cm1": p.omega_0,
            "omega_c_cm1": p.omega_c,
            "kappa_cm1": p.kappa,
            "gamma_m_cm1": p.gamma_m,
            "delta_cm1": p.delta,
            "g1_coll_cm1": p.g1_coll,
            "g3_ratio": p.g3_ratio,
            "f_pu": p.f_pu,
        },
        "grid": None if grid is None else _grid_dict(grid),
        "outputs": sorted(outputs),
    }
    if extras:
        manifest.update(extras)
    _write_json(outdir / "manifest.json", manifest)


# ---------------------------------------------------------------------------
# subcommands (each returns the list of artifact filenames it wrote)

def _cmd_spectrum(args, p, outdir):
    grid = args.grid or DEFAULT_GRID
    written = []
    for name, spectrum in (
            ("transmission.csv", transmission_spectrum(p, grid)),
            ("reflection.csv", reflection_spectrum(p, grid)),
            ("absorption.csv", absorption_spectrum(p, grid))):
        write_spectrum_csv(spectrum, outdir / name)
        written.append(name)
    if p.f_pu > 0:
        write_spectrum_csv(pump_probe_spectrum(p, grid),
                           outdir / "pump_probe.csv")
        written.append("pump_probe.csv")
    return written, grid, None


def _cmd_modes(args, p, outdir):
    matrix = build_h_damped(p) if args.damped else build_h(p)
    report = {
        "variant": matrix.variant,
        "poles": poles(p).to_json_dict(),
        "eigenvalues": eigenvalues(matrix).to_json_dict(),
        "match_distance_cm1": match_poles_eigenvalues(
            p, damped=args.damped),
    }
    _write_json(outdir / "resonances.json", report)
    return ["resonances.json"], None, {"damped": bool(args.damped)}


def _cmd_sweep(args, p, outdir):
    if args.steps < 1:
        raise ConfigError("--steps must be at least 1")
    grid = args.grid or DEFAULT_GRID
    values = np.linspace(args.start, args.stop, args.steps)
    runner = detuning_sweep if args.param == "omega_c_cm1" else fpu_sweep
    result = runner(p, values, grid=grid, include_spectra=args.spectra)
    _write_json(outdir / "sweep.json", result.to_json_dict())
    extras = {"sweep": {"param": args.param, "from": args.start,
                        "to": args.stop, "steps": args.steps}}
    return ["sweep.json"], grid, extras


def _cmd_oracle(args, p, outdir):
    grid = args.grid or DEFAULT_ORACLE_GRID
    error = oracle_check(p, grid, t_end=args.t_end, dt=args.dt)
    report = {
        "max_relative_error": error,
        "grid": _grid_dict(grid),
        "t_end_internal": args.t_end,
        "dt_internal": args.dt,
        "pulse": {"center_cm1": p.omega_0, "sigma_t_internal": 0.02,
                  "t0_internal": 0.2},
    }
    _write_json(outdir / "oracle_report.json", report)
    return ["oracle_report.json"], grid, {"t_end": args.t_end, "dt": args.dt}


def _cmd_fit(args, p, outdir):
    data = load_spectrum_csv(args.data)
    if args.lorentzian:
        fit = fit_lorentzian(data)
        report = {
            "mode": "lorentzian",
            "baseline": fit.baseline,
            "amplitude": fit.amplitude,
            "center_cm1": fit.center,
            "fwhm_cm1": fit.fwhm,
            "residual_rms": fit.residual_rms,
            "n_iterations": fit.n_iterations,
        }
    else:
        fit = fit_fpu(p, data, f_max=args.f_max)
        report = {
            "mode": "f_pu",
            "f_pu": fit.f_pu,
            "residual_rms": fit.residual_rms,
            "boundary": fit.boundary,
        }
    _write_json(outdir / "fit.json", report)
    return ["fit.json"], None, {"data": str(args.data),
                                "fit_mode": report["mode"]}


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polarisim",
        description="Linear and pump-probe spectra of vibrational polaritons.")
    parser.add_argument("--version", action="version",
                        version="polarisim " + __version__)

    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group("parameter source")
    source.add_argument("--paper-defaults", action="store_true",
                        help="use the built-in reference parameter set "
                             "(the default when --config is absent)")
    source.add_argument("--config", metavar="PATH", default=None,
                        help="flat TOML file with the parameter keys")
    common.add_argument("--set", metavar="KEY=VALUE", action="append",
                        help="override one parameter after loading "
                             "(repeatable)")
    common.add_argument("--grid", metavar="MIN:MAX:STEP", type=_parse_grid,
                        default=None,
                        help="frequency grid in cm^-1 (default 1900:2070:0.01;"
                             " the oracle subcommand defaults to its "
                             "coarser 1930:2040:0.2 analysis band)")
    common.add_argument("-o", "--outdir", metavar="DIR", default=".",
                        help="output directory (created if missing)")

    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common],
                        help="transmission/reflection/absorption CSVs "
                             "(plus pump_probe.csv when f_pu > 0)")
    sp.set_defaults(func=_cmd_spectrum)

    md = sub.add_parser("modes", parents=[common],
                        help="pole and eigenvalue resonances with their "
                             "match distance")
    md.add_argument("--damped", action="store_true",
                    help="use the damping-corrected mode matrix "
                         "(requires g3_ratio = 0)")
    md.set_defaults(func=_cmd_modes)

    sw = sub.add_parser("sweep", parents=[common],
                        help="resonances and absorption versus a swept "
                             "parameter")
    sw.add_argument("--param", required=True,
                    choices=("omega_c_cm1", "f_pu"))
    sw.add_argument("--from", dest="start", type=float, required=True,
                    metavar="A")
    sw.add_argument("--to", dest="stop", type=float, required=True,
                    metavar="B")
    sw.add_argument("--steps", type=int, required=True, metavar="N")
    sw.add_argument("--spectra", action="store_true",
                    help="embed the pumped transmission spectrum per point")
    sw.set_defaults(func=_cmd_sweep)

    orc = sub.add_parser("oracle", parents=[common],
                         help="time-domain check of the closed-form "
                              "transmission")
    orc.add_argument("--t-end", type=float, default=12.0,
                     help="integration window, internal time units")
    orc.add_argument("--dt", type=float, default=5e-4,
                     help="integrator step, internal time units (max 1e-3)")
    orc.set_defaults(func=_cmd_oracle)

    ft = sub.add_parser("fit", parents=[common],
                        help="fit measured data (Lorentzian line or pumped "
                             "fraction)")
    ft.add_argument("--data", metavar="CSV", required=True,
                    help="two-column CSV: wavenumber_cm1,value")
    mode = ft.add_mutually_exclusive_group(required=True)
    mode.add_argument("--lorentzian", action="store_true",
                      help="fit a four-parameter Lorentzian line")
    mode.add_argument("--f-pu", dest="fpu_mode", action="store_true",
                      help="estimate the pumped fraction from "
                           "differential transmission")
    ft.add_argument("--f-max", type=float, default=0.5,
                    help="upper search bound for --f-pu (default 0.5)")
    ft.set_defaults(func=_cmd_fit)

    return parser


def main(argv=None) -> int:
    from pathlib import Path

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    except _CONFIG_ERRORS as exc:  # e.g. a malformed --grid value
        print("polarisim: %s: %s" % (type(exc).__name__, exc),
              file=sys.stderr)
        return 2
    try:
        p = _resolve_params(args)
        outdir = Path(args.outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        outputs, grid, extras = args.func(args, p, outdir)
        _write_manifest(outdir, args.command, p, grid, outputs, extras)
    except _CONFIG_ERRORS as exc:
        print("polarisim: %s: %s" % (type(exc).__name__, exc),
              file=sys.stderr)
        return 2
    except (PolarisimError, ValueError, ArithmeticError) as exc:
        print("polarisim: %s: %s" % (type(exc).__name__, exc),
              file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
