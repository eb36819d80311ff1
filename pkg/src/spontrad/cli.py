"""Command-line front end: fit, limit, scan, synth, coverage.

Every command is deterministic given its flags (plus --seed where sampling
is involved) and writes either JSON (fit, limit, coverage) or CSV/SVG
artifacts (scan, synth).  Pipeline failures print a machine-readable error
object to stderr and exit with 2 (validation), 3 (I/O) or 4 (numerical
non-convergence); argparse keeps its usual usage-error behavior.
"""

import argparse
import json
import sys
from dataclasses import replace

from .bayes import harmonic_sum, lambda_credible_limit, posterior_spec
from .chi2fit import alpha_upper_limit, fit_alpha
from .config import constants_from, exposure_from, load_config
from .constants import CouplingMode, exposure_factor
from .errors import NumericalError, ValidationError
from .model import lambda_from_alpha
from .scan import (DEFAULT_GRID_MAX_M, DEFAULT_GRID_MIN_M, DEFAULT_GRID_POINTS,
                   builtin_reference_points, load_overlay_boundary, log_grid,
                   save_curves, scan)
from .spectrum import (EnergyBin, RangeSelection, format_spectrum, load_spectrum,
                       save_spectrum, select, total_counts)
from .svg import save_exclusion_svg
from .synth import SynthConfig, run_coverage, sample_spectrum

DEFAULT_E_MIN_KEV = 14.5
DEFAULT_E_MAX_KEV = 48.5
DEFAULT_MIN_COUNTS = 5
DEFAULT_R_C_M = 1e-7
DEFAULT_CONFIDENCE = 0.95


def _parse_bins(spec: str) -> list:
    """'lo:hi:width' -> unit-count bins at centers lo, lo+width, ..., hi."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValidationError(f"--bins expects lo:hi:width, got {spec!r}")
    try:
        lo, hi, width = (float(p) for p in parts)
    except ValueError:
        raise ValidationError(f"--bins values must be numbers, got {spec!r}") from None
    if not width > 0:
        raise ValidationError(f"--bins width must be positive, got {width}")
    if not lo <= hi:
        raise ValidationError(f"--bins needs lo <= hi, got {spec!r}")
    n = int((hi - lo) / width + 0.5) + 1
    centers = [lo + i * width for i in range(n)]
    centers = [c for c in centers if c <= hi + 1e-9 * width]
    return [EnergyBin(center=c, width=width, counts=0) for c in centers]


def _parse_grid(spec: str) -> list:
    """'lo:hi:n' -> n log-spaced correlation lengths from lo to hi meters."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValidationError(f"--grid expects lo:hi:n, got {spec!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError:
        raise ValidationError(f"--grid values must be numbers, got {spec!r}") from None
    return log_grid(lo, hi, n)


def _physics_inputs(args):
    """Constants and exposure: defaults <- config file <- dedicated flags."""
    values = load_config(args.config) if args.config else {}
    constants = constants_from(values)
    exposure = exposure_from(values)
    if getattr(args, "exposure_kg_day", None) is not None:
        exposure = replace(exposure, exposure_kg_day=args.exposure_kg_day)
    if getattr(args, "electrons_per_atom", None) is not None:
        exposure = replace(exposure, electrons_per_atom=args.electrons_per_atom)
    return constants, exposure


def _emit_text(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload: dict) -> None:
    _emit_text(args, json.dumps(payload, indent=2) + "\n")


def _fit_payload(args):
    spectrum = load_spectrum(args.input)
    sel = RangeSelection(e_min=args.emin, e_max=args.emax,
                         min_counts=args.min_counts
                         if args.min_counts is not None else DEFAULT_MIN_COUNTS)
    fit = fit_alpha(select(spectrum, sel))
    upper = alpha_upper_limit(fit, args.cl)
    return {
        "alpha_hat": fit.alpha_hat,
        "sigma_alpha": fit.sigma_alpha,
        "chi2": fit.chi2,
        "ndf": fit.ndf,
        "reduced_chi2": fit.reduced_chi2,
        "alpha_upper": upper,
        "confidence": args.cl,
    }


def cmd_fit(args) -> int:
    _emit_json(args, _fit_payload(args))
    return 0


def _selected_bins(args):
    """Bins entering a limit: --bins shortcut or a selected input spectrum."""
    if args.bins:
        return _parse_bins(args.bins)
    spectrum = load_spectrum(args.input)
    sel = RangeSelection(e_min=args.emin, e_max=args.emax,
                         min_counts=args.min_counts if args.min_counts is not None else 0)
    return list(select(spectrum, sel).bins)


def _limit_payload(args, coupling: CouplingMode, constants, exposure) -> dict:
    if args.method == "bayes":
        if args.alpha_upper is not None:
            raise ValidationError("--alpha-upper applies to --method chi2 only")
        if args.y_total is not None:
            if not args.bins:
                raise ValidationError("--y-total requires --bins lo:hi:width")
            y = args.y_total
            bins = _parse_bins(args.bins)
        elif args.input:
            bins = _selected_bins(args)
            y = sum(b.counts for b in bins)
        else:
            raise ValidationError("bayes limit needs --input or --y-total with --bins")
        spec = posterior_spec(y, bins, args.r_c, coupling,
                              exposure=exposure, constants=constants)
        limit = lambda_credible_limit(spec, args.cl)
        return {
            "lambda_upper_s_inv": limit.lambda_upper,
            "confidence": limit.confidence,
            "coupling": coupling.value,
            "r_c_m": args.r_c,
            "y_total": y,
            "harmonic_sum": spec.harmonic_sum,
            "method": "bayes",
        }

    if args.y_total is not None:
        raise ValidationError("--y-total applies to --method bayes only")
    if args.alpha_upper is not None:
        alpha_upper = args.alpha_upper
        if not alpha_upper >= 0:
            raise ValidationError(f"--alpha-upper must be >= 0, got {alpha_upper}")
    elif args.input:
        spectrum = load_spectrum(args.input)
        sel = RangeSelection(e_min=args.emin, e_max=args.emax,
                             min_counts=args.min_counts
                             if args.min_counts is not None else DEFAULT_MIN_COUNTS)
        fit = fit_alpha(select(spectrum, sel))
        alpha_upper = alpha_upper_limit(fit, args.cl)
    else:
        raise ValidationError("chi2 limit needs --input or --alpha-upper")
    lam = lambda_from_alpha(alpha_upper, args.r_c, coupling,
                            exposure_factor(exposure), constants)
    return {
        "lambda_upper_s_inv": lam,
        "confidence": args.cl,
        "coupling": coupling.value,
        "r_c_m": args.r_c,
        "alpha_upper": alpha_upper,
        "method": "chi2",
    }


def cmd_limit(args) -> int:
    constants, exposure = _physics_inputs(args)
    coupling = CouplingMode.from_label(args.coupling)
    _emit_json(args, _limit_payload(args, coupling, constants, exposure))
    return 0


def cmd_scan(args) -> int:
    constants, exposure = _physics_inputs(args)
    grid = _parse_grid(args.grid)
    curves = []
    for coupling in CouplingMode:
        payload = _limit_payload(args, coupling, constants, exposure)
        curves.append(scan(payload["lambda_upper_s_inv"], args.r_c, grid,
                           coupling, args.method, args.cl))
    save_curves(curves, args.out)
    if args.svg:
        overlay = load_overlay_boundary(args.overlay) if args.overlay else ()
        save_exclusion_svg(args.svg, curves,
                           references=builtin_reference_points(), overlay=overlay,
                           title="collapse-rate exclusion from X-ray emission")
    return 0


def cmd_synth(args) -> int:
    config = SynthConfig(alpha_true=args.alpha, e_min=args.emin, e_max=args.emax,
                         bin_width=args.bin_width,
                         flat_background_per_bin=args.background, seed=args.seed)
    spectrum = sample_spectrum(config)
    if args.out:
        save_spectrum(spectrum, args.out)
    else:
        sys.stdout.write(format_spectrum(spectrum))
    return 0


def cmd_coverage(args) -> int:
    config = SynthConfig(alpha_true=args.alpha, e_min=args.emin, e_max=args.emax,
                         bin_width=args.bin_width,
                         flat_background_per_bin=args.background, seed=args.seed)
    report = run_coverage(config, args.trials, args.method, args.cl)
    _emit_json(args, {
        "trials": report.trials,
        "covered": report.covered,
        "coverage_fraction": report.coverage_fraction,
        "method": report.method,
        "confidence": report.confidence,
        "seed": args.seed,
    })
    return 0


def _add_window_flags(parser, default_min_counts=None):
    parser.add_argument("--emin", type=float, default=DEFAULT_E_MIN_KEV,
                        help="lower edge of the analysis window in keV")
    parser.add_argument("--emax", type=float, default=DEFAULT_E_MAX_KEV,
                        help="upper edge of the analysis window in keV")
    parser.add_argument("--min-counts", type=int, default=default_min_counts,
                        help="drop bins below this count (chi2 default 5, bayes 0)")


def _add_physics_flags(parser):
    parser.add_argument("--config", help="key=value file overriding constants/exposure")
    parser.add_argument("--exposure-kg-day", type=float, default=None,
                        help="override the exposure mass-time product")
    parser.add_argument("--electrons-per-atom", type=float, default=None,
                        help="override the emitting electrons per atom")
    parser.add_argument("--r-c", type=float, default=DEFAULT_R_C_M,
                        help="correlation length in meters")
    parser.add_argument("--coupling", choices=[m.value for m in CouplingMode],
                        default=CouplingMode.MASS_PROPORTIONAL.value,
                        help="which mass enters the emission rate")


def _add_limit_input_flags(parser):
    parser.add_argument("--input", help="spectrum CSV (center_keV,width_keV,counts)")
    parser.add_argument("--y-total", type=int, default=None,
                        help="total observed counts (bayes shortcut, with --bins)")
    parser.add_argument("--bins", help="analysis grid lo:hi:width, inclusive centers")
    parser.add_argument("--alpha-upper", type=float, default=None,
                        help="pre-computed amplitude bound (chi2 shortcut)")
    parser.add_argument("--method", choices=["chi2", "bayes"], default="bayes",
                        help="limit construction")


def _add_synth_flags(parser):
    parser.add_argument("--alpha", type=float, required=True,
                        help="true 1/E amplitude in counts keV")
    parser.add_argument("--emin", type=float, default=15.0,
                        help="first bin center in keV")
    parser.add_argument("--emax", type=float, default=48.0,
                        help="last bin center in keV")
    parser.add_argument("--bin-width", type=float, default=1.0,
                        help="bin width in keV")
    parser.add_argument("--background", type=float, default=0.0,
                        help="flat expected background counts per bin")
    parser.add_argument("--seed", type=int, default=0, help="generator seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spontrad",
        description="Collapse-rate upper limits from binned X-ray emission spectra.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="chi-square fit of the alpha/E model")
    p.add_argument("--input", required=True, help="spectrum CSV")
    _add_window_flags(p, default_min_counts=DEFAULT_MIN_COUNTS)
    p.add_argument("--cl", type=float, default=DEFAULT_CONFIDENCE,
                   help="one-sided confidence level")
    p.add_argument("--config", help="key=value file overriding constants/exposure")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("limit", help="upper limit on the collapse rate")
    _add_limit_input_flags(p)
    _add_window_flags(p)
    p.add_argument("--cl", type=float, default=DEFAULT_CONFIDENCE,
                   help="confidence / credibility level")
    _add_physics_flags(p)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(handler=cmd_limit)

    p = sub.add_parser("scan", help="exclusion curves over a correlation-length grid")
    _add_limit_input_flags(p)
    _add_window_flags(p)
    p.add_argument("--cl", type=float, default=DEFAULT_CONFIDENCE,
                   help="confidence / credibility level")
    _add_physics_flags(p)
    p.add_argument("--grid",
                   default=f"{DEFAULT_GRID_MIN_M}:{DEFAULT_GRID_MAX_M}:{DEFAULT_GRID_POINTS}",
                   help="correlation-length grid lo:hi:n (log-spaced meters)")
    p.add_argument("--out", required=True, help="curve CSV output path")
    p.add_argument("--svg", help="also render the exclusion plot here")
    p.add_argument("--overlay", help="extra boundary CSV (r_c_m,lambda_s_inv) to draw")
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("synth", help="generate a synthetic Poisson spectrum")
    _add_synth_flags(p)
    p.add_argument("--out", help="write spectrum CSV here instead of stdout")
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("coverage", help="frequentist coverage study")
    _add_synth_flags(p)
    p.add_argument("--trials", type=int, default=1000, help="number of trials")
    p.add_argument("--method", choices=["chi2", "bayes"], default="bayes",
                   help="limit construction under test")
    p.add_argument("--cl", type=float, default=DEFAULT_CONFIDENCE,
                   help="confidence / credibility level")
    p.add_argument("--out", help="write JSON report here instead of stdout")
    p.set_defaults(handler=cmd_coverage)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValidationError as exc:
        _print_error("validation", exc)
        return 2
    except NumericalError as exc:
        _print_error("numerical", exc)
        return 4
    except OSError as exc:
        _print_error("io", exc)
        return 3


def _print_error(kind: str, exc: Exception) -> None:
    sys.stderr.write(json.dumps({"error": {"type": kind, "message": str(exc)}}) + "\n")


if __name__ == "__main__":
    sys.exit(main())
