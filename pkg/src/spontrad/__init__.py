"""Upper limits on the spontaneous-collapse rate from X-ray counting spectra.

Two independent routes bound the 1/E emission amplitude alpha and convert it
to a collapse rate at a given correlation length: a Gaussian chi-square fit
with a one-sided quantile, and a Poisson-count posterior with a gamma-form
credible bound.  A scan transports either limit across correlation lengths
into exclusion curves.  See the README for the CLI and file formats.
"""

from .backend import BACKEND, backend_name
from .bayes import (CredibleLimit, PosteriorSpec, gamma_quantile, harmonic_sum,
                    lambda_credible_limit, posterior_spec, reg_inc_gamma)
from .chi2fit import FitResult, alpha_upper_limit, fit_alpha, normal_quantile
from .config import load_config, parse_config_text
from .constants import (CODATA2018, CouplingMode, ExposureConfig,
                        HISTORICAL_LAMBDA_LIMITS, IGEX_EXPOSURE,
                        PhysicalConstants, coupling_mass_energy,
                        dimensionless_coupling, exposure_factor)
from .errors import (InsufficientDataError, NumericalError, SelectionEmptyError,
                     SpectrumFormatError, SpontradError, ValidationError)
from .model import (CslParams, alpha_from_lambda, emission_rate_density,
                    expected_counts, lambda_from_alpha)
from .scan import (ExclusionCurve, ReferencePoint, builtin_reference_points,
                   load_curves, load_overlay_boundary, log_grid, save_curves,
                   scan)
from .spectrum import (BinnedSpectrum, EnergyBin, RangeSelection, load_spectrum,
                       save_spectrum, select, total_counts)
from .svg import render_exclusion_svg, save_exclusion_svg
from .synth import CoverageReport, SynthConfig, run_coverage, sample_spectrum

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinnedSpectrum",
    "CODATA2018",
    "CouplingMode",
    "CoverageReport",
    "CredibleLimit",
    "CslParams",
    "EnergyBin",
    "ExclusionCurve",
    "ExposureConfig",
    "FitResult",
    "HISTORICAL_LAMBDA_LIMITS",
    "IGEX_EXPOSURE",
    "InsufficientDataError",
    "NumericalError",
    "PhysicalConstants",
    "PosteriorSpec",
    "RangeSelection",
    "ReferencePoint",
    "SelectionEmptyError",
    "SpectrumFormatError",
    "SpontradError",
    "SynthConfig",
    "ValidationError",
    "alpha_from_lambda",
    "alpha_upper_limit",
    "backend_name",
    "builtin_reference_points",
    "coupling_mass_energy",
    "dimensionless_coupling",
    "emission_rate_density",
    "expected_counts",
    "exposure_factor",
    "fit_alpha",
    "gamma_quantile",
    "harmonic_sum",
    "lambda_credible_limit",
    "lambda_from_alpha",
    "load_config",
    "load_curves",
    "load_overlay_boundary",
    "load_spectrum",
    "log_grid",
    "normal_quantile",
    "parse_config_text",
    "posterior_spec",
    "reg_inc_gamma",
    "render_exclusion_svg",
    "run_coverage",
    "sample_spectrum",
    "save_curves",
    "save_exclusion_svg",
    "save_spectrum",
    "scan",
    "select",
    "total_counts",
]
