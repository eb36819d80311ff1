"""Low-count Poisson upper limit on the collapse rate.

The total count y over the analysis window is Poisson with mean
Lambda(lam) = conversion * harmonic_sum * lam + 1, where conversion is the
counts-keV amplitude per unit collapse rate (exposure factor times the
dimensionless coupling) and harmonic_sum is sum(width_i / E_i).  A uniform
prior in lam makes the posterior over Lambda a gamma density of shape y + 1,
truncated to Lambda >= 1 (lam >= 0) and renormalized; inverting its CDF at
the requested credibility and mapping back through the linear relation gives
the upper limit.
"""

import math
import operator
from dataclasses import dataclass

from .backend import kernels
from .constants import (CODATA2018, ExposureConfig, IGEX_EXPOSURE,
                        PhysicalConstants, coupling_mass_energy,
                        dimensionless_coupling, exposure_factor)
from .errors import NumericalError, ValidationError


def reg_inc_gamma(shape: float, x: float) -> float:
    """Regularized lower incomplete gamma P(shape, x).

    Domain breaches raise ValidationError; a kernel error on valid inputs
    means the series/continued fraction stalled and raises NumericalError.
    """
    if not (shape > 0 and math.isfinite(shape)):
        raise ValidationError(f"shape must be positive and finite, got {shape}")
    if not (x >= 0 and math.isfinite(x)):
        raise ValidationError(f"x must be >= 0 and finite, got {x}")
    try:
        return kernels.reg_inc_gamma(shape, x)
    except ValueError as exc:
        raise NumericalError(str(exc)) from None


def gamma_quantile(shape: float, p: float) -> float:
    """x such that P(shape, x) = p, for 0 <= p < 1.  Errors as reg_inc_gamma."""
    if not (shape > 0 and math.isfinite(shape)):
        raise ValidationError(f"shape must be positive and finite, got {shape}")
    if not 0.0 <= p < 1.0:
        raise ValidationError(f"p must be in [0, 1), got {p}")
    try:
        return kernels.gamma_quantile(shape, p)
    except ValueError as exc:
        raise NumericalError(str(exc)) from None


def harmonic_sum(bins) -> float:
    """sum of (width_i / 1 keV) / E_i over the bins; 0 for an empty list."""
    return math.fsum((b.width / 1.0) / b.center for b in bins)


@dataclass(frozen=True)
class PosteriorSpec:
    """Inputs of the gamma-form posterior over the expected total count.

    offset is the +1 shift in Lambda(lam); it is part of the posterior
    construction, not of the physical expectation, and is pinned to 1.
    """

    y_total: int
    harmonic_sum: float
    conversion: float
    offset: float = 1.0

    def __post_init__(self):
        try:
            y = operator.index(self.y_total)
        except TypeError:
            raise ValidationError(f"y_total must be an integer, got {self.y_total!r}") from None
        object.__setattr__(self, "y_total", y)
        if y < 0:
            raise ValidationError(f"y_total must be >= 0, got {y}")
        if not (self.harmonic_sum > 0 and math.isfinite(self.harmonic_sum)):
            raise ValidationError(
                f"harmonic_sum must be positive and finite, got {self.harmonic_sum}")
        if not (self.conversion > 0 and math.isfinite(self.conversion)):
            raise ValidationError(
                f"conversion must be positive and finite, got {self.conversion}")
        if self.offset != 1.0:
            raise ValidationError(f"offset is pinned to 1, got {self.offset}")


@dataclass(frozen=True)
class CredibleLimit:
    """Upper limit on the collapse rate and the count-space quantile behind it.

    lambda_cap_95 is the quantile of the expected total count (the capital
    Lambda variable) at the requested credibility, whatever that level is;
    the name records the 95% default use.
    """

    lambda_upper: float
    confidence: float
    lambda_cap_95: float

    def __post_init__(self):
        if not self.lambda_upper >= 0:
            raise ValidationError(f"lambda_upper must be >= 0, got {self.lambda_upper}")
        if not 0.0 < self.confidence < 1.0:
            raise ValidationError(f"confidence must be in (0, 1), got {self.confidence}")


def posterior_spec(y_total: int, bins, r_c: float, coupling,
                   exposure: ExposureConfig = IGEX_EXPOSURE,
                   constants: PhysicalConstants = CODATA2018) -> PosteriorSpec:
    """Assemble the posterior inputs for a measured total count and bin grid."""
    conversion = (exposure_factor(exposure)
                  * dimensionless_coupling(coupling_mass_energy(coupling, constants),
                                           r_c, constants))
    return PosteriorSpec(y_total=y_total, harmonic_sum=harmonic_sum(bins),
                         conversion=conversion)


def lambda_credible_limit(spec: PosteriorSpec, confidence: float) -> CredibleLimit:
    """Credible upper limit on the collapse rate from the truncated posterior.

    Solves [P(y+1, L) - P(y+1, offset)] / [1 - P(y+1, offset)] = confidence
    for L and returns (L - offset) / (conversion * harmonic_sum).  The
    truncation to L >= offset matters only for very small y (for y ~ 100,
    P(y+1, 1) underflows to 0 and the renormalization is a no-op).
    """
    if not 0.0 < confidence < 1.0:
        raise ValidationError(f"confidence must be in (0, 1), got {confidence}")
    shape = spec.y_total + 1.0
    base = reg_inc_gamma(shape, spec.offset)
    if base >= 1.0:
        raise NumericalError(
            f"posterior mass entirely below the offset (y={spec.y_total})")
    target = base + confidence * (1.0 - base)
    cap = gamma_quantile(shape, target)
    lam = (cap - spec.offset) / (spec.conversion * spec.harmonic_sum)
    return CredibleLimit(lambda_upper=max(lam, 0.0), confidence=confidence,
                         lambda_cap_95=cap)
