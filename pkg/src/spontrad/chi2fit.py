"""Weighted least-squares fit of the alpha/E model to a counting spectrum.

The chi-square uses Gaussian bin errors sigma_i^2 = y_i (Poisson-variance
approximation, the reason for the minimum-count selection upstream).  With a
single linear parameter the minimum is closed-form:

    alpha_hat = [sum 1/E_i] / [sum 1/(y_i E_i^2)]
    sigma_alpha = [sum 1/(y_i E_i^2)]^(-1/2)

and the one-sided upper bound at confidence q is alpha_hat + z(q)*sigma_alpha.
"""

import math
from dataclasses import dataclass

from .backend import kernels
from .errors import InsufficientDataError, ValidationError
from .spectrum import BinnedSpectrum


@dataclass(frozen=True)
class FitResult:
    alpha_hat: float
    sigma_alpha: float
    chi2: float
    n_bins: int
    n_params: int = 1

    def __post_init__(self):
        if not self.sigma_alpha > 0:
            raise ValidationError(f"sigma_alpha must be positive, got {self.sigma_alpha}")
        if not self.n_bins > self.n_params:
            raise ValidationError(
                f"need more bins ({self.n_bins}) than parameters ({self.n_params})")

    @property
    def ndf(self) -> int:
        """Degrees of freedom of the minimum: bins minus free parameters."""
        return self.n_bins - self.n_params

    @property
    def reduced_chi2(self) -> float:
        return self.chi2 / self.ndf


def fit_alpha(spectrum: BinnedSpectrum) -> FitResult:
    """Closed-form chi-square minimum of y_i ~ alpha/E_i with sigma_i^2 = y_i.

    Expects a spectrum that already passed the minimum-count selection; a
    zero-count bin (infinite weight) is a precondition breach.
    """
    bins = spectrum.bins
    if len(bins) < 2:
        raise InsufficientDataError(
            f"chi-square fit needs at least 2 bins, got {len(bins)}")
    for b in bins:
        if b.counts == 0:
            raise ValidationError(
                f"zero-count bin at {b.center} keV; apply a min-counts selection first")

    sum_inv_e = math.fsum(1.0 / b.center for b in bins)
    sum_w = math.fsum(1.0 / (b.counts * b.center * b.center) for b in bins)
    alpha_hat = sum_inv_e / sum_w
    sigma_alpha = sum_w ** -0.5
    chi2 = math.fsum((b.counts - alpha_hat / b.center) ** 2 / b.counts for b in bins)
    return FitResult(alpha_hat=alpha_hat, sigma_alpha=sigma_alpha, chi2=chi2,
                     n_bins=len(bins))


def normal_quantile(p: float) -> float:
    """One-sided standard normal quantile z(p), 0 < p < 1."""
    try:
        return kernels.normal_quantile(p)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def alpha_upper_limit(fit: FitResult, confidence: float) -> float:
    """One-sided Gaussian upper bound on alpha at the given confidence."""
    if not 0.0 < confidence < 1.0:
        raise ValidationError(f"confidence must be in (0, 1), got {confidence}")
    return fit.alpha_hat + normal_quantile(confidence) * fit.sigma_alpha
