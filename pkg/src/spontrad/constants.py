"""Physical constants, coupling selection and detector exposure factors.

All energies are in MeV (masses as rest energies), lengths in meters unless a
name says otherwise.  The spontaneous-emission spectral density per electron
is ``lambda * dimensionless_coupling(m, r_c) / E`` with the photon energy E in
keV, so the coupling constant absorbs every unit convention in one place.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ValidationError

FM_PER_M = 1e15


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values; override through the CLI config file if needed."""

    fine_structure_constant: float = 7.2973525693e-3
    hbar_c_mev_fm: float = 197.3269804
    proton_mass_mev: float = 938.27208816
    electron_mass_mev: float = 0.51099895000
    avogadro: float = 6.02214076e23

    def __post_init__(self):
        if not 7.297e-3 < self.fine_structure_constant < 7.298e-3:
            raise ValidationError(
                f"fine_structure_constant {self.fine_structure_constant} outside "
                "the physical window (7.297e-3, 7.298e-3)")
        ratio = self.proton_mass_mev / self.electron_mass_mev
        if not 1836.0 < ratio < 1836.3:
            raise ValidationError(
                f"proton/electron mass ratio {ratio:.4f} outside (1836.0, 1836.3)")
        for name in ("hbar_c_mev_fm", "avogadro"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{name} must be positive")


CODATA2018 = PhysicalConstants()


class CouplingMode(Enum):
    """Which mass enters the emission rate: nucleon (mass-proportional noise
    coupling) or electron (non-mass-proportional)."""

    MASS_PROPORTIONAL = "mass-prop"
    NON_MASS_PROPORTIONAL = "non-mass-prop"

    @classmethod
    def from_label(cls, label: str) -> "CouplingMode":
        for mode in cls:
            if mode.value == label:
                return mode
        raise ValidationError(f"unknown coupling {label!r}; "
                              f"expected one of {[m.value for m in cls]}")


def coupling_mass_energy(coupling: CouplingMode,
                         constants: PhysicalConstants = CODATA2018) -> float:
    """Rest energy (MeV) of the particle selected by the coupling mode."""
    if coupling is CouplingMode.MASS_PROPORTIONAL:
        return constants.proton_mass_mev
    if coupling is CouplingMode.NON_MASS_PROPORTIONAL:
        return constants.electron_mass_mev
    raise ValidationError(f"unknown coupling mode {coupling!r}")


def dimensionless_coupling(mass_energy_mev: float, r_c_m: float,
                           constants: PhysicalConstants = CODATA2018) -> float:
    """Numeric value of e^2 / (4 pi^2 r_C^2 m^2) with e^2 = 4 pi alpha_fs.

    Evaluates alpha_fs * (hbar c / (r_C m c^2))^2 / pi, dimensionless, so the
    per-electron emission density is lambda * D / E  [1/(s keV)] for lambda in
    1/s and E in keV.  Scales as r_C^-2 and m^-2.
    """
    if not mass_energy_mev > 0:
        raise ValidationError(f"mass_energy must be positive, got {mass_energy_mev}")
    if not r_c_m > 0:
        raise ValidationError(f"r_c must be positive, got {r_c_m}")
    ratio = constants.hbar_c_mev_fm / (r_c_m * FM_PER_M * mass_energy_mev)
    return constants.fine_structure_constant * ratio * ratio / math.pi


@dataclass(frozen=True)
class ExposureConfig:
    """Factors whose product converts a per-electron rate into expected counts.

    Defaults are the published IGEX 80 kg day Ge exposure with the 30 outermost
    (quasi-free) electrons per atom emitting.
    """

    atoms_per_kg: float = 8.29e24
    exposure_kg_day: float = 80.0
    seconds_per_day: float = 8.64e4
    electrons_per_atom: float = 30.0

    def __post_init__(self):
        for name in ("atoms_per_kg", "exposure_kg_day", "seconds_per_day",
                     "electrons_per_atom"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0 and math.isfinite(value)):
                raise ValidationError(f"{name} must be positive and finite, got {value}")


IGEX_EXPOSURE = ExposureConfig()


def exposure_factor(config: ExposureConfig) -> float:
    """Electron-seconds of exposure: plain product of the four factors."""
    return (config.atoms_per_kg * config.exposure_kg_day
            * config.seconds_per_day * config.electrons_per_atom)


# Earlier published collapse-rate bounds at r_C = 1e-7 m, from Ge slab emission
# data (Fu's four-valence-electron analysis of the preliminary TWIN set, and
# the later re-analysis of the corrected data).  Documentation only; nothing
# here is recomputed.
HISTORICAL_LAMBDA_LIMITS = {
    "fu-twin-mass-prop": 2.20e-10,
    "fu-twin-non-mass-prop": 0.55e-16,
    "slab-reanalysis-mass-prop": 8e-10,
    "slab-reanalysis-non-mass-prop": 2e-16,
}
