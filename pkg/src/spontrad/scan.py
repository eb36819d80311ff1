"""Exclusion curves in the collapse-rate vs correlation-length plane.

A limit computed at one correlation length r_ref transports to any other r
through the exact power law lambda_limit(r) = lambda_ref * (r / r_ref)**2,
because the coupling amplitude scales as 1/r**2 and everything else in either
limit route is r-independent.  The sweep therefore never re-runs a fit.

The 1/E emission formula behind the reference limit is a white-noise result;
its validity degrades toward extreme correlation lengths, and the default
grid span mirrors customary plots rather than a derived applicability bound.
"""

import math
from dataclasses import dataclass

from .constants import CouplingMode
from .errors import SpectrumFormatError, ValidationError

METHODS = ("chi2", "bayes")

CURVE_CSV_HEADER = "r_c_m,lambda_limit_s_inv,coupling,method,confidence"
OVERLAY_CSV_HEADER = "r_c_m,lambda_s_inv"

DEFAULT_GRID_MIN_M = 1e-9
DEFAULT_GRID_MAX_M = 1e-3
DEFAULT_GRID_POINTS = 200


@dataclass(frozen=True)
class ReferencePoint:
    """A literature (r_c, lambda) marker; lam is the collapse rate in 1/s."""

    label: str
    lam: float
    r_c: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValidationError(f"reference lambda must be positive, got {self.lam}")
        if not self.r_c > 0:
            raise ValidationError(f"reference r_c must be positive, got {self.r_c}")


@dataclass(frozen=True)
class ExclusionCurve:
    """Upper-limit polyline: points are (r_c meters, lambda_limit 1/s).

    The region above the curve (larger lambda at fixed r_c) is excluded.
    """

    coupling: CouplingMode
    points: tuple
    method: str
    confidence: float

    def __post_init__(self):
        points = tuple((float(r), float(lam)) for r, lam in self.points)
        object.__setattr__(self, "points", points)
        if self.method not in METHODS:
            raise ValidationError(f"method must be one of {METHODS}, got {self.method!r}")
        if not 0.0 < self.confidence < 1.0:
            raise ValidationError(f"confidence must be in (0, 1), got {self.confidence}")
        if not points:
            raise ValidationError("exclusion curve needs at least one point")
        for i, (r, lam) in enumerate(points):
            if not (r > 0 and lam > 0):
                raise ValidationError(f"curve point {i} not positive: ({r}, {lam})")
            if i and not r > points[i - 1][0]:
                raise ValidationError(
                    f"curve points not ascending in r_c at index {i}: {r}")


def log_grid(lo: float, hi: float, n: int) -> list:
    """n log-spaced values from lo to hi inclusive, endpoints exact."""
    if not (lo > 0 and hi > 0):
        raise ValidationError(f"grid bounds must be positive, got [{lo}, {hi}]")
    if n < 1:
        raise ValidationError(f"grid needs at least one point, got n={n}")
    if n == 1:
        if lo != hi:
            raise ValidationError(f"single-point grid requires lo == hi, got [{lo}, {hi}]")
        return [lo]
    if not lo < hi:
        raise ValidationError(f"grid bounds must satisfy lo < hi, got [{lo}, {hi}]")
    log_lo, log_hi = math.log(lo), math.log(hi)
    grid = [math.exp(log_lo + (log_hi - log_lo) * i / (n - 1)) for i in range(1, n - 1)]
    return [lo] + grid + [hi]


def scan(lambda_ref: float, r_ref: float, grid, coupling: CouplingMode,
         method: str, confidence: float) -> ExclusionCurve:
    """Transport a reference limit across a sorted r_c grid.

    With grid == [r_ref] the output point is exactly (r_ref, lambda_ref):
    the ratio r/r_ref evaluates to 1.0 and the power law is the identity.
    """
    if not lambda_ref > 0:
        raise ValidationError(f"lambda_ref must be positive, got {lambda_ref}")
    if not r_ref > 0:
        raise ValidationError(f"r_ref must be positive, got {r_ref}")
    grid = [float(r) for r in grid]
    if not grid:
        raise ValidationError("scan grid is empty")
    for i, r in enumerate(grid):
        if not r > 0:
            raise ValidationError(f"grid point {i} not positive: {r}")
        if i and not r > grid[i - 1]:
            raise ValidationError(f"grid not strictly ascending at index {i}: {r}")
    points = tuple((r, lambda_ref * (r / r_ref) ** 2) for r in grid)
    return ExclusionCurve(coupling=coupling, points=points, method=method,
                          confidence=confidence)


def builtin_reference_points() -> list:
    """Customary model-parameter markers: one GRW point and an Adler band.

    The Adler family is a central value with two order-of-magnitude band
    endpoints, all at the same correlation length; two labels in total.
    """
    return [
        ReferencePoint(label="GRW", lam=1e-16, r_c=1e-7),
        ReferencePoint(label="Adler", lam=1e-8, r_c=1e-7),
        ReferencePoint(label="Adler", lam=1e-10, r_c=1e-7),
        ReferencePoint(label="Adler", lam=1e-6, r_c=1e-7),
    ]


def format_curves(curves) -> str:
    """Canonical CSV text for one or more curves (round-trip float reprs)."""
    rows = [CURVE_CSV_HEADER]
    for curve in curves:
        rows.extend(
            f"{r!r},{lam!r},{curve.coupling.value},{curve.method},{curve.confidence!r}"
            for r, lam in curve.points)
    return "\n".join(rows) + "\n"


def save_curves(curves, path) -> None:
    """Write curves as CSV; load_curves gives back equal curves."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_curves(curves))


def load_curves(path) -> list:
    """Read a curve CSV back into ExclusionCurve objects.

    Rows are grouped into one curve per maximal run of identical
    (coupling, method, confidence); file order is preserved.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()

    curves = []
    group_key = None
    points = []
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != CURVE_CSV_HEADER:
                raise SpectrumFormatError(
                    f"{path}:{lineno}: expected header {CURVE_CSV_HEADER!r}, got {line!r}")
            header_seen = True
            continue
        fields = line.split(",")
        if len(fields) != 5:
            raise SpectrumFormatError(f"{path}:{lineno}: expected 5 fields, got {len(fields)}")
        try:
            r = float(fields[0])
            lam = float(fields[1])
            coupling = CouplingMode.from_label(fields[2])
            method = fields[3]
            confidence = float(fields[4])
        except ValueError as exc:
            raise SpectrumFormatError(f"{path}:{lineno}: {exc}") from None
        key = (coupling, method, confidence)
        if key != group_key:
            if points:
                curves.append(ExclusionCurve(coupling=group_key[0], points=tuple(points),
                                             method=group_key[1], confidence=group_key[2]))
            group_key = key
            points = []
        points.append((r, lam))
    if not header_seen:
        raise SpectrumFormatError(f"{path}: missing header line {CURVE_CSV_HEADER!r}")
    if points:
        curves.append(ExclusionCurve(coupling=group_key[0], points=tuple(points),
                                     method=group_key[1], confidence=group_key[2]))
    return curves


def load_overlay_boundary(path) -> list:
    """Read an externally supplied (r_c, lambda) polyline for plot overlay.

    An empty file (or header-only file) is a valid, empty overlay.  No
    computation is performed on the values beyond positivity and ordering.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()

    points = []
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != OVERLAY_CSV_HEADER:
                raise SpectrumFormatError(
                    f"{path}:{lineno}: expected header {OVERLAY_CSV_HEADER!r}, got {line!r}")
            header_seen = True
            continue
        fields = line.split(",")
        if len(fields) != 2:
            raise SpectrumFormatError(f"{path}:{lineno}: expected 2 fields, got {len(fields)}")
        try:
            r = float(fields[0])
            lam = float(fields[1])
        except ValueError as exc:
            raise SpectrumFormatError(f"{path}:{lineno}: {exc}") from None
        if not (r > 0 and lam > 0):
            raise ValidationError(f"{path}:{lineno}: overlay values must be positive")
        if points and not r > points[-1][0]:
            raise ValidationError(f"{path}:{lineno}: overlay rows not ascending in r_c")
        points.append((r, lam))
    return points
