"""Scalar numerical kernels, pure-Python backend.

This module is the fallback twin of the compiled extension
``spontrad._kernels``: same algorithms, same constants, same operation order,
so both backends produce bit-identical results on one platform.  Keep the two
files in sync; ``tests/test_backends.py`` enforces agreement.

Contents:
  * log_gamma          -- Lanczos (g = 7, 9 coefficients), reflection for x < 1/2
  * reg_inc_gamma      -- regularized lower incomplete gamma P(s, x):
                          power series for x < s + 1, Lentz continued fraction
                          for the upper tail otherwise
  * gamma_quantile     -- bracketed bisection with Newton polish on P(s, x)
  * normal_quantile    -- Acklam rational initial guess + one Halley step on
                          the erfc-based normal CDF
  * Rng                -- xoshiro256** stream seeded through splitmix64, with
                          single-uniform inversion Poisson sampling for mean
                          < 30 and PTRS transformed rejection above
"""

import math

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_INV_2POW53 = 2.0 ** -53

_MAX_SERIES_ITER = 2000
_REL_TOL = 1e-16
_TINY = 1e-300

# Lanczos approximation, g = 7.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.9189385332046727  # log(2*pi)/2


def log_gamma(x):
    """Natural log of the gamma function for x > 0."""
    if not x > 0.0 or math.isinf(x):
        raise ValueError(f"log_gamma requires finite x > 0, got {x}")
    if x < 0.5:
        # Reflection keeps the Lanczos sum in its accurate range.
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def _gamma_prefactor(s, x, gln):
    """exp(s*log(x) - x - log_gamma(s)); underflows cleanly to 0."""
    arg = s * math.log(x) - x - gln
    if arg < -745.0:
        return 0.0
    return math.exp(arg)


def _lower_series(s, x, gln):
    """P(s, x) by the regularized power series, valid for x < s + 1."""
    ap = s
    term = 1.0 / s
    total = term
    for _ in range(_MAX_SERIES_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _REL_TOL:
            return total * _gamma_prefactor(s, x, gln)
    raise ValueError(f"incomplete gamma series failed to converge (s={s}, x={x})")


def _upper_continued_fraction(s, x, gln):
    """Q(s, x) by the Lentz continued fraction, valid for x >= s + 1."""
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_SERIES_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _REL_TOL:
            return _gamma_prefactor(s, x, gln) * h
    raise ValueError(f"incomplete gamma continued fraction failed to converge (s={s}, x={x})")


def reg_inc_gamma(s, x):
    """Regularized lower incomplete gamma P(s, x), s > 0, x >= 0."""
    if not s > 0.0 or not math.isfinite(s):
        raise ValueError(f"reg_inc_gamma requires finite shape > 0, got {s}")
    if not x >= 0.0 or not math.isfinite(x):
        raise ValueError(f"reg_inc_gamma requires finite x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    gln = log_gamma(s)
    if x < s + 1.0:
        return _lower_series(s, x, gln)
    return 1.0 - _upper_continued_fraction(s, x, gln)


def gamma_quantile(s, p):
    """Inverse of reg_inc_gamma in x: smallest x with P(s, x) = p.

    Bracketed bisection refined by Newton steps; the result satisfies
    |P(s, x) - p| <= 1e-12 unless the bracket collapses to machine width
    first (which also pins x).
    """
    if not s > 0.0 or not math.isfinite(s):
        raise ValueError(f"gamma_quantile requires finite shape > 0, got {s}")
    if not 0.0 <= p < 1.0:
        raise ValueError(f"gamma_quantile requires 0 <= p < 1, got {p}")
    if p == 0.0:
        return 0.0

    gln = log_gamma(s)
    lo = 0.0
    hi = s + 10.0 * math.sqrt(s) + 10.0
    while reg_inc_gamma(s, hi) < p:
        lo = hi
        hi *= 2.0
        if hi > 1e300:
            raise ValueError(f"gamma_quantile bracket overflow (s={s}, p={p})")

    x = 0.5 * (lo + hi)
    for _ in range(200):
        f = reg_inc_gamma(s, x) - p
        if abs(f) <= 1e-12:
            return x
        if f < 0.0:
            lo = x
        else:
            hi = x
        # Relative collapse test: quantiles can sit arbitrarily close to
        # zero (small shapes), where an absolute width would stop early.
        if hi - lo <= 1e-15 * hi:
            return x
        arg = (s - 1.0) * math.log(x) - x - gln
        pdf = math.exp(arg) if arg > -745.0 else 0.0
        if pdf > 0.0:
            step = f / pdf
            cand = x - step
            if lo < cand < hi:
                x = cand
                continue
        x = 0.5 * (lo + hi)
    return x


# Acklam's rational approximation to the inverse normal CDF.
_ACKLAM_A = (-3.969683028665376e+01, 2.209460984245205e+02,
             -2.759285104469687e+02, 1.383577518672690e+02,
             -3.066479806614716e+01, 2.506628277459239e+00)
_ACKLAM_B = (-5.447609879822406e+01, 1.615858368580409e+02,
             -1.556989798598866e+02, 6.680131188771972e+01,
             -1.328068155288572e+01)
_ACKLAM_C = (-7.784894002430293e-03, -3.223964580411365e-01,
             -2.400758277161838e+00, -2.549732539343734e+00,
             4.374664141464968e+00, 2.938163982698783e+00)
_ACKLAM_D = (7.784695709041462e-03, 3.224671290700398e-01,
             2.445134137142996e+00, 3.754408661907416e+00)
_ACKLAM_SPLIT = 0.02425
_SQRT_TWO_PI = 2.5066282746310002


def normal_quantile(p):
    """Inverse standard normal CDF for 0 < p < 1 (abs error well below 1e-9)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"normal_quantile requires 0 < p < 1, got {p}")
    # Reflect the upper half down: 1 - p is exact for p >= 0.5 (Sterbenz),
    # and the lower-tail residual below avoids the 1 - CDF cancellation
    # that would otherwise cost ~1e-8 accuracy near p = 1.
    flip = p > 0.5
    if flip:
        p = 1.0 - p
    a, b, c, d = _ACKLAM_A, _ACKLAM_B, _ACKLAM_C, _ACKLAM_D
    if p < _ACKLAM_SPLIT:
        q = math.sqrt(-2.0 * math.log(p))
        x = ((((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
             / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0))
    else:
        q = p - 0.5
        r = q * q
        x = ((((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
             / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0))
    # One Halley step on the erfc-form CDF takes the estimate to machine
    # precision; with x <= 0 the CDF value is a direct small erfc, so the
    # residual is computed without cancellation.
    err = 0.5 * math.erfc(-x / math.sqrt(2.0)) - p
    u = err * _SQRT_TWO_PI * math.exp(0.5 * x * x)
    x = x - u / (1.0 + 0.5 * x * u)
    return -x if flip else x


def _splitmix64(state):
    """One splitmix64 step; returns (output, next_state)."""
    state = (state + _GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z, state

def mix_seed(seed, index):
    """Stream seed for (seed, index): splitmix64 of seed XOR index*golden.

    index*golden mod 2^64 is a bijection of the index, so distinct indices
    give distinct states; the splitmix64 output scrambles them.
    """
    state = (seed ^ ((index * _GOLDEN) & _MASK64)) & _MASK64
    value, _ = _splitmix64(state)
    return value


def _rotl(v, k):
    return ((v << k) | (v >> (64 - k))) & _MASK64


class Rng:
    """xoshiro256** pseudo-random stream (Blackman & Vigna), splitmix64-seeded.

    Deterministic and platform-independent: the integer stream is exact, and
    uniform() uses only the top 53 bits, so every downstream draw is fixed by
    the seed.
    """

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed):
        state = seed & _MASK64
        self._s0, state = _splitmix64(state)
        self._s1, state = _splitmix64(state)
        self._s2, state = _splitmix64(state)
        self._s3, state = _splitmix64(state)

    def next_u64(self):
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def uniform(self):
        """Uniform double in [0, 1): top 53 bits scaled by 2^-53."""
        return (self.next_u64() >> 11) * _INV_2POW53

    def poisson(self, mean):
        """Poisson sample; inversion below mean 30, PTRS rejection above.

        The inversion branch consumes exactly one uniform and is the Poisson
        quantile function of that uniform, hence monotone in the mean for a
        matched stream.
        """
        if not mean >= 0.0 or not math.isfinite(mean):
            raise ValueError(f"poisson mean must be finite and >= 0, got {mean}")
        if mean == 0.0:
            return 0
        if mean < 30.0:
            return self._poisson_inversion(mean)
        return self._poisson_ptrs(mean)

    def _poisson_inversion(self, mean):
        u = self.uniform()
        prob = math.exp(-mean)
        cum = prob
        k = 0
        while u >= cum:
            k += 1
            prob *= mean / k
            cum += prob
            if prob <= 0.0 or k > 10000:
                break
        return k

    def _poisson_ptrs(self, mean):
        # Hormann's transformed rejection with squeeze (PTRS).
        slam = math.sqrt(mean)
        loglam = math.log(mean)
        b = 0.931 + 2.53 * slam
        a = -0.059 + 0.02483 * b
        invalpha = 1.1239 + 1.1328 / (b - 3.4)
        vr = 0.9277 - 3.6224 / (b - 2.0)
        for _ in range(10000):
            u = self.uniform() - 0.5
            v = self.uniform()
            us = 0.5 - abs(u)
            k = math.floor((2.0 * a / us + b) * u + mean + 0.43)
            if us >= 0.07 and v <= vr:
                return int(k)
            if k < 0 or (us < 0.013 and v > us):
                continue
            if (math.log(v) + math.log(invalpha) - math.log(a / (us * us) + b)
                    <= k * loglam - mean - log_gamma(k + 1.0)):
                return int(k)
        raise ValueError(f"poisson rejection sampler failed to accept (mean={mean})")
