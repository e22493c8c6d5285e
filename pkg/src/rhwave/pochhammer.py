"""Pochhammer polynomials P_k(z) = prod_{r=1}^k (1 - z/r) at complex z.

The product is accumulated as log-modulus plus phase, so k up to 1e9 and
beyond neither overflows nor underflows.  Factors r <= R are summed
directly; the remaining block prod_{R<r<=k} (1 - z/r) equals
Gamma(k+1-z) Gamma(R+1) / (Gamma(R+1-z) Gamma(k+1)) and is evaluated from
the Stirling series of the log-Gamma difference, which stays accurate
because R >> |z|.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .coefficients import ModelParams
from .errors import ConfigError, DomainError, PoleError
from .special import rgamma_complex

RECIPROCAL_MAX_K = 40

# B_{2j} / (2j (2j-1)) for j = 1..5
_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188)


def _clog1p(u: complex) -> complex:
    if abs(u) < 0.1:
        # alternating series; 1e-17 after ~16 terms at |u| = 0.1
        total = 0j
        power = u
        for j in range(1, 40):
            term = power / j
            total += term if j % 2 else -term
            if abs(term) < 1e-18 * max(abs(total), 1e-300):
                break
            power *= u
        return total
    return cmath.log(1.0 + u)


def _log_gamma_shift(m: int, z: complex) -> complex:
    """log Gamma(m+1-z) - log Gamma(m+1) for large integer m (|z| << m)."""
    w1 = m + 1.0
    w2 = w1 - z
    # (w - 1/2) log w - w differences, arranged to avoid cancellation
    main = (m + 0.5) * _clog1p(-z / w1) - z * cmath.log(w2) + z
    corr = 0j
    for j, c in enumerate(_STIRLING):
        p = 2 * j + 1
        corr += c * (w2 ** -p - w1 ** -p)
    return main + corr


def _direct_cutoff(z: complex) -> int:
    return 2000 + 50 * math.ceil(abs(z))


def log_pochhammer(z: complex, k: int) -> complex:
    """log P_k(z) (imaginary part mod 2*pi); -inf real part when P_k(z) = 0."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    z = complex(z)
    if z.imag == 0 and z.real == round(z.real) and 1 <= z.real <= k:
        return complex(-math.inf, 0.0)
    if k == 0:
        return 0j
    r_dir = min(k, _direct_cutoff(z))
    r = np.arange(1, r_dir + 1, dtype=float)
    factors = 1.0 - z / r
    logs = np.log(factors.astype(complex))
    total = complex(logs.real.sum(), logs.imag.sum())
    if k > r_dir:
        total += _log_gamma_shift(k, z) - _log_gamma_shift(r_dir, z)
    return total


def pochhammer_base(z: complex, k: int) -> complex:
    """P_k(z) = prod_{r=1}^k (1 - z/r); exactly 0 iff z is an integer in [1, k].

    Raises OverflowError when |P_k(z)| exceeds the binary64 range; use
    ``log_pochhammer`` there.
    """
    lp = log_pochhammer(z, k)
    if lp.real == -math.inf:
        return 0j
    try:
        return cmath.exp(lp)
    except OverflowError:
        raise OverflowError(f"|P_{k}({z})| = exp({lp.real:.6g}) overflows; use log_pochhammer") from None


def reduced_argument(s: complex, params: ModelParams) -> complex:
    """z = (s - alpha) / beta + 1."""
    if params.beta == 0:
        raise ConfigError("beta must be nonzero")
    return (complex(s) - params.alpha) / params.beta + 1.0


def pochhammer_model(s: complex, params: ModelParams, k: int) -> complex:
    """Two-parameter polynomial P_k(s, alpha, beta) = P_k((s - alpha)/beta + 1)."""
    return pochhammer_base(reduced_argument(s, params), k)


def reciprocal_bd(z: complex, k: int) -> complex:
    """1/P_k(z) = sum_{j=1}^k (-1)^j C(k, j) j / (z - j), for k <= 40.

    Kept as an independent oracle for ``pochhammer_base``; the sum is taken
    exactly on the binary value of ``z`` and rounded once.
    """
    if not 1 <= k <= RECIPROCAL_MAX_K:
        raise DomainError(f"reciprocal sum needs 1 <= k <= {RECIPROCAL_MAX_K}, got {k}")
    z = complex(z)
    for j in range(1, k + 1):
        if z == j:
            raise PoleError(f"1/P_{k} has a pole at z = {j}", pole=j)
    # exact Gaussian-rational sum: the alternating binomials cancel by up to
    # C(k, k/2) * k / |1/P_k|, which binary64 cannot absorb for |z| ~ 10
    x, y = Fraction(z.real), Fraction(z.imag)
    re = im = Fraction(0)
    for j in range(1, k + 1):
        c = (-1) ** j * math.comb(k, j) * j
        dx = x - j
        norm = dx * dx + y * y
        re += c * dx / norm
        im -= c * y / norm
    return complex(float(re), float(im))


def pochhammer_asymptotic(z: complex, k: int) -> complex:
    """Large-k surrogate k^-z / Gamma(1 - z)."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    z = complex(z)
    one_minus = 1.0 - z
    nearest = round(one_minus.real)
    if nearest <= 0 and abs(one_minus - nearest) < 1e-9:
        raise PoleError(f"Gamma(1 - z) has a pole at 1 - z = {nearest}", pole=int(nearest))
    return cmath.exp(-z * math.log(k)) * rgamma_complex(one_minus)
