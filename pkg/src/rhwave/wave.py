"""Zero-sum asymptotics of the critical function.

For large k,

    psi(k) ~ psibar(k) = (1/beta) sum_z k^((z - 1/2)/beta) Gamma((alpha - z)/beta) / zeta'(z),

summed over the nontrivial zeros z = 1/2 +- it (a conjugate pair gives twice
the real part of the upper term).  The exact identity behind it is

    beta k c_{k-1} = sum_z 1 / (zeta'(z) P_k((z - alpha)/beta + 1)),

and the overall sign here is the one the Möbius sums reproduce.  Trivial
zeros z = -2m decay like extra powers of 1/k and are off by default.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .coefficients import ModelParams, c_direct
from .errors import DomainError, PoleError
from .mobius import MobiusTable
from .pochhammer import log_pochhammer, reduced_argument
from .special import ZeroTable, gamma_complex, zeta_prime_trivial

MAX_TRIVIAL = 60


@dataclass(frozen=True)
class WavePrediction:
    amplitude: float
    period_x: float
    zeros_used: int


def _gamma_at_zero(params: ModelParams, z: complex, index: int) -> complex:
    try:
        return gamma_complex((params.alpha - z) / params.beta)
    except PoleError as exc:
        raise PoleError(f"Gamma pole at the argument for zero #{index + 1} ({z})", pole=exc.pole) from exc


def predicted_period_x(params: ModelParams, ordinate: float) -> float:
    """Wavelength in x = ln k of the k^(it/beta) phase: 2 pi beta / t."""
    return 2.0 * math.pi * params.beta / ordinate


def trivial_psi_bar(params: ModelParams, k: float) -> float:
    """Contribution of the trivial zeros to psibar (asymptotic series).

    The series in m is asymptotic for small k; it is cut at its smallest term.
    """
    a, b = params.alpha, params.beta
    log_k = math.log(k)
    total = 0.0
    prev = math.inf
    for m in range(1, MAX_TRIVIAL + 1):
        log_mag = (-2 * m - 0.5) / b * log_k + math.lgamma((a + 2 * m) / b)
        term = math.exp(log_mag) / zeta_prime_trivial(m)
        if abs(term) > prev:
            break
        total += term
        prev = abs(term)
        if abs(term) < 1e-17 * abs(total):
            break
    return total / b


def psi_bar(
    params: ModelParams,
    k: float,
    zeros: ZeroTable,
    *,
    include_trivial: bool = False,
) -> float:
    """Zero-sum approximation of psi(k) using every zero in ``zeros``.

    Returns a real number by construction (conjugate pairing).
    """
    if k < 2:
        raise DomainError(f"psi_bar needs k >= 2, got {k}")
    log_k = math.log(k)
    acc = 0j
    for i, rec in enumerate(zeros):
        z = rec.zero
        acc += cmath.exp(1j * rec.ordinate / params.beta * log_k) * _gamma_at_zero(params, z, i) / rec.zeta_prime
    value = 2.0 * acc.real / params.beta
    if include_trivial:
        value += trivial_psi_bar(params, k)
    return value


def first_zero_amplitude(params: ModelParams, zeros: ZeroTable) -> WavePrediction:
    """Amplitude (2/beta) |Gamma((alpha - z1)/beta)| / |zeta'(z1)| and period of the first-zero wave."""
    rec = zeros[0]
    g = _gamma_at_zero(params, rec.zero, 0)
    amplitude = 2.0 / params.beta * abs(g) / abs(rec.zeta_prime)
    return WavePrediction(amplitude=amplitude, period_x=predicted_period_x(params, rec.ordinate), zeros_used=1)


def identity_rhs(params: ModelParams, k: int, zeros: ZeroTable, *, include_trivial: bool = False) -> float:
    """sum_z 1 / (zeta'(z) P_k((z - alpha)/beta + 1)) with exact Pochhammer values."""
    acc = 0j
    for rec in zeros:
        w = reduced_argument(rec.zero, params)
        acc += cmath.exp(-log_pochhammer(w, k)) / rec.zeta_prime
    total = 2.0 * acc.real
    if include_trivial:
        trivial = 0.0
        for m in range(1, MAX_TRIVIAL + 1):
            w = reduced_argument(-2.0 * m, params)
            lp = log_pochhammer(w, k)
            if lp.real == -math.inf:
                continue
            term = (cmath.exp(-lp) / zeta_prime_trivial(m)).real
            trivial += term
            if m > 2 and abs(term) < 1e-17 * abs(trivial):
                break
        total += trivial
    return total


def bd_identity_residual(
    params: ModelParams,
    k: int,
    zeros: ZeroTable,
    table: MobiusTable,
    *,
    include_trivial: bool = False,
) -> float:
    """Relative residual |L - R| / |L| of beta k c_{k-1} = sum_z 1/(zeta'(z) P_k(...)).

    L uses ``c_direct`` on ``table``; R sums the tabulated zeros.  A
    diagnostic: it shrinks with k and with more zeros, but blows up where
    c_{k-1} crosses zero.
    """
    if k < 2:
        raise DomainError(f"identity residual needs k >= 2, got {k}")
    lhs = params.beta * k * c_direct(params, k - 1, table).value
    rhs = identity_rhs(params, k, zeros, include_trivial=include_trivial)
    return abs(lhs - rhs) / abs(lhs)
