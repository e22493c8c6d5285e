"""Zeta, Gamma and the table of nontrivial zeta zeros, in binary64.

Real zeta uses Euler-Maclaurin.  Complex zeta and its derivative use the
alternating eta series with Borwein's acceleration; a complex Euler-Maclaurin
evaluator covers the points on Re(s) = 1 where the eta prefactor
``1 - 2**(1-s)`` vanishes.  Gamma is a Lanczos (g = 7, n = 9) approximation
with reflection.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, PoleError, RefinementError

LN2 = math.log(2.0)
LN_2PI = math.log(2.0 * math.pi)

# B_2, B_4, ..., B_20 divided by (2j)!
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66),
    Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510), Fraction(43867, 798),
    Fraction(-174611, 330),
]
_EM_COEF = [float(b / math.factorial(2 * j + 2)) for j, b in enumerate(_BERNOULLI)]

# First 30 nontrivial zero ordinates, 3 decimals; refined at table build.
ZERO_SEEDS = (
    14.135, 21.022, 25.011, 30.425, 32.935, 37.586, 40.919, 43.327, 48.005, 49.774,
    52.970, 56.446, 59.347, 60.832, 65.113, 67.080, 69.546, 72.067, 75.705, 77.145,
    79.337, 82.910, 84.735, 87.425, 88.809, 92.492, 94.651, 95.871, 98.831, 101.318,
)
MAX_ZEROS = len(ZERO_SEEDS)


# ---------------------------------------------------------------- real zeta

def _em_tail_real(x: float, n0: int) -> float:
    """sum_{n >= n0} n**-x by Euler-Maclaurin."""
    tail = n0 ** (1.0 - x) / (x - 1.0) + 0.5 * n0 ** (-x)
    rising = x  # (x)_(2j-1)
    power = n0 ** (-x - 1.0)
    for j, coef in enumerate(_EM_COEF[:7]):
        tail += coef * rising * power
        rising *= (x + 2 * j + 1) * (x + 2 * j + 2)
        power /= n0 * n0
    return tail


def zeta_minus_one(x: float) -> float:
    """zeta(x) - 1 for real x > 1, accurate in the relative sense.

    Keeping the leading 1 out lets callers form 1/zeta(x) - 1 without
    cancellation when x is large.
    """
    if not x > 1.0:
        raise DomainError(f"zeta_real needs x > 1 (pole at 1), got {x}")
    n0 = 10
    head = math.fsum(n ** (-x) for n in range(2, n0))
    return head + _em_tail_real(x, n0)


def zeta_real(x: float) -> float:
    """Riemann zeta at real x > 1; absolute error well below 1e-12."""
    return 1.0 + zeta_minus_one(x)


def inverse_zeta_minus_one(x: float) -> float:
    """1/zeta(x) - 1, with 1/zeta(1) taken as 0."""
    if x == 1.0:
        return -1.0
    zm1 = zeta_minus_one(x)
    return -zm1 / (1.0 + zm1)


# ------------------------------------------------------------- complex zeta

@lru_cache(maxsize=64)
def _borwein_weights(n: int) -> np.ndarray:
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), held exactly
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4**i, math.factorial(n - i) * math.factorial(2 * i))
        d.append(n * acc)
    dn = d[n]
    w = np.array([float((dn - d[k]) / dn) * (-1) ** k for k in range(n)])
    w.setflags(write=False)
    return w


@lru_cache(maxsize=64)
def _log_table(n: int) -> np.ndarray:
    logs = np.log(np.arange(1, n + 1, dtype=float))
    logs.setflags(write=False)
    return logs


def _borwein_terms(t: float) -> int:
    # error bound ~ 3 (1+2|t|) e^{pi |t| / 2} / (3 + sqrt 8)^n
    return 30 + int(1.1 * abs(t)) + 1


def _check_domain(s: complex) -> complex:
    s = complex(s)
    if not s.real > 0.0:
        raise DomainError(f"complex zeta is implemented for Re(s) > 0 only, got {s}")
    if abs(s - 1.0) < 1e-8:
        raise PoleError(f"s = {s} is within 1e-8 of the pole at s = 1", pole=1)
    return s


def _eta_and_derivative(s: complex) -> tuple[complex, complex]:
    n = _borwein_terms(s.imag)
    w = _borwein_weights(n)
    logs = _log_table(n)
    powers = w * np.exp(-s * logs)
    eta = complex(powers.sum())
    deta = complex(-(powers * logs).sum())
    return eta, deta


def _zeta_em_complex(s: complex) -> tuple[complex, complex]:
    """Euler-Maclaurin zeta and zeta' for complex s != 1."""
    n0 = 20 + int(abs(s.imag))
    logs = np.log(np.arange(1, n0, dtype=float))
    terms = np.exp(-s * logs)
    z = complex(terms.sum())
    dz = complex(-(terms * logs).sum())
    ln0 = math.log(n0)
    p1 = cmath.exp((1.0 - s) * ln0)
    p0 = cmath.exp(-s * ln0)
    z += p1 / (s - 1.0) + 0.5 * p0
    dz += -ln0 * p1 / (s - 1.0) - p1 / (s - 1.0) ** 2 - 0.5 * ln0 * p0
    rising = s
    drising = 1.0 + 0j
    power = p0 / n0
    for j, coef in enumerate(_EM_COEF):
        z += coef * rising * power
        dz += coef * (drising - ln0 * rising) * power
        a, b = s + 2 * j + 1, s + 2 * j + 2
        drising = drising * a * b + rising * (a + b)
        rising *= a * b
        power /= n0 * n0
    return z, dz


def _zeta_pair(s: complex) -> tuple[complex, complex]:
    s = _check_domain(s)
    two = cmath.exp((1.0 - s) * LN2)
    denom = 1.0 - two
    if abs(denom) < 0.05:
        return _zeta_em_complex(s)
    eta, deta = _eta_and_derivative(s)
    g = 1.0 / denom
    dg = -two * LN2 * g * g
    return eta * g, deta * g + eta * dg


def zeta_complex(s: complex) -> complex:
    """Riemann zeta for Re(s) > 0, s != 1."""
    return _zeta_pair(s)[0]


def zeta_prime(s: complex) -> complex:
    """Derivative of zeta for Re(s) > 0, s != 1 (analytic, not differenced)."""
    return _zeta_pair(s)[1]


def zeta_prime_trivial(m: int) -> float:
    """zeta'(-2m) in closed form: (-1)^m (2m)! zeta(2m+1) / (2 (2 pi)^(2m))."""
    if m < 1:
        raise DomainError(f"trivial zeros are at -2m with m >= 1, got m = {m}")
    mag = math.exp(math.lgamma(2 * m + 1) - 2 * m * LN_2PI - LN2) * zeta_real(2 * m + 1)
    return -mag if m % 2 else mag


# -------------------------------------------------------------------- gamma

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
)


def _check_pole(z: complex) -> None:
    if z.real < 0.5:
        nearest = round(z.real)
        if nearest <= 0 and abs(z - nearest) < 1e-9:
            raise PoleError(f"Gamma has a pole at {nearest} (argument {z})", pole=int(nearest))


def loggamma_complex(z: complex) -> complex:
    """A logarithm of Gamma(z); the imaginary part is only defined mod 2*pi."""
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        return math.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - loggamma_complex(1.0 - z)
    z -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * LN_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma_complex(z: complex) -> complex:
    """Gamma(z) for complex z off the non-positive integers.

    Raises
    ------
    PoleError
        If ``z`` is within 1e-9 of a non-positive integer; ``err.pole`` is
        that integer.
    """
    return cmath.exp(loggamma_complex(z))


def rgamma_complex(z: complex) -> complex:
    """1/Gamma(z), entire: exactly 0 at the non-positive integers."""
    z = complex(z)
    nearest = round(z.real)
    if nearest <= 0 and z == nearest:
        return 0j
    return cmath.exp(-loggamma_complex(z))


# -------------------------------------------------------------- zero table

@dataclass(frozen=True)
class ZeroRecord:
    """A nontrivial zero 1/2 + i*ordinate with zeta' evaluated there."""

    ordinate: float
    zeta_prime: complex

    @property
    def zero(self) -> complex:
        return complex(0.5, self.ordinate)


@dataclass(frozen=True)
class ZeroTable:
    records: tuple[ZeroRecord, ...]

    def __post_init__(self):
        if not self.records:
            raise DomainError("a zero table needs at least one record")

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def count(self) -> int:
        return len(self.records)

    @property
    def ordinates(self) -> list[float]:
        return [r.ordinate for r in self.records]

    def head(self, n: int) -> ZeroTable:
        if not 1 <= n <= len(self.records):
            raise DomainError(f"requested {n} zeros, table holds {len(self.records)}")
        return ZeroTable(self.records[:n])


def riemann_siegel_theta(t: float) -> float:
    """theta(t) = arg Gamma(1/4 + it/2) - (t/2) ln pi, reduced mod 2*pi."""
    return (loggamma_complex(complex(0.25, 0.5 * t)).imag - 0.5 * t * math.log(math.pi)) % (2 * math.pi)


def hardy_z(t: float) -> float:
    """Hardy's Z(t): real, with |Z(t)| = |zeta(1/2 + it)|."""
    return (cmath.exp(1j * riemann_siegel_theta(t)) * zeta_complex(complex(0.5, t))).real


@lru_cache(maxsize=None)
def _refine(index: int) -> ZeroRecord:
    seed = ZERO_SEEDS[index]
    lo, hi = seed - 0.01, seed + 0.01
    zlo, zhi = hardy_z(lo), hardy_z(hi)
    if zlo * zhi > 0:
        raise RefinementError(f"no sign change of Z(t) around seed #{index + 1} ({seed})", index)
    t = brentq(hardy_z, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    residual = abs(zeta_complex(complex(0.5, t)))
    if residual >= 1e-8:
        raise RefinementError(f"seed #{index + 1} refined to {t} with |zeta| = {residual:.2e}", index)
    return ZeroRecord(ordinate=t, zeta_prime=zeta_prime(complex(0.5, t)))


def build_zero_table(count: int = 1) -> ZeroTable:
    """Refine the first ``count`` (1..30) embedded zero seeds and attach zeta' to each."""
    if not 1 <= count <= MAX_ZEROS:
        raise DomainError(f"zero count must be in [1, {MAX_ZEROS}], got {count}")
    return ZeroTable(tuple(_refine(i) for i in range(count)))
