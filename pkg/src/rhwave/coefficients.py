"""Expansion coefficients c_k(alpha, beta) of 1/zeta in the two-parameter
Pochhammer basis, the critical function psi, and the Riesz function F(x).

Three routes to c_k:

* ``c_direct``      sum mu(n) n^-alpha (1 - n^-beta)^k over the sieve,
* ``c_exponential`` the same sum with weight exp(-k n^-beta),
* ``c_binomial``    sum (-1)^j C(k, j) / zeta(alpha + beta j), small k only.

The two Möbius sums skip the leading n whose weight underflows binary64
(k n^-beta > 745); everything from there up to the sieve limit is summed
with Neumaier compensation.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._kernels import neumaier_sum, weighted_sum
from .errors import ConfigError, DomainError
from .mobius import MobiusTable
from .special import inverse_zeta_minus_one, zeta_minus_one, zeta_real

WINDOW_EXPONENT = 745.0
BINOMIAL_MAX_K = 40
POISSON_MAX_K = 200
RIESZ_FLOAT_MAX = 12.0


class ExploratoryWarning(UserWarning):
    """Model with alpha in (1/2, 1]: the Möbius series is not absolutely convergent."""


@dataclass(frozen=True)
class ModelParams:
    """One (alpha, beta) model with critical abscissa rho.

    ``alpha <= 1`` is accepted only with ``exploratory=True`` (and never
    below 1/2); truncation bounds are then infinite.
    """

    alpha: float
    beta: float
    rho: float = 0.5
    exploratory: bool = False

    def __post_init__(self):
        if not self.beta > 0:
            raise ConfigError(f"beta must be > 0, got {self.beta}")
        if self.alpha <= 1:
            if self.alpha <= 0.5:
                raise ConfigError(f"alpha must exceed 1/2, got {self.alpha}")
            if not self.exploratory:
                raise ConfigError(
                    f"alpha = {self.alpha} <= 1 is outside the convergent regime; "
                    "pass exploratory=True to analyse it anyway"
                )
            warnings.warn(
                f"alpha = {self.alpha}: exploratory model, tail bounds are not available",
                ExploratoryWarning,
                stacklevel=3,
            )

    @property
    def psi_exponent(self) -> float:
        """(alpha - rho) / beta, the power of k in psi."""
        return (self.alpha - self.rho) / self.beta

    @property
    def convergent(self) -> bool:
        return self.alpha > 1


class Method(str, enum.Enum):
    DIRECT = "direct"
    EXPONENTIAL = "exp"
    BINOMIAL = "binomial"


@dataclass(frozen=True)
class CoefficientResult:
    value: float
    tail_bound: float
    terms_used: int
    method: Method


@dataclass(frozen=True)
class _Series:
    amp: np.ndarray          # mu(n) / n^alpha over squarefree n, ascending
    inv_pow: np.ndarray      # n^-beta
    log_direct: np.ndarray   # log1p(-n^-beta)
    log_exp: np.ndarray      # -n^-beta
    cutoff: int


def _series(params: ModelParams, table: MobiusTable, cutoff: int | None) -> _Series:
    n_max = table.limit if cutoff is None else int(cutoff)
    if n_max < 2:
        raise ConfigError(f"Möbius cutoff must be >= 2, got {n_max}")
    if n_max > table.limit:
        raise ConfigError(f"cutoff {n_max} exceeds sieve limit {table.limit}")
    key = (params.alpha, params.beta, n_max)
    hit = table._cache.get(key)
    if hit is not None:
        return hit
    mu = table.values[1 : n_max + 1]
    n = np.flatnonzero(mu) + 1
    nf = n.astype(float)
    inv_pow = nf ** -params.beta
    with np.errstate(divide="ignore"):
        log_direct = np.log1p(-inv_pow)
    series = _Series(
        amp=mu[n - 1].astype(float) * nf ** -params.alpha,
        inv_pow=inv_pow,
        log_direct=log_direct,
        log_exp=-inv_pow,
        cutoff=n_max,
    )
    if len(table._cache) > 32:
        table._cache.clear()
    table._cache[key] = series
    return series


def tail_bound(alpha: float, cutoff: int) -> float:
    """Bound on |sum_{n > N} mu(n) n^-alpha w_n| for weights 0 <= w_n <= 1."""
    if alpha <= 1:
        return math.inf
    return cutoff ** (1.0 - alpha) / (alpha - 1.0)


def _moebius_sum(params, k, table, cutoff, window, method):
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    s = _series(params, table, cutoff)
    if k == 0:
        value = neumaier_sum(s.amp)
        start = 0
    else:
        start = int(np.searchsorted(-s.inv_pow, -WINDOW_EXPONENT / k)) if window else 0
        logw = s.log_direct if method is Method.DIRECT else s.log_exp
        value = weighted_sum(s.amp, logw, start, float(k))
    return CoefficientResult(
        value=float(value),
        tail_bound=tail_bound(params.alpha, s.cutoff),
        terms_used=len(s.amp) - start,
        method=method,
    )


def c_direct(
    params: ModelParams,
    k: int,
    table: MobiusTable,
    *,
    cutoff: int | None = None,
    window: bool = True,
) -> CoefficientResult:
    """c_k from the Möbius sum with weight (1 - n^-beta)^k.

    The weight is formed as exp(k * log1p(-n^-beta)).  ``cutoff`` truncates the
    sum below the sieve limit; ``window=False`` disables the underflow skip.
    """
    return _moebius_sum(params, k, table, cutoff, window, Method.DIRECT)


def c_exponential(
    params: ModelParams,
    k: int,
    table: MobiusTable,
    *,
    cutoff: int | None = None,
    window: bool = True,
) -> CoefficientResult:
    """c_k from the Möbius sum with weight exp(-k n^-beta) (large-beta form)."""
    return _moebius_sum(params, k, table, cutoff, window, Method.EXPONENTIAL)


def c_binomial(params: ModelParams, k: int) -> CoefficientResult:
    """c_k = sum_j (-1)^j C(k, j) / zeta(alpha + beta j), for k <= 40.

    For k >= 1 the alternating binomial sum of the constant 1 vanishes, so the
    sum is carried over 1/zeta - 1 instead; that removes the O(2^k)
    cancellation against the leading 1 and leaves only the tail decay.
    """
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if k > BINOMIAL_MAX_K:
        raise DomainError(
            f"binomial route is capped at k = {BINOMIAL_MAX_K} (binary64 cancellation); "
            "use c_direct for larger k"
        )
    a, b = params.alpha, params.beta
    if k == 0:
        value = 1.0 + inverse_zeta_minus_one(a)
    else:
        terms = [(-1) ** j * math.comb(k, j) * inverse_zeta_minus_one(a + b * j) for j in range(k + 1)]
        value = math.fsum(terms)
    return CoefficientResult(value=value, tail_bound=0.0, terms_used=k + 1, method=Method.BINOMIAL)


def coefficient(params: ModelParams, k: int, table: MobiusTable | None, method: Method | str) -> CoefficientResult:
    method = Method(method)
    if method is Method.BINOMIAL:
        return c_binomial(params, k)
    if table is None:
        raise ConfigError(f"method {method.value} needs a Möbius table")
    if method is Method.DIRECT:
        return c_direct(params, k, table)
    return c_exponential(params, k, table)


def psi(params: ModelParams, k: int, c_k: float) -> float:
    """Critical function c_k * k^((alpha - rho) / beta); 0 at k = 0."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if k == 0:
        return 0.0
    return c_k * k ** params.psi_exponent


def poisson_window(k: int) -> int:
    """Last p kept in the Poisson mixture; Poisson(k) mass beyond it is < 1e-15."""
    return k + math.ceil(20 * math.sqrt(k)) + 50


def poisson_mixture_check(params: ModelParams, k: int, table: MobiusTable) -> float:
    """|c_exponential(k) - sum_p c_direct(p) k^p e^-k / p!| over p <= poisson_window(k).

    Both sides use the same sieve, so the gap measures only rounding and the
    truncation of the p sum.
    """
    if not 0 <= k <= POISSON_MAX_K:
        raise DomainError(f"Poisson mixture check needs 0 <= k <= {POISSON_MAX_K}, got {k}")
    lhs = c_exponential(params, k, table).value
    if k == 0:
        return abs(lhs - c_direct(params, 0, table).value)
    log_k = math.log(k)
    terms = []
    for p in range(poisson_window(k) + 1):
        weight = math.exp(p * log_k - math.lgamma(p + 1) - k)
        if weight == 0.0:
            continue
        terms.append(weight * c_direct(params, p, table).value)
    return abs(lhs - math.fsum(terms))


def riesz_function(x: float) -> float:
    """Riesz's F(x) = sum_{k>=1} (-1)^(k+1) x^k / ((k-1)! zeta(2k)).

    Evaluated as x e^-x + x sum_m (-x)^m / m! (1/zeta(2m+2) - 1), which is the
    same series with the exactly summable part pulled out.  The remaining
    terms still peak near x e^(x/4) while F stays O(1), so beyond
    ``RIESZ_FLOAT_MAX`` the sum is carried in mpmath with enough digits to
    absorb that cancellation.
    """
    if x < 0:
        raise DomainError(f"riesz_function is implemented for x >= 0, got {x}")
    if x == 0:
        return 0.0
    if x > RIESZ_FLOAT_MAX:
        return _riesz_mp(x)
    terms = [x * math.exp(-x)]
    partial = terms[0]
    log_x = math.log(x)
    m = 0
    while True:
        mag = math.exp(m * log_x - math.lgamma(m + 1) + log_x)
        term = (-1) ** m * mag * inverse_zeta_minus_one(2 * m + 2)
        terms.append(term)
        partial += term
        if m > x and abs(term) < 1e-16 * abs(partial):
            break
        m += 1
    return math.fsum(terms)


def _riesz_mp(x: float) -> float:
    import mpmath

    digits = 25 + int((x / 4 + math.log(x)) / math.log(10))
    with mpmath.workdps(digits):
        xm = mpmath.mpf(x)
        total = xm * mpmath.exp(-xm)
        power = xm  # x^(m+1) / m!
        m = 0
        while True:
            s = 2 * m + 2
            # Hurwitz zeta(s, 2) = zeta(s) - 1 at full relative precision
            zm1 = mpmath.zeta(s, 2)
            term = power * (-zm1 / (1 + zm1))
            total += term if m % 2 == 0 else -term
            if m > x and abs(term) < mpmath.mpf(10) ** -20 * abs(total):
                break
            m += 1
            power *= xm / m
        return float(total)


def inverse_zeta(alpha: float) -> float:
    """1/zeta(alpha) for alpha > 1, the k = 0 coefficient."""
    return 1.0 / zeta_real(alpha)


def reference_bound(alpha: float) -> float:
    """|1/zeta(alpha) - 1|, the bound |c_k| stays under for alpha = 7/2, beta = 4."""
    zm1 = zeta_minus_one(alpha)
    return zm1 / (1.0 + zm1)
