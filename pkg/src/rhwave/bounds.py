"""Crude majorant of the sieve-truncated critical function and related monitors.

Setting |mu(n)| = 1 and using (1 - n^-beta)^k <= (1 - N^-beta)^k for n <= N:

    |f_k(alpha, beta, N)| <= (zeta(alpha) - 1) exp(a x + log(1 - N^-beta) e^x),

with a = (alpha - 1/2)/beta and x = ln k.  Replacing log(1 - N^-beta) by
-N^-beta (large N) gives the simplified form used by default; it is the
larger of the two, so still a bound.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from .coefficients import ModelParams, c_direct, psi
from .errors import ConfigError
from .mobius import MobiusTable
from .special import zeta_complex, zeta_minus_one

log = logging.getLogger(__name__)

THRESHOLD_RESOLUTION = 0.1


def absolute_bound_constant() -> float:
    """|1/zeta(1/2) - 1| = 1.68477..., the conjectured global bound on psi."""
    return abs(1.0 / zeta_complex(0.5) - 1.0)


@dataclass(frozen=True)
class BoundQuery:
    params: ModelParams
    sieve_cap: int
    target_amplitude: float

    def __post_init__(self):
        if self.sieve_cap < 2:
            raise ConfigError(f"sieve cap must be >= 2, got {self.sieve_cap}")
        if not self.target_amplitude > 0:
            raise ConfigError(f"target amplitude must be > 0, got {self.target_amplitude}")


def _check(params: ModelParams, N: int) -> None:
    if params.alpha <= 1:
        raise ConfigError(f"crude bound needs alpha > 1 (zeta(alpha) finite), got {params.alpha}")
    if N < 2:
        raise ConfigError(f"N must be >= 2, got {N}")


def log_crude_bound(params: ModelParams, N: int, x: float, *, exact: bool = False) -> float:
    _check(params, N)
    a = (params.alpha - 0.5) / params.beta
    log_np = params.beta * math.log(N)
    if exact:
        # log(1 - N^-beta) e^x = -(e^(x - beta ln N)) * scale, scale = -log1p(-u)/u >= 1
        u = math.exp(-log_np)
        scale = 1.0 + u / 2 + u * u / 3 if u < 1e-4 else -math.log1p(-u) / u
        suppression = scale * math.exp(min(x - log_np, 700.0))
    else:
        suppression = math.exp(min(x - log_np, 700.0))
    return math.log(zeta_minus_one(params.alpha)) + a * x - suppression


def crude_bound(params: ModelParams, N: int, x: float, *, exact: bool = False) -> float:
    """(zeta(alpha) - 1) exp(a x - e^x N^-beta) with a = (alpha - 1/2)/beta.

    ``exact=True`` keeps log(1 - N^-beta) instead of -N^-beta.
    """
    return math.exp(log_crude_bound(params, N, x, exact=exact))


def bound_peak_x(params: ModelParams, N: int) -> float:
    """x at which the simplified bound peaks: ln(N^beta (alpha - 1/2)/beta)."""
    return params.beta * math.log(N) + math.log((params.alpha - 0.5) / params.beta)


def threshold_x(query: BoundQuery, *, exact: bool = False) -> float:
    """Smallest x (0.1 grid) past which the crude bound stays below the target.

    The log-bound is concave with one maximum at ``bound_peak_x``; the search
    runs to its right.  Returns 0.0 when the bound never reaches the target.
    """
    params, N, target = query.params, query.sieve_cap, query.target_amplitude
    log_target = math.log(target)
    x_peak = bound_peak_x(params, N)

    def g(x):
        return log_crude_bound(params, N, x, exact=exact) - log_target

    if g(x_peak) < 0:
        return 0.0
    lo, hi = x_peak, x_peak + 1.0
    while g(hi) >= 0:
        lo, hi = hi, hi + 2.0 * (hi - x_peak)
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if g(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return math.ceil(hi / THRESHOLD_RESOLUTION - 1e-9) * THRESHOLD_RESOLUTION


def bound_curve(params: ModelParams, N: int, xs: Sequence[float]) -> list[tuple[float, float, float]]:
    """(x, simplified bound, exact bound) rows for plotting or CSV."""
    return [(x, crude_bound(params, N, x), crude_bound(params, N, x, exact=True)) for x in xs]


@dataclass(frozen=True)
class BoundReport:
    max_abs_psi: float
    at_k: int | None
    bound: float
    margin: float
    exceeded: bool
    samples: int


def absolute_bound_monitor(samples) -> BoundReport:
    """Largest |psi| in a scan and its distance to 1.68477...

    Purely observational: an exceedance is logged as an error and flagged in
    the report, never raised.
    """
    bound = absolute_bound_constant()
    samples = list(samples)
    if not samples:
        return BoundReport(0.0, None, bound, bound, False, 0)
    worst = max(samples, key=lambda s: abs(s.psi))
    peak = abs(worst.psi)
    report = BoundReport(
        max_abs_psi=peak,
        at_k=worst.k,
        bound=bound,
        margin=bound - peak,
        exceeded=peak > bound,
        samples=len(samples),
    )
    if report.exceeded:
        log.error("|psi| = %.6g at k = %d EXCEEDS the conjectured bound %.6g", peak, worst.k, bound)
    return report


@dataclass(frozen=True)
class CutoffSensitivity:
    k: int
    low_cutoff: int
    high_cutoff: int
    delta_c: float
    delta_psi: float


def cutoff_sensitivity(params: ModelParams, k: int, table: MobiusTable, low_cutoff: int) -> CutoffSensitivity:
    """Absolute change of c_k and psi when the Möbius cutoff rises from ``low_cutoff`` to ``table.limit``.

    Reported as raw differences; how they compare with the wave amplitude
    is left to the caller.
    """
    lo = c_direct(params, k, table, cutoff=low_cutoff).value
    hi = c_direct(params, k, table).value
    return CutoffSensitivity(
        k=k,
        low_cutoff=low_cutoff,
        high_cutoff=table.limit,
        delta_c=abs(hi - lo),
        delta_psi=abs(psi(params, k, hi) - psi(params, k, lo)),
    )
