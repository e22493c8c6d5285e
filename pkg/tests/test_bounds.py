import logging
import math
import random

import numpy as np
import pytest
from scipy.optimize import brentq

from rhwave import BoundQuery, ConfigError, ModelParams, absolute_bound_monitor, c_direct, crude_bound, psi, threshold_x
from rhwave.bounds import absolute_bound_constant, bound_curve, bound_peak_x, log_crude_bound
from rhwave.scanner import WaveSample
from rhwave.special import zeta_real

RIESZ = ModelParams(2, 2)
M354 = ModelParams(3.5, 4)


def _sample(k, value):
    return WaveSample(k=k, x=math.log(k), c_k=value, psi=value, psi_bar=math.nan, tail_bound=0.0)


def test_left_limit_is_zero():
    assert crude_bound(RIESZ, 1000, -200.0) < 1e-60


def test_formula():
    x, N = 5.0, 50
    a = (2 - 0.5) / 2
    ref = (zeta_real(2) - 1) * math.exp(a * x - math.exp(x) * N**-2.0)
    assert crude_bound(RIESZ, N, x) == pytest.approx(ref, rel=1e-13)


def test_large_x_underflows_cleanly():
    assert crude_bound(RIESZ, 10**9, 100.0) == 0.0


def test_reference_threshold_points():
    assert crude_bound(RIESZ, 1000, 17.0) < 0.000078
    assert crude_bound(M354, 10**6, 60.0) < 0.008411


@pytest.mark.parametrize("params, N, target, reference", [
    (M354, 1000, 0.008411, 31),
    (M354, 10**6, 0.008411, 60),
    (RIESZ, 1000, 0.000078, 17),
    (RIESZ, 10**6, 0.000078, 31),
])
def test_thresholds(params, N, target, reference):
    assert abs(threshold_x(BoundQuery(params, N, target)) - reference) <= 1.0


def _brentq_threshold(params, N, target):
    a = (params.alpha - 0.5) / params.beta
    c = math.log(zeta_real(params.alpha) - 1) - math.log(target)

    def g(x):
        return c + a * x - math.exp(x - params.beta * math.log(N))

    peak = params.beta * math.log(N) + math.log(a)
    return brentq(g, peak, peak + 50)


@pytest.mark.parametrize("params, N, target", [
    (RIESZ, 10**9, 0.000078), (M354, 10**3, 0.008411), (ModelParams(3, 3), 10**5, 0.0021562),
])
def test_threshold_against_root_finder(params, N, target):
    ref = _brentq_threshold(params, N, target)
    got = threshold_x(BoundQuery(params, N, target))
    assert got - 0.1 < ref <= got + 1e-9


def test_threshold_value_for_riesz_1e9():
    # what the inequality itself yields for N = 1e9
    assert threshold_x(BoundQuery(RIESZ, 10**9, 0.000078)) == pytest.approx(45.3, abs=1e-9)


def test_threshold_zero_when_target_unreachable():
    assert threshold_x(BoundQuery(RIESZ, 1000, 1e6)) == 0.0


def test_threshold_resolution():
    x = threshold_x(BoundQuery(RIESZ, 1000, 0.000078))
    assert round(x * 10) == pytest.approx(x * 10, abs=1e-9)
    assert crude_bound(RIESZ, 1000, x) < 0.000078
    assert crude_bound(RIESZ, 1000, x - 0.1) >= 0.000078


@pytest.mark.parametrize("params, target", [(RIESZ, 0.000078), (M354, 0.008411), (ModelParams(2, 6), 0.0210433)])
def test_threshold_monotone_in_N(params, target):
    xs = [threshold_x(BoundQuery(params, N, target)) for N in (2, 10, 100, 10**3, 10**4, 10**6, 10**9)]
    assert all(b >= a for a, b in zip(xs, xs[1:]))


@pytest.mark.parametrize("N", [100, 10**3, 10**6, 10**9])
@pytest.mark.parametrize("params", [RIESZ, M354])
def test_simplified_and_exact_agree(params, N):
    xt = threshold_x(BoundQuery(params, N, 1e-6))
    for x in np.linspace(0, xt + 5, 200):
        s, e = crude_bound(params, N, x), crude_bound(params, N, x, exact=True)
        assert e <= s
        if s > 1e-300:
            assert e == pytest.approx(s, rel=0.01)


def test_peak_location():
    N = 1000
    xp = bound_peak_x(RIESZ, N)
    assert xp == pytest.approx(math.log(N**2 * 1.5 / 2))
    assert log_crude_bound(RIESZ, N, xp) > log_crude_bound(RIESZ, N, xp - 0.01)
    assert log_crude_bound(RIESZ, N, xp) > log_crude_bound(RIESZ, N, xp + 0.01)


def test_is_an_actual_bound(table):
    rng = random.Random(5)
    for _ in range(1000):
        p = ModelParams(rng.uniform(1.2, 5.0), rng.uniform(1.0, 8.0))
        N = rng.randint(2, 10**5)
        k = rng.randint(1, 10**5)
        val = psi(p, k, c_direct(p, k, table, cutoff=N).value)
        assert abs(val) <= crude_bound(p, N, math.log(k)) + 1e-12, (p, N, k)


def test_errors():
    with pytest.raises(ConfigError):
        crude_bound(ModelParams(1.0, 2, exploratory=True), 10, 1.0)
    with pytest.raises(ConfigError):
        crude_bound(RIESZ, 1, 1.0)
    with pytest.raises(ConfigError):
        BoundQuery(RIESZ, 1, 0.1)
    with pytest.raises(ConfigError):
        BoundQuery(RIESZ, 10, 0.0)


def test_bound_curve_rows():
    rows = bound_curve(RIESZ, 1000, [0.0, 10.0])
    assert len(rows) == 2 and rows[1][0] == 10.0


# ------------------------------------------------------------------ monitor

def test_absolute_constant():
    assert absolute_bound_constant() == pytest.approx(1.68477, abs=1e-5)


def test_monitor_single_zero_sample():
    rep = absolute_bound_monitor([_sample(1, 0.0)])
    assert rep.max_abs_psi == 0.0
    assert not rep.exceeded


def test_monitor_empty():
    assert absolute_bound_monitor([]).samples == 0


def test_monitor_flags_but_never_raises(caplog):
    with caplog.at_level(logging.ERROR):
        rep = absolute_bound_monitor([_sample(3, 0.1), _sample(7, -2.0)])
    assert rep.exceeded and rep.at_k == 7
    assert rep.margin < 0
    assert "EXCEEDS" in caplog.text


def test_cutoff_sensitivity(table):
    from rhwave.bounds import cutoff_sensitivity

    k = int(math.exp(20))
    rep = cutoff_sensitivity(M354, k, table, 10**4)
    direct = abs(c_direct(M354, k, table).value - c_direct(M354, k, table, cutoff=10**4).value)
    assert rep.delta_c == direct
    assert rep.high_cutoff == 10**6
    # bounded by the tail of sum n^-alpha beyond the low cutoff
    assert rep.delta_c <= (10**4) ** -2.5 / 2.5
