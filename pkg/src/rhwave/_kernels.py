"""numba kernels for the two hot loops: sieving and weighted Möbius sums."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def linear_sieve_mu(limit):
    # Euler sieve: every composite is struck exactly once, by its smallest prime factor.
    mu = np.zeros(limit + 1, dtype=np.int8)
    composite = np.zeros(limit + 1, dtype=np.bool_)
    primes = np.empty(max(16, int(1.3 * limit / max(1.0, np.log(max(limit, 2)))) + 16), dtype=np.int64)
    count = 0
    if limit >= 1:
        mu[1] = 1
    for i in range(2, limit + 1):
        if not composite[i]:
            primes[count] = i
            count += 1
            mu[i] = -1
        for j in range(count):
            p = primes[j]
            ip = i * p
            if ip > limit:
                break
            composite[ip] = True
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


@njit(cache=True, nogil=True)
def weighted_sum(amp, logw, start, k):
    """Neumaier-compensated sum of ``amp[i] * exp(k * logw[i])`` for i >= start."""
    s = 0.0
    c = 0.0
    for i in range(start, amp.shape[0]):
        x = amp[i] * np.exp(k * logw[i])
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


@njit(cache=True, nogil=True)
def neumaier_sum(values):
    s = 0.0
    c = 0.0
    for x in values:
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c
