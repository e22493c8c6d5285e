"""Independent reference implementations used only by the tests."""

import math

import numpy as np


def trial_division_mu(n):
    if n == 1:
        return 1
    sign, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1
    return -sign if n > 1 else sign


def eratosthenes_mu(limit):
    """mu by marking multiples of each prime and of each prime square."""
    mu = np.ones(limit + 1, dtype=np.int64)
    mu[0] = 0
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, limit + 1):
        if not is_prime[p]:
            continue
        is_prime[2 * p::p] = False
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p::p * p] = 0
    return mu


def prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def stirling_gamma_modulus(x, y):
    return math.sqrt(2 * math.pi) * abs(y) ** (x - 0.5) * math.exp(-math.pi * abs(y) / 2)
