"""Möbius function table built with a linear (Euler) sieve.

Memory: the retained table is one signed byte per entry (``int8``).  During
construction a one-byte composite flag per entry and an ``int64`` prime list
(about ``1.3 N / ln N`` entries) are also live, so peak usage is roughly
``2 N`` bytes plus the prime list; ``N = 10**9`` therefore needs ~2.1 GB.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import linear_sieve_mu
from .errors import ConfigError

DEFAULT_SIEVE_LIMIT = 1_000_000
MAX_SIEVE_LIMIT = 1_000_000_000
BYTES_PER_ENTRY = 1


@dataclass(frozen=True, eq=False)
class MobiusTable:
    """Sieved values of mu(n) for 1 <= n <= limit.

    ``values[n]`` holds mu(n); ``values[0]`` is an unused 0 so that indices line
    up with n.  The array is flagged read-only after construction.
    """

    limit: int
    values: np.ndarray = field(repr=False)
    # per-(alpha, beta, cutoff) precomputed series arrays, filled lazily by coefficients
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __getitem__(self, n: int) -> int:
        return mu(self, n)

    def mertens(self, n: int) -> int:
        """Partial sum M(n) = sum of mu(m) for m <= n."""
        if not 0 <= n <= self.limit:
            raise IndexError(f"n must lie in [0, {self.limit}], got {n}")
        return int(self.values[: n + 1].sum(dtype=np.int64))

    @property
    def nbytes(self) -> int:
        return int(self.values.nbytes)


def build_sieve(limit: int, ceiling: int = MAX_SIEVE_LIMIT) -> MobiusTable:
    """Build the Möbius table up to ``limit`` in O(limit) time.

    Raises
    ------
    ConfigError
        If ``limit`` < 1 or exceeds ``ceiling``.  The message states the
        memory the request would need.
    """
    limit = int(limit)
    if limit < 1:
        raise ConfigError(f"sieve limit must be >= 1, got {limit}")
    if limit > ceiling:
        need = 2 * limit * BYTES_PER_ENTRY / 2**30
        raise ConfigError(
            f"sieve limit {limit} exceeds ceiling {ceiling} "
            f"(~{need:.1f} GiB peak at {BYTES_PER_ENTRY} byte/entry + build flags)"
        )
    values = linear_sieve_mu(limit)
    values.setflags(write=False)
    return MobiusTable(limit=limit, values=values)


def mu(table: MobiusTable, n: int) -> int:
    if not 1 <= n <= table.limit:
        raise IndexError(f"n must lie in [1, {table.limit}], got {n}")
    return int(table.values[n])
