"""Wave scans over k grids, beta sweeps, and oscillation features."""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .coefficients import Method, ModelParams, coefficient, psi
from .errors import ConfigError
from .mobius import DEFAULT_SIEVE_LIMIT, MobiusTable
from .special import ZeroTable
from .wave import predicted_period_x, psi_bar

K_MAX_LIMIT = 10**10
CSV_COLUMNS = ("k", "x", "c_k", "psi", "psi_bar", "tail_bound")


@dataclass(frozen=True)
class ScanConfig:
    params: ModelParams
    k_min: int
    k_max: int
    points: int | None = 400
    stride: int | None = None
    sieve_limit: int = DEFAULT_SIEVE_LIMIT
    method: Method = Method.DIRECT
    zeros_used: int = 1
    trivial_zeros: bool = False
    output_path: str | None = None
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if self.k_min < 1:
            raise ConfigError(f"k_min must be >= 1, got {self.k_min}")
        if self.k_max < self.k_min:
            raise ConfigError(f"k_max ({self.k_max}) < k_min ({self.k_min})")
        if self.k_max > K_MAX_LIMIT:
            raise ConfigError(f"k_max must be <= {K_MAX_LIMIT}, got {self.k_max}")
        if self.stride is not None:
            if self.stride < 1:
                raise ConfigError(f"stride must be >= 1, got {self.stride}")
        elif self.points is None or self.points < 2:
            if self.k_min != self.k_max:
                raise ConfigError("a log grid needs points >= 2")
        if self.zeros_used < 1:
            raise ConfigError(f"zeros_used must be >= 1, got {self.zeros_used}")
        if self.method is Method.BINOMIAL and self.k_max > 40:
            raise ConfigError("binomial method is limited to k <= 40")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def grid(self) -> np.ndarray:
        """Sorted unique int64 k values."""
        if self.k_min == self.k_max:
            return np.array([self.k_min], dtype=np.int64)
        if self.stride is not None:
            return np.arange(self.k_min, self.k_max + 1, self.stride, dtype=np.int64)
        ks = np.logspace(math.log10(self.k_min), math.log10(self.k_max), self.points)
        return np.unique(np.rint(ks).astype(np.int64))


@dataclass(frozen=True)
class WaveSample:
    k: int
    x: float
    c_k: float
    psi: float
    psi_bar: float
    tail_bound: float


@dataclass
class OscillationFeatures:
    zero_crossings: list[float] = field(default_factory=list)
    crossing_directions: list[int] = field(default_factory=list)
    extrema: list[tuple[float, float]] = field(default_factory=list)
    measured_period_x: float | None = None
    measured_amplitude: float | None = None
    crossing_count: int = 0
    onset_x: float = -math.inf


def sample_at(config: ScanConfig, k: int, table: MobiusTable | None, zeros: ZeroTable) -> WaveSample:
    params = config.params
    res = coefficient(params, int(k), table, config.method)
    bar = psi_bar(params, k, zeros, include_trivial=config.trivial_zeros) if k >= 2 else math.nan
    return WaveSample(
        k=int(k),
        x=math.log(k),
        c_k=res.value,
        psi=psi(params, int(k), res.value),
        psi_bar=bar,
        tail_bound=res.tail_bound,
    )


def _check_inputs(config: ScanConfig, table: MobiusTable | None, zeros: ZeroTable) -> ZeroTable:
    if config.method is not Method.BINOMIAL:
        if table is None or table.limit != config.sieve_limit:
            got = None if table is None else table.limit
            raise ConfigError(f"scan expects a Möbius table of limit {config.sieve_limit}, got {got}")
    if config.zeros_used > len(zeros):
        raise ConfigError(f"scan wants {config.zeros_used} zeros, table has {len(zeros)}")
    return zeros.head(config.zeros_used)


def iter_scan(
    config: ScanConfig,
    table: MobiusTable | None,
    zeros: ZeroTable,
    ks: Iterable[int] | None = None,
):
    """Yield samples in grid order; ``workers > 1`` computes them on a thread pool."""
    zeros = _check_inputs(config, table, zeros)
    ks = config.grid() if ks is None else ks
    if config.workers == 1:
        for k in ks:
            yield sample_at(config, int(k), table, zeros)
        return
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        yield from pool.map(lambda k: sample_at(config, int(k), table, zeros), ks)


def run_scan(config: ScanConfig, table: MobiusTable | None, zeros: ZeroTable) -> list[WaveSample]:
    """Compute one ``WaveSample`` per grid point, sorted by k.

    If ``config.output_path`` is set the rows are written there as CSV (or
    JSON for a ``.json`` suffix).
    """
    samples = sorted(iter_scan(config, table, zeros), key=lambda s: s.k)
    if config.output_path:
        write_samples(samples, config.output_path, config=config)
    return samples


# ------------------------------------------------------------------ output

def _fmt(v: float) -> str:
    return format(v, ".17g")


def sample_row(s: WaveSample) -> list[str]:
    return [str(s.k), _fmt(s.x), _fmt(s.c_k), _fmt(s.psi), _fmt(s.psi_bar), _fmt(s.tail_bound)]


def write_csv(samples: Sequence[WaveSample], path, *, extra: dict | None = None) -> None:
    extra = extra or {}
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(extra) + list(CSV_COLUMNS))
        for s in samples:
            w.writerow([str(v) for v in extra.values()] + sample_row(s))


def write_json(samples: Sequence[WaveSample], path, *, config: ScanConfig | None = None) -> None:
    doc = {"columns": list(CSV_COLUMNS), "samples": [asdict(s) for s in samples]}
    if config is not None:
        doc["config"] = config_dict(config)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, allow_nan=True)


def write_samples(samples, path, *, config: ScanConfig | None = None, fmt: str | None = None) -> None:
    fmt = fmt or ("json" if str(path).endswith(".json") else "csv")
    if fmt == "json":
        write_json(samples, path, config=config)
    else:
        write_csv(samples, path)


def config_dict(config: ScanConfig) -> dict:
    d = asdict(config)
    d["method"] = config.method.value
    return d


def read_csv(path) -> list[WaveSample]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(WaveSample(
                k=int(row["k"]), x=float(row["x"]), c_k=float(row["c_k"]), psi=float(row["psi"]),
                psi_bar=float(row["psi_bar"]), tail_bound=float(row["tail_bound"]),
            ))
    return out


def run_scan_checkpointed(config: ScanConfig, table, zeros, path) -> list[WaveSample]:
    """Scan that appends each CSV row as soon as it is computed.

    Rerunning with the same path skips k values already on disk, so an
    interrupted long scan resumes where it stopped.
    """
    path = Path(path)
    done: dict[int, WaveSample] = {}
    if path.exists() and path.stat().st_size > 0:
        done = {s.k: s for s in read_csv(path)}
    todo = [int(k) for k in config.grid() if int(k) not in done]
    new_file = not done
    with open(path, "a" if done else "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if new_file:
            w.writerow(CSV_COLUMNS)
        for s in iter_scan(config, table, zeros, ks=todo):
            w.writerow(sample_row(s))
            fh.flush()
            os.fsync(fh.fileno())
            done[s.k] = s
    return [done[k] for k in sorted(done)]


# ---------------------------------------------------------------- features

def _crossings(x: np.ndarray, y: np.ndarray) -> tuple[list[float], list[int]]:
    xs, dirs = [], []
    nz = np.flatnonzero(y != 0)
    for i, j in zip(nz[:-1], nz[1:]):
        if y[i] * y[j] < 0:
            xc = x[i] - y[i] * (x[j] - x[i]) / (y[j] - y[i])
            xs.append(float(xc))
            dirs.append(1 if y[j] > 0 else -1)
    return xs, dirs


def _extrema(x: np.ndarray, y: np.ndarray) -> list[tuple[float, float]]:
    out = []
    for i in range(1, len(y) - 1):
        a, b, c = y[i - 1], y[i], y[i + 1]
        if (b > a and b >= c) or (b < a and b <= c):
            # vertex of the parabola through the three points
            x0, x1, x2 = x[i - 1], x[i], x[i + 1]
            d0, d2 = x0 - x1, x2 - x1
            denom = d0 * d2 * (d0 - d2)
            if denom == 0:
                out.append((float(x1), float(b)))
                continue
            p = ((a - b) * d2 - (c - b) * d0) / denom
            q = ((c - b) * d0 * d0 - (a - b) * d2 * d2) / denom
            if p == 0 or not (min(d0, 0) <= -q / (2 * p) <= max(d2, 0)):
                out.append((float(x1), float(b)))
                continue
            dx = -q / (2 * p)
            out.append((float(x1 + dx), float(b + q * dx + p * dx * dx)))
    return out


def extract_features(samples: Sequence[WaveSample], onset_x: float = -math.inf) -> OscillationFeatures:
    """Zero crossings, extrema, period and amplitude of psi beyond ``onset_x``.

    Crossings are linearly interpolated.  Extrema come from 3-point
    comparison, placed at the vertex of the parabola through those points.
    The period is the mean gap between successive same-direction crossings
    and needs at least three crossings past the onset; otherwise it is None.
    """
    x = np.array([s.x for s in samples], dtype=float)
    y = np.array([s.psi for s in samples], dtype=float)
    feats = OscillationFeatures(onset_x=onset_x)
    xs, dirs = _crossings(x, y)
    feats.zero_crossings = xs
    feats.crossing_directions = dirs
    feats.crossing_count = len(xs)
    feats.extrema = _extrema(x, y)

    late = [(xc, d) for xc, d in zip(xs, dirs) if xc > onset_x]
    if len(late) >= 3:
        gaps = []
        for direction in (1, -1):
            pos = [xc for xc, d in late if d == direction]
            gaps.extend(np.diff(pos))
        if gaps:
            feats.measured_period_x = float(np.mean(gaps))
    late_ext = [abs(v) for xe, v in feats.extrema if xe > onset_x]
    if late_ext:
        feats.measured_amplitude = float(np.mean(late_ext))
    return feats


def default_onset_x(samples: Sequence[WaveSample], params: ModelParams, zeros: ZeroTable) -> float:
    """x of the global minimum of psi plus one predicted first-zero period."""
    worst = min(samples, key=lambda s: s.psi)
    return worst.x + predicted_period_x(params, zeros[0].ordinate)


def first_crossing_x(samples: Sequence[WaveSample]) -> float | None:
    """x of the first sign change of psi after its global minimum, or None."""
    i_min = min(range(len(samples)), key=lambda i: samples[i].psi)
    tail = samples[i_min:]
    xs, _ = _crossings(np.array([s.x for s in tail]), np.array([s.psi for s in tail]))
    return xs[0] if xs else None


def amplitude_trend(features: OscillationFeatures) -> list[float]:
    """|psi| at successive extrema past the onset, in x order."""
    return [abs(v) for xe, v in features.extrema if xe > features.onset_x]


def count_oscillations(features: OscillationFeatures, period_x: float, tol: float = 0.2) -> int:
    """Number of wave cycles locked to ``period_x``.

    Walks back from the last trough (and separately the last peak) while
    successive same-type extrema are one period apart within ``tol``; the
    longer chain is the count.  Early wiggles that do not follow the wave's
    period end the chain.
    """
    best = 0
    for sign in (1, -1):
        xs = [xe for xe, v in features.extrema if (v > 0) == (sign > 0) and v != 0]
        n = 1 if xs else 0
        for a, b in zip(xs[::-1][1:], xs[::-1]):
            if abs((b - a) / period_x - 1) > tol:
                break
            n += 1
        best = max(best, n)
    return best


# ------------------------------------------------------------------- sweep

@dataclass
class SweepResult:
    alpha: float
    betas: list[float]
    scans: dict[float, list[WaveSample]]

    @property
    def grid(self) -> list[int]:
        return [s.k for s in self.scans[self.betas[0]]]


def beta_sweep(
    alpha: float,
    betas: Sequence[float],
    k_max: int,
    table: MobiusTable,
    zeros: ZeroTable,
    *,
    k_min: int = 1,
    points: int = 400,
    rho: float = 0.5,
    method: Method | str = Method.DIRECT,
    zeros_used: int = 1,
    workers: int = 1,
) -> SweepResult:
    """One scan per beta on a shared log grid."""
    betas = [float(b) for b in betas]
    if not betas:
        raise ConfigError("beta sweep needs at least one beta")
    if any(b <= 0 for b in betas):
        raise ConfigError(f"all betas must be > 0, got {betas}")
    scans = {}
    for b in betas:
        cfg = ScanConfig(
            params=ModelParams(alpha, b, rho), k_min=k_min, k_max=k_max, points=points,
            sieve_limit=table.limit, method=method, zeros_used=zeros_used, workers=workers,
        )
        scans[b] = run_scan(cfg, table, zeros)
    return SweepResult(alpha=alpha, betas=betas, scans=scans)


def write_sweep(result: SweepResult, path) -> tuple[Path, Path]:
    """Write the long-format sweep CSV and a wide c_k-only companion.

    Returns (combined path, c_k path); the companion is ``<stem>.ck.csv``.
    """
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("beta",) + CSV_COLUMNS)
        for b in result.betas:
            for s in result.scans[b]:
                w.writerow([_fmt(b)] + sample_row(s))
    ck_path = path.with_suffix(".ck.csv")
    with open(ck_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k"] + [f"c_k_beta_{b:g}" for b in result.betas])
        cols = [result.scans[b] for b in result.betas]
        for i, k in enumerate(result.grid):
            w.writerow([str(k)] + [_fmt(col[i].c_k) for col in cols])
    return path, ck_path
