"""Metropolis Monte Carlo for the planar log-gas with index conditioning.

Configurations of n particles z_1..z_n carry the energy

    E = n sum_k |z_k|^2 - 2 sum_{i<j} ln|z_i - z_j|,

sampled with Boltzmann weight exp(-(beta/2) E); at beta = 2 this is
exactly the eigenvalue law of the complex Gaussian ensemble with the
spectrum filling the unit disk.  The index of a configuration counts
particles with |z_k| strictly greater than the chain radius R.

A chain may be conditioned on the index staying inside a sector of
allowed values: single-particle Gaussian proposals that would leave the
sector are rejected outright, which preserves detailed balance on the
restricted state space and cancels the unknown normalization between
sectors.  Optional umbrella weights W(k) reweight the sector values by
exp(-W(k)); occupancy statistics are reported raw (biased) and
sector_ratio removes the bias exactly, so adjacent-sector probability
ratios of order exp(+-25) remain estimable.

The sweep kernel is numba-compiled and consumes pre-drawn per-sweep
random arrays, so a run is a pure function of its ChainConfig.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from numba import njit

from .counts import IndexPMF, RateCurve, reconstruct_log_pmf
from .errors import (
    DomainError,
    InfeasibleSectorError,
    InsufficientSamplingError,
    SingularConfigurationError,
)

__all__ = [
    "GasState",
    "ChainConfig",
    "ChainStats",
    "RadialHistogram",
    "RateScanConfig",
    "RateScanResult",
    "total_energy",
    "index_count",
    "move_delta",
    "acceptance_probability",
    "metropolis_step",
    "run_chain",
    "sector_ratio",
    "radial_histogram",
    "mc_rate_scan",
    "derive_seed",
]


# --- state and pure energy computations --------------------------------------


def index_count(positions: np.ndarray, radius: float) -> int:
    """Number of particles with modulus strictly greater than radius."""
    return int(np.count_nonzero(np.abs(positions) > radius))


def _energy_of(positions: np.ndarray) -> float:
    """Full O(n^2) energy n sum|z|^2 - 2 sum_{i<j} ln|z_i - z_j|."""
    z = np.asarray(positions, dtype=np.complex128)
    n = z.size
    quad = float(n) * float(np.sum(np.abs(z) ** 2))
    if n == 1:
        return quad
    diff = np.abs(z[:, None] - z[None, :])
    iu = np.triu_indices(n, k=1)
    gaps = diff[iu]
    if np.any(gaps == 0.0):
        raise SingularConfigurationError("coincident particle pair")
    return quad - 2.0 * float(np.sum(np.log(gaps)))


@dataclass
class GasState:
    """Particle positions with cached energy and cached index count."""

    positions: np.ndarray
    radius: float
    cached_energy: float
    cached_index: int

    @classmethod
    def create(cls, positions, radius: float) -> "GasState":
        z = np.array(positions, dtype=np.complex128).ravel()
        if z.size < 1:
            raise DomainError("need at least one particle")
        if not (math.isfinite(radius) and radius > 0.0):
            raise DomainError(f"radius must be positive, got {radius}")
        return cls(z, float(radius), _energy_of(z), index_count(z, radius))


def total_energy(state: GasState) -> float:
    """Recompute the energy from scratch (never trusts the cache)."""
    return _energy_of(state.positions)


def move_delta(state: GasState, k: int, z_new: complex) -> float:
    """Energy change of moving particle k to z_new, in O(n).

    Only the terms involving particle k enter.  z_new coinciding with
    any other particle is singular.
    """
    z = state.positions
    n = z.size
    if not 0 <= k < n:
        raise DomainError(f"particle index {k} out of range for n={n}")
    z_new = complex(z_new)
    d_new = np.abs(z - z_new)
    d_new[k] = 1.0
    if np.any(d_new == 0.0):
        raise SingularConfigurationError("proposal coincides with another particle")
    d_old = np.abs(z - z[k])
    d_old[k] = 1.0
    quad = n * (abs(z_new) ** 2 - abs(z[k]) ** 2)
    return float(quad - 2.0 * (np.sum(np.log(d_new)) - np.sum(np.log(d_old))))


def acceptance_probability(delta_energy: float, beta: float, delta_bias: float = 0.0) -> float:
    """min(1, exp(-(beta/2) dE - dW))."""
    arg = -0.5 * beta * delta_energy - delta_bias
    return 1.0 if arg >= 0.0 else math.exp(arg)


# --- chain configuration ------------------------------------------------------


@dataclass(frozen=True)
class ChainConfig:
    """Complete, hashable description of one chain run.

    sector is the set of allowed index values (empty = unconstrained);
    bias maps index values to umbrella weights W(k).  step_sigma of None
    resolves to 1/sqrt(n).  One sweep proposes n single-particle moves.

    Proposals are a two-scale Gaussian mixture: a long_fraction of moves
    use long_sigma instead of step_sigma.  The mixture stays symmetric
    (detailed balance is untouched) and lets particles jump the depleted
    gap of strongly constrained sectors, where diffusive 1/sqrt(n) steps
    would face an activation barrier of order n and pair chains would
    stop flipping.
    """

    n: int
    radius: float
    beta: float = 2.0
    step_sigma: float | None = None
    sweeps: int = 1000
    burn_in_sweeps: int = 0
    thin: int = 1
    seed: int = 0
    sector: frozenset = frozenset()
    bias: tuple = ()
    tune_step: bool = False
    tune_bias: bool = False
    record_samples: bool = False
    relax_sweeps: int = 100
    long_sigma: float = 0.5
    long_fraction: float = 0.1

    def __post_init__(self) -> None:
        object.__setattr__(self, "sector", frozenset(int(k) for k in self.sector))
        bias = self.bias.items() if isinstance(self.bias, dict) else self.bias
        object.__setattr__(self, "bias", tuple(sorted((int(k), float(w)) for k, w in bias)))
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise DomainError(f"n must be a positive integer, got {self.n}")
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise DomainError(f"radius must be positive, got {self.radius}")
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise DomainError(f"beta must be positive, got {self.beta}")
        if self.step_sigma is not None and not (math.isfinite(self.step_sigma) and self.step_sigma > 0.0):
            raise DomainError(f"step_sigma must be positive, got {self.step_sigma}")
        if self.sweeps < 0 or self.burn_in_sweeps < 0 or self.relax_sweeps < 0:
            raise DomainError("sweep counts must be nonnegative")
        if self.thin < 1:
            raise DomainError(f"thin must be >= 1, got {self.thin}")
        if not (math.isfinite(self.long_sigma) and self.long_sigma > 0.0):
            raise DomainError(f"long_sigma must be positive, got {self.long_sigma}")
        if not (0.0 <= self.long_fraction < 1.0):
            raise DomainError(f"long_fraction must lie in [0, 1), got {self.long_fraction}")

    def resolved_step_sigma(self) -> float:
        return self.step_sigma if self.step_sigma is not None else 1.0 / math.sqrt(self.n)

    def bias_map(self) -> dict[int, float]:
        return dict(self.bias)


@dataclass
class ChainStats:
    """Summary statistics of the measurement phase of one chain."""

    acceptance_rate: float
    mean_energy: float
    occupancy: dict
    occupancy_counts: dict
    samples: np.ndarray | None
    sample_sweeps: np.ndarray | None
    step_sigma: float
    bias: dict
    final_energy: float
    final_index: int
    config: ChainConfig


# --- metropolis moves ---------------------------------------------------------


def metropolis_step(
    state: GasState,
    config: ChainConfig,
    rng: np.random.Generator | None,
    *,
    particle: int | None = None,
    displacement: np.ndarray | None = None,
    uniform: float | None = None,
) -> bool:
    """One single-particle Metropolis proposal; updates state in place.

    Draw order when rng supplies the randomness: particle index, two
    Gaussian displacement coordinates, one uniform.  A proposal that
    would take the index outside a nonempty sector is rejected outright;
    coincident (singular) proposals are rejected as probability-zero
    events.  Returns True when the move was accepted.
    """
    n = state.positions.size
    if particle is None:
        particle = int(rng.integers(0, n))
    if displacement is None:
        scale = config.long_sigma if rng.random() < config.long_fraction else config.resolved_step_sigma()
        displacement = scale * rng.standard_normal(2)
    if uniform is None:
        uniform = float(rng.random())
    z_new = state.positions[particle] + complex(displacement[0], displacement[1])
    was_out = abs(state.positions[particle]) > state.radius
    now_out = abs(z_new) > state.radius
    new_index = state.cached_index + int(now_out) - int(was_out)
    if config.sector and new_index not in config.sector:
        return False
    try:
        delta = move_delta(state, particle, z_new)
    except SingularConfigurationError:
        return False
    weights = config.bias_map()
    delta_bias = weights.get(new_index, 0.0) - weights.get(state.cached_index, 0.0)
    if uniform < acceptance_probability(delta, config.beta, delta_bias):
        state.positions[particle] = z_new
        state.cached_energy += delta
        state.cached_index = new_index
        return True
    return False


@njit(cache=True)
def _sweep(zr, zi, log_dist, log_sum, r2, beta_half, sigma, sigma_long, long_fraction, r2_threshold, idx, energy, allowed, bias_w, kk, mix, gx, gy, uu, occ):  # pragma: no cover - compiled
    n = zr.shape[0]
    accepted = 0
    for i in range(n):
        k = kk[i]
        scale = sigma_long if mix[i] < long_fraction else sigma
        x = zr[k] + scale * gx[i]
        y = zi[k] + scale * gy[i]
        r2_new = x * x + y * y
        new_idx = idx
        if r2_new > r2_threshold:
            if r2[k] <= r2_threshold:
                new_idx = idx + 1
        elif r2[k] > r2_threshold:
            new_idx = idx - 1
        if not allowed[new_idx]:
            occ[idx] += 1
            continue
        log_new = 0.0
        singular = False
        for j in range(n):
            if j == k:
                continue
            dx = zr[j] - x
            dy = zi[j] - y
            d2 = dx * dx + dy * dy
            if d2 == 0.0:
                singular = True
                break
            log_new += math.log(d2)
        if singular:
            occ[idx] += 1
            continue
        log_new *= 0.5
        delta = n * (r2_new - r2[k]) - 2.0 * (log_new - log_sum[k])
        threshold = -beta_half * delta - (bias_w[new_idx] - bias_w[idx])
        if threshold >= 0.0 or uu[i] < math.exp(threshold):
            for j in range(n):
                if j == k:
                    continue
                dx = zr[j] - x
                dy = zi[j] - y
                lv = 0.5 * math.log(dx * dx + dy * dy)
                log_sum[j] += lv - log_dist[j, k]
                log_dist[j, k] = lv
                log_dist[k, j] = lv
            zr[k] = x
            zi[k] = y
            r2[k] = r2_new
            log_sum[k] = log_new
            energy += delta
            idx = new_idx
            accepted += 1
        occ[idx] += 1
    return accepted, energy, idx


class _Engine:
    """Cached-state sweep driver around the compiled kernel."""

    def __init__(self, zr: np.ndarray, zi: np.ndarray, config: ChainConfig):
        self.config = config
        self.n = config.n
        self.zr = zr
        self.zi = zi
        self.r2_threshold = config.radius * config.radius
        self.log_dist = np.zeros((self.n, self.n))
        self.log_sum = np.zeros(self.n)
        self.r2 = np.zeros(self.n)
        self.energy = 0.0
        self.idx = 0
        self.allowed = np.ones(self.n + 2, dtype=np.bool_)
        if config.sector:
            self.allowed[:] = False
            for k in config.sector:
                self.allowed[k] = True
        self.bias_w = np.zeros(self.n + 2)
        for k, w in config.bias:
            self.bias_w[k] = w
        self.refresh(check=False)

    def refresh(self, check: bool = True) -> None:
        """Recompute all caches from positions; checks drift of the energy."""
        z = self.zr + 1j * self.zi
        dist = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(dist, 1.0)
        if np.any(dist == 0.0):
            raise SingularConfigurationError("coincident particle pair")
        log_dist = np.log(dist)
        np.fill_diagonal(log_dist, 0.0)
        self.log_dist = log_dist
        self.log_sum = log_dist.sum(axis=1)
        self.r2 = self.zr**2 + self.zi**2
        fresh = float(self.n * self.r2.sum() - self.log_sum.sum())
        fresh_idx = int(np.count_nonzero(self.r2 > self.r2_threshold))
        if check:
            if abs(fresh - self.energy) > 1e-8 * max(1.0, abs(fresh)):
                raise RuntimeError(f"energy cache drift: cached {self.energy!r} vs fresh {fresh!r}")
            if fresh_idx != self.idx:
                raise RuntimeError(f"index cache drift: cached {self.idx} vs fresh {fresh_idx}")
        self.energy = fresh
        self.idx = fresh_idx

    def sweep(self, rng: np.random.Generator, sigma: float, occ: np.ndarray) -> int:
        kk = rng.integers(0, self.n, size=self.n)
        mix = rng.random(self.n)
        gx = rng.standard_normal(self.n)
        gy = rng.standard_normal(self.n)
        uu = rng.random(self.n)
        accepted, self.energy, self.idx = _sweep(
            self.zr,
            self.zi,
            self.log_dist,
            self.log_sum,
            self.r2,
            0.5 * self.config.beta,
            sigma,
            self.config.long_sigma,
            self.config.long_fraction,
            self.r2_threshold,
            self.idx,
            self.energy,
            self.allowed,
            self.bias_w,
            kk,
            mix,
            gx,
            gy,
            uu,
            occ,
        )
        return accepted


_REFRESH_EVERY = 1000


def _target_index(config: ChainConfig) -> int:
    typical = config.n * max(0.0, 1.0 - config.radius**2)
    if config.sector:
        return min(config.sector, key=lambda k: (abs(k - typical), k))
    return int(np.clip(round(typical), 0, config.n))


def _initial_positions(config: ChainConfig, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Feasible start: k0 particles strictly outside R, the rest strictly inside.

    The outside particles fill the annulus between max(R, sqrt(1 - k0/n))
    and roughly the unit circle, the inside ones the disk of radius
    min(R, sqrt((n - k0)/n)), both area-uniform: close to the predicted
    constrained profile, which keeps burn-in short.
    """
    n = config.n
    if config.sector:
        bad = [k for k in config.sector if k < 0 or k > n]
        if bad:
            raise InfeasibleSectorError(f"sector values {bad} outside feasible range [0, {n}]")
    k0 = _target_index(config)
    radius = config.radius
    inner = max(radius, math.sqrt(max(0.0, 1.0 - k0 / n)))
    outer = max(1.0, inner + 0.25)
    disk_r = min(radius, math.sqrt((n - k0) / n)) if k0 < n else 0.0
    while True:
        u_out = rng.random(k0)
        u_in = rng.random(n - k0)
        theta = 2.0 * math.pi * rng.random(n)
        r_out = np.sqrt(inner**2 + (outer**2 - inner**2) * (1.0 - u_out))  # strictly > inner >= R
        r_in = disk_r * np.sqrt(u_in)  # strictly < disk_r <= R
        radii = np.concatenate([r_out, r_in])
        z = radii * np.exp(1j * theta)
        if np.unique(z).size == n:
            break
    assert index_count(z, radius) == k0
    return z.real.copy(), z.imag.copy()


def run_chain(config: ChainConfig) -> ChainStats:
    """Run relax + burn-in + measurement sweeps; deterministic in the seed.

    Optional tuning happens only before measurement: step_sigma targets
    30-50% acceptance, umbrella weights are flattened Wang-Landau style
    over the sector and then frozen, preserving detailed balance during
    measurement.  Occupancy is accumulated per proposal; with sweeps = 0
    the initial sector value is reported with occupancy 1.
    """
    rng = np.random.default_rng(config.seed)
    zr, zi = _initial_positions(config, rng)
    engine = _Engine(zr, zi, config)
    sigma = config.resolved_step_sigma()
    scratch_occ = np.zeros(config.n + 2, dtype=np.int64)
    sweeps_done = 0

    def maybe_refresh() -> None:
        nonlocal sweeps_done
        sweeps_done += 1
        if sweeps_done % _REFRESH_EVERY == 0:
            engine.refresh()

    for _ in range(config.relax_sweeps):
        engine.sweep(rng, sigma, scratch_occ)
        maybe_refresh()

    # burn-in with optional tuning, frozen before measurement
    tune_window = 50
    window_accepted = 0
    wl_gain = 1.0
    wl_seen: set[int] = set()
    sector = sorted(config.sector)
    for s in range(config.burn_in_sweeps):
        window_accepted += engine.sweep(rng, sigma, scratch_occ)
        if config.tune_bias and len(sector) > 1 and wl_gain >= 1e-2:
            engine.bias_w[engine.idx] += wl_gain
            wl_seen.add(engine.idx)
            if len(wl_seen) == len(sector):
                wl_gain *= 0.5
                wl_seen.clear()
        if config.tune_step and (s + 1) % tune_window == 0:
            rate = window_accepted / (tune_window * config.n)
            if rate < 0.30:
                sigma = max(sigma * 0.85, 1e-4)
            elif rate > 0.50:
                sigma = min(sigma * 1.25, 3.0)
            window_accepted = 0
        maybe_refresh()
    if config.sector:
        base = min(engine.bias_w[k] for k in sector)
        for k in sector:
            engine.bias_w[k] -= base

    # measurement
    occ = np.zeros(config.n + 2, dtype=np.int64)
    accepted = 0
    energy_sum = 0.0
    n_snapshots = config.sweeps // config.thin if config.record_samples else 0
    samples = np.empty((n_snapshots, config.n), dtype=np.complex128) if n_snapshots else None
    sample_sweeps = np.empty(n_snapshots, dtype=np.int64) if n_snapshots else None
    snap = 0
    for s in range(config.sweeps):
        accepted += engine.sweep(rng, sigma, occ)
        energy_sum += engine.energy
        if config.sector and not engine.allowed[engine.idx]:
            raise RuntimeError(f"index {engine.idx} escaped sector {sorted(config.sector)}")
        if samples is not None and (s + 1) % config.thin == 0:
            samples[snap] = engine.zr + 1j * engine.zi
            sample_sweeps[snap] = s + 1
            snap += 1
        maybe_refresh()
    engine.refresh()

    proposals = config.sweeps * config.n
    counts = {int(k): int(c) for k, c in enumerate(occ[: config.n + 1]) if c > 0}
    for k in sector:
        counts.setdefault(k, 0)
    total = occ.sum()
    if total > 0:
        occupancy = {k: c / total for k, c in sorted(counts.items())}
    else:
        occupancy = {engine.idx: 1.0}
        counts = {engine.idx: 0}
    bias_out = {int(k): float(engine.bias_w[k]) for k in sector} if sector else {}
    return ChainStats(
        acceptance_rate=accepted / proposals if proposals else 0.0,
        mean_energy=energy_sum / config.sweeps if config.sweeps else engine.energy,
        occupancy=occupancy,
        occupancy_counts=dict(sorted(counts.items())),
        samples=samples,
        sample_sweeps=sample_sweeps,
        step_sigma=sigma,
        bias=bias_out,
        final_energy=engine.energy,
        final_index=engine.idx,
        config=config,
    )


def sector_ratio(config: ChainConfig, k: int, *, bias: float = 0.0, tune_bias: bool = False) -> float:
    """Estimate P(index = k+1) / P(index = k) from a pair-conditioned chain.

    The chain is restricted to {k, k+1}; the stationary occupancy ratio
    times exp(W(k+1) - W(k)) is a consistent estimator of the
    probability ratio for any umbrella weight, since the conditioning
    cancels the normalization constant.  With bias = 0 and no tuning
    this is the plain occupancy ratio.
    """
    if k < 0 or k + 1 > config.n:
        raise InfeasibleSectorError(f"pair {{{k}, {k + 1}}} infeasible for n={config.n}")
    cfg = replace(config, sector=frozenset((k, k + 1)), bias=((k + 1, float(bias)),), tune_bias=tune_bias)
    stats = run_chain(cfg)
    low = stats.occupancy_counts.get(k, 0)
    high = stats.occupancy_counts.get(k + 1, 0)
    if low == 0 or high == 0:
        raise InsufficientSamplingError(
            f"pair {{{k}, {k + 1}}}: visit counts {low}/{high} cannot form a ratio"
        )
    return math.exp(stats.bias[k + 1] - stats.bias[k]) * (high / low)


# --- radial histograms --------------------------------------------------------


@dataclass
class RadialHistogram:
    edges: np.ndarray
    cdf: np.ndarray
    centers: np.ndarray
    density: np.ndarray
    n_points: int


def radial_histogram(snapshots, bins: int) -> RadialHistogram:
    """Pooled radial empirical CDF (at bin edges) and area density.

    density[i] = count_i / (n_points * 2 pi r_i dr), the empirical areal
    density against which constant-density predictions compare directly.
    """
    if bins < 1:
        raise DomainError(f"bins must be >= 1, got {bins}")
    radii = np.abs(np.asarray(snapshots, dtype=np.complex128)).ravel()
    if radii.size == 0:
        raise DomainError("need at least one snapshot")
    top = float(radii.max())
    edges = np.linspace(0.0, top if top > 0.0 else 1.0, bins + 1)
    ordered = np.sort(radii)
    cdf = np.searchsorted(ordered, edges, side="right") / radii.size
    counts, _ = np.histogram(radii, bins=edges)
    centers = 0.5 * (edges[:-1] + edges[1:])
    dr = np.diff(edges)
    density = counts / (radii.size * 2.0 * math.pi * centers * dr)
    return RadialHistogram(edges=edges, cdf=cdf, centers=centers, density=density, n_points=radii.size)


# --- telescoped rate scan -----------------------------------------------------


def derive_seed(master_seed: int, stream: int) -> int:
    """Child seed for (master seed, stream id); the documented splitting rule."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(stream),))
    return int(seq.generate_state(2, dtype=np.uint32).view(np.uint64)[0])


@dataclass(frozen=True)
class RateScanConfig:
    """Index range and per-pair chain sizes for a telescoped rate scan."""

    n: int
    radius: float
    beta: float = 2.0
    k_min: int = 0
    k_max: int | None = None
    sweeps_per_pair: int = 20000
    burn_in_sweeps: int = 2000
    step_sigma: float | None = None
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        k_max = self.n if self.k_max is None else self.k_max
        object.__setattr__(self, "k_max", int(k_max))
        if not (0 <= self.k_min < self.k_max <= self.n):
            raise DomainError(f"need 0 <= k_min < k_max <= n, got [{self.k_min}, {self.k_max}], n={self.n}")
        if self.threads < 1:
            raise DomainError(f"threads must be >= 1, got {self.threads}")


@dataclass
class RateScanResult:
    curve: RateCurve
    k_values: np.ndarray
    ratios: np.ndarray
    pair_counts: list
    pair_bias: np.ndarray
    acceptance: np.ndarray


def _pair_job(args: tuple[RateScanConfig, int]) -> tuple[int, float, tuple[int, int], float, float]:
    scan, k = args
    cfg = ChainConfig(
        n=scan.n,
        radius=scan.radius,
        beta=scan.beta,
        step_sigma=scan.step_sigma,
        sweeps=scan.sweeps_per_pair,
        burn_in_sweeps=scan.burn_in_sweeps,
        seed=derive_seed(scan.seed, k),
        sector=frozenset((k, k + 1)),
        tune_step=True,
        tune_bias=True,
    )
    stats = run_chain(cfg)
    low = stats.occupancy_counts.get(k, 0)
    high = stats.occupancy_counts.get(k + 1, 0)
    if low == 0 or high == 0:
        raise InsufficientSamplingError(
            f"pair {{{k}, {k + 1}}}: visit counts {low}/{high} cannot form a ratio"
        )
    ratio = math.exp(stats.bias[k + 1] - stats.bias[k]) * (high / low)
    return k, ratio, (low, high), stats.bias[k + 1] - stats.bias[k], stats.acceptance_rate


def mc_rate_scan(scan: RateScanConfig) -> RateScanResult:
    """Estimate the rate curve on k in [k_min, k_max] by pair telescoping.

    Every adjacent pair {k, k+1} runs its own independently seeded,
    self-tuning umbrella chain (seed derived from (master seed, k)), so
    replicas can fan out over processes; results merge in sector order,
    making the outcome independent of the execution schedule.  The
    telescoped log masses are shift-normalized into a rate curve
    -(2/(beta n^2)) ln P with minimum 0 over the scanned window.
    """
    jobs = [(scan, k) for k in range(scan.k_min, scan.k_max)]
    if scan.threads > 1:
        with ProcessPoolExecutor(max_workers=scan.threads) as pool:
            results = list(pool.map(_pair_job, jobs))
    else:
        results = [_pair_job(j) for j in jobs]
    results.sort(key=lambda item: item[0])
    ratios = np.array([r[1] for r in results])
    log_mass = np.concatenate(([0.0], np.cumsum(np.log(ratios))))
    values = -(2.0 / (scan.beta * scan.n * scan.n)) * log_mass
    values -= values.min()
    k_values = np.arange(scan.k_min, scan.k_max + 1)
    curve = RateCurve(k_values / scan.n, values)
    return RateScanResult(
        curve=curve,
        k_values=k_values,
        ratios=ratios,
        pair_counts=[r[2] for r in results],
        pair_bias=np.array([r[3] for r in results]),
        acceptance=np.array([r[4] for r in results]),
    )
