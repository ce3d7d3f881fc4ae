"""Monte Carlo harnesses: fairness-probability sweep and rate distributions.

Every work unit (one network drop) draws from its own stream
``trial_rng(seed, experiment, point, drop)`` and results are reduced in
drop-index order, so ``threads=1`` and ``threads=N`` give identical output.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import SimConfig, generate_drop, trial_rng
from .fairness import beta_high_snr, jains_index, noma_more_fair
from .rates import NOMA, OMA, RateAllocation, UserChannels, noma_rates, oma_rates

HYBRID = "HYBRID"
SCHEMES = (NOMA, OMA, HYBRID)

#: |J_NOMA - J_OMA| at or below this counts as a tie
JAIN_TIE_TOL = 1e-9

DEFAULT_SWEEP_TRIALS = 10_000
DEFAULT_DISTRIBUTION_DROPS = 100
DEFAULT_P0_GRID = tuple(float(p) for p in range(0, 45, 5))
N_HIST_BINS = 100

_SWEEP_STREAM = 0
_DIST_STREAM = 1


def percentile(samples, q: float) -> float:
    """Empirical quantile with linear interpolation between order statistics."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("percentile of an empty sample")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    return float(np.quantile(x, q, method="linear"))


@dataclass(frozen=True)
class PairOutcome:
    noma: RateAllocation
    oma: RateAllocation
    j_noma: float
    j_oma: float
    metric_noma: bool
    metric_noma_hsnr: bool

    @property
    def tie(self) -> bool:
        return abs(self.j_noma - self.j_oma) <= JAIN_TIE_TOL


def evaluate_pair(pair: UserChannels) -> PairOutcome:
    decision = noma_more_fair(pair)
    n, o = noma_rates(pair), oma_rates(pair)
    b_h = decision.beta_high_snr
    # beta_high_snr exceeds 1/2 at low SNR, where it no longer maps to a ratio
    hsnr = b_h >= 1.0 or decision.gain_ratio <= b_h / (1.0 - b_h)
    return PairOutcome(
        noma=n,
        oma=o,
        j_noma=jains_index(n.rates),
        j_oma=jains_index(o.rates),
        metric_noma=decision.noma_more_fair,
        metric_noma_hsnr=hsnr,
    )


def _hybrid_from(outcome: PairOutcome) -> RateAllocation:
    if outcome.metric_noma and not outcome.tie:
        return outcome.noma
    return outcome.oma


def hybrid_select(pair: UserChannels) -> RateAllocation:
    """NOMA if the fairness threshold says NOMA is fairer, else OMA.

    Jain ties (within ``JAIN_TIE_TOL``) go to OMA.
    """
    if pair.n_users != 2:
        raise ValueError(f"hybrid selection works on pairs, got {pair.n_users} users")
    return _hybrid_from(evaluate_pair(pair))


def _map_ordered(fn, items, threads: int):
    if threads <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# --------------------------------------------------------------------------
# Fairness-probability sweep


@dataclass(frozen=True)
class SweepResult:
    p0_grid: tuple[float, ...]
    prob_metric: tuple[float, ...]
    prob_metric_hsnr: tuple[float, ...]
    prob_actual: tuple[float, ...]
    n_trials: tuple[int, ...]
    n_ties: tuple[int, ...]
    n_disagree: tuple[int, ...]


def _sweep_unit(cfg: SimConfig, point: int, drop: int, n_pairs: int) -> np.ndarray:
    d = generate_drop(cfg, trial_rng(cfg.seed, _SWEEP_STREAM, point, drop))
    counts = np.zeros(5, dtype=np.int64)  # metric, hsnr, actual, ties, disagree
    for pair in d.channels[:n_pairs]:
        out = evaluate_pair(pair)
        actual = out.j_noma >= out.j_oma
        counts += (
            out.metric_noma,
            out.metric_noma_hsnr,
            actual,
            out.tie,
            (not out.tie) and out.metric_noma != actual,
        )
    return counts


def run_fairness_sweep(cfg: SimConfig, p0_grid=DEFAULT_P0_GRID, threads: int = 1) -> SweepResult:
    """Probability that NOMA is fairer than OMA versus transmit power.

    ``cfg.trials`` independent pairs per grid point (default 10^4), taken
    from fresh drops of ``cfg.n_subcarriers`` pairs each.  Ties are counted
    but left out of the agreement statistic ``n_disagree``.
    """
    p0_grid = tuple(float(p) for p in p0_grid)
    if not p0_grid:
        raise ValueError("empty p0 grid")
    trials = cfg.trials or DEFAULT_SWEEP_TRIALS
    per_drop = cfg.n_subcarriers
    n_drops = math.ceil(trials / per_drop)

    units = []
    for i, p0 in enumerate(p0_grid):
        c = cfg.with_(p0_dbm=p0)
        for j in range(n_drops):
            units.append((c, i, j, min(per_drop, trials - j * per_drop)))
    partial = _map_ordered(lambda u: _sweep_unit(*u), units, threads)

    totals = np.zeros((len(p0_grid), 5), dtype=np.int64)
    for (_, i, _, _), counts in zip(units, partial):
        totals[i] += counts
    prob = totals[:, :3] / trials
    return SweepResult(
        p0_grid=p0_grid,
        prob_metric=tuple(prob[:, 0].tolist()),
        prob_metric_hsnr=tuple(prob[:, 1].tolist()),
        prob_actual=tuple(prob[:, 2].tolist()),
        n_trials=(trials,) * len(p0_grid),
        n_ties=tuple(totals[:, 3].tolist()),
        n_disagree=tuple(totals[:, 4].tolist()),
    )


# --------------------------------------------------------------------------
# Rate distributions for NOMA / OMA / hybrid


@dataclass(frozen=True)
class DistributionResult:
    samples: dict[str, np.ndarray]
    bin_edges: np.ndarray
    pdf_mass: dict[str, np.ndarray]
    cdf: dict[str, tuple[np.ndarray, np.ndarray]]
    jain: dict[str, float]
    p10: dict[str, float]
    noma_selection_fraction: float
    n_drops: int
    max_sum_rate_gap: float = field(default=0.0)

    def pdf_density(self, scheme: str) -> np.ndarray:
        return self.pdf_mass[scheme] / np.diff(self.bin_edges)


def _distribution_unit(cfg: SimConfig, drop: int):
    d = generate_drop(cfg, trial_rng(cfg.seed, _DIST_STREAM, drop))
    rates = np.zeros((3, cfg.n_users))
    n_noma = 0
    gap = 0.0
    for users, pair in zip(d.pairs, d.channels):
        out = evaluate_pair(pair)
        hyb = _hybrid_from(out)
        n_noma += hyb.scheme == NOMA
        for row, alloc in enumerate((out.noma, out.oma, hyb)):
            rates[row, users] = alloc.rates
            gap = max(gap, abs(math.fsum(alloc.rates) - out.noma.sum_rate) / out.noma.sum_rate)
    return rates, n_noma, gap


def run_distribution(cfg: SimConfig, threads: int = 1) -> DistributionResult:
    """Per-user rate statistics over ``cfg.trials`` drops (default 100).

    Jain's index is taken over the pooled rates of every user in every drop;
    the histograms use 100 uniform bins on ``[0, max rate]`` shared by all
    schemes and are normalized to unit mass.
    """
    n_drops = cfg.trials or DEFAULT_DISTRIBUTION_DROPS
    partial = _map_ordered(lambda j: _distribution_unit(cfg, j), range(n_drops), threads)

    stacked = np.concatenate([p[0] for p in partial], axis=1)
    n_noma = sum(p[1] for p in partial)
    gap = max(p[2] for p in partial)
    samples = dict(zip(SCHEMES, stacked))

    top = float(stacked.max())
    edges = np.linspace(0.0, top, N_HIST_BINS + 1)
    pdf_mass, cdf = {}, {}
    for s, x in samples.items():
        counts, _ = np.histogram(x, bins=edges)
        pdf_mass[s] = counts / x.size
        xs = np.sort(x)
        cdf[s] = (xs, np.arange(1, xs.size + 1) / xs.size)

    return DistributionResult(
        samples=samples,
        bin_edges=edges,
        pdf_mass=pdf_mass,
        cdf=cdf,
        jain={s: jains_index(x) for s, x in samples.items()},
        p10={s: percentile(x, 0.10) for s, x in samples.items()},
        noma_selection_fraction=n_noma / (n_drops * cfg.n_subcarriers),
        n_drops=n_drops,
        max_sum_rate_gap=gap,
    )
