import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nomafair.channel import SimConfig
from nomafair.experiments import (
    HYBRID,
    evaluate_pair,
    hybrid_select,
    percentile,
    run_distribution,
    run_fairness_sweep,
)
from nomafair.fairness import jains_index
from nomafair.rates import NOMA, OMA, make_channels, noma_rates, oma_rates


def _sort_and_index(samples, q):
    # brute-force oracle: position q*(n-1) in the sorted list
    xs = sorted(samples)
    pos = q * (len(xs) - 1)
    lo = int(math.floor(pos))
    hi = min(lo + 1, len(xs) - 1)
    return xs[lo] + (pos - lo) * (xs[hi] - xs[lo])


def test_percentile_examples():
    assert percentile([3.0, 1.0, 2.0], 0.0) == 1.0
    assert percentile([3.0, 1.0, 2.0], 1.0) == 3.0
    assert percentile([1, 2, 3, 4], 0.5) == 2.5
    with pytest.raises(ValueError):
        percentile([], 0.5)
    with pytest.raises(ValueError):
        percentile([1.0], 1.5)


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=200), st.floats(0, 1))
def test_percentile_matches_oracle(samples, q):
    assert percentile(samples, q) == pytest.approx(_sort_and_index(samples, q), rel=1e-9, abs=1e-6)


def test_hybrid_symmetric_is_oma():
    assert hybrid_select(make_channels([1e-9, 1e-9], 10.0, 1e-9)).scheme == OMA


def test_hybrid_asymmetric_is_noma():
    ch = make_channels([1e-3, 1.0], 100.0, 1.0)
    jn, jo = jains_index(noma_rates(ch).rates), jains_index(oma_rates(ch).rates)
    assert jn > jo
    assert hybrid_select(ch).scheme == NOMA


def test_hybrid_needs_pair():
    with pytest.raises(ValueError):
        hybrid_select(make_channels([1.0, 2.0, 3.0], 1.0, 1.0))


@given(st.floats(-10, 0), st.floats(-10, 0), st.floats(-2, 10))
def test_hybrid_pair_dominance(lg1, lg2, lgamma):
    g1, g2 = 10**lg1, 10**lg2
    ch = make_channels([g1, g2], 10**lgamma / (g1 + g2), 1.0)
    jh = jains_index(hybrid_select(ch).rates)
    jn, jo = jains_index(noma_rates(ch).rates), jains_index(oma_rates(ch).rates)
    assert jh >= max(jn, jo) - 1e-9


def test_evaluate_pair_tie_goes_to_oma():
    # equal gains: NOMA strictly less fair, never a tie -> OMA
    out = evaluate_pair(make_channels([1.0, 1.0], 1.0, 1.0))
    assert not out.tie and not out.metric_noma


SMALL = SimConfig(n_subcarriers=16, trials=400, seed=5)


def test_sweep_metric_exact_and_bounded():
    res = run_fairness_sweep(SMALL, (0.0, 20.0, 40.0))
    assert res.n_disagree == (0, 0, 0)
    for p in res.prob_metric + res.prob_actual + res.prob_metric_hsnr:
        assert 0.0 <= p <= 1.0
    assert res.prob_metric == pytest.approx(res.prob_actual, abs=max(res.n_ties) / 400 + 1e-12)
    assert res.n_trials == (400, 400, 400)


def test_sweep_reproducible_and_thread_invariant():
    a = run_fairness_sweep(SMALL, (10.0, 30.0), threads=1)
    b = run_fairness_sweep(SMALL, (10.0, 30.0), threads=4)
    assert a == b


def test_sweep_partial_last_drop():
    cfg = SimConfig(n_subcarriers=16, trials=37, seed=1)
    res = run_fairness_sweep(cfg, (20.0,))
    assert res.n_trials == (37,)
    assert res.prob_actual[0] * 37 == pytest.approx(round(res.prob_actual[0] * 37))


def test_sweep_rejects_empty_grid():
    with pytest.raises(ValueError):
        run_fairness_sweep(SMALL, ())


@pytest.fixture(scope="module")
def small_dist():
    return run_distribution(SimConfig(n_subcarriers=32, trials=20, seed=9, p0_dbm=40.0))


def test_distribution_shapes(small_dist):
    d = small_dist
    assert set(d.samples) == {NOMA, OMA, HYBRID}
    for s, x in d.samples.items():
        assert x.shape == (2 * 32 * 20,)
        assert d.pdf_mass[s].sum() == pytest.approx(1.0, abs=1e-12)
        xs, ps = d.cdf[s]
        assert np.all(np.diff(xs) >= 0) and np.all(np.diff(ps) > 0)
        assert ps[-1] == 1.0 and ps[0] > 0
        assert d.p10[s] == pytest.approx(np.quantile(x, 0.1))
        assert d.jain[s] == pytest.approx(jains_index(x))
    assert len(d.bin_edges) == 101 and d.bin_edges[0] == 0.0
    assert d.bin_edges[-1] == pytest.approx(max(x.max() for x in d.samples.values()))
    assert 0.0 <= d.noma_selection_fraction <= 1.0


def test_distribution_conservation(small_dist):
    assert small_dist.max_sum_rate_gap <= 1e-9


def test_distribution_hybrid_at_least_as_fair(small_dist):
    j = small_dist.jain
    assert j[HYBRID] >= max(j[NOMA], j[OMA]) - 0.02


def test_distribution_thread_invariant():
    cfg = SimConfig(n_subcarriers=16, trials=12, seed=2)
    a, b = run_distribution(cfg, threads=1), run_distribution(cfg, threads=6)
    for s in a.samples:
        assert np.array_equal(a.samples[s], b.samples[s])
    assert a.jain == b.jain
