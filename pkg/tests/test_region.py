import math

import numpy as np
import pytest

from nomafair.rates import make_channels, oma_rates
from nomafair.region import (
    RatePair,
    noma_boundary,
    noma_corners,
    oma_boundary,
    oma_point,
    region_contains,
)


@pytest.fixture
def fig2_asym():
    # 18 dB / 28 dB per-user SNR before the 20 dBm transmit power
    return make_channels([10**1.8, 10**2.8], 100.0, 1.0)


def test_symmetric_corners_mirror():
    c = noma_corners(make_channels([1e-8, 1e-8], 100.0, 1e-9))
    assert c["A"].r1 == pytest.approx(c["B"].r2, rel=1e-14)
    assert c["A"].r2 == pytest.approx(c["B"].r1, rel=1e-14)


def test_corner_sums(fig2_asym):
    total = math.log2(1 + 100 * (10**1.8 + 10**2.8))
    for p in noma_corners(fig2_asym).values():
        assert p.r1 + p.r2 == pytest.approx(total, abs=1e-9)


def test_dominant_user_collapse():
    c = noma_corners(make_channels([1e-30, 1.0], 10.0, 1.0))
    assert c["A"].r1 < 1e-25 and c["B"].r1 < 1e-25


def test_corner_a_is_sic_operating_point(fig2_asym):
    from nomafair.rates import noma_rates
    a = noma_corners(fig2_asym)["A"]
    assert (a.r1, a.r2) == pytest.approx(noma_rates(fig2_asym).rates, rel=1e-12)


def test_oma_endpoints(fig2_asym):
    b = oma_boundary(fig2_asym, 11)
    s1 = math.log2(1 + 100 * 10**1.8)
    s2 = math.log2(1 + 100 * 10**2.8)
    assert (b.samples[0].r1, b.samples[0].r2) == pytest.approx((0.0, s2))
    assert (b.samples[-1].r1, b.samples[-1].r2) == pytest.approx((s1, 0.0))


def test_oma_optimal_split_matches_oma_rates(fig2_asym):
    c = oma_boundary(fig2_asym, 5).corner_points["C"]
    assert (c.r1, c.r2) == pytest.approx(oma_rates(fig2_asym).rates, rel=1e-12)
    total = math.log2(1 + 100 * (10**1.8 + 10**2.8))
    assert c.r1 + c.r2 == pytest.approx(total, abs=1e-9)


def test_oma_inside_noma(fig2_asym):
    nb = noma_boundary(fig2_asym)
    for p in oma_boundary(fig2_asym, 200).samples:
        assert region_contains(nb, p)


def test_containment_probes(fig2_asym):
    nb = noma_boundary(fig2_asym)
    assert region_contains(nb, RatePair(0.0, 0.0))
    for p in nb.corner_points.values():
        assert region_contains(nb, p)
        assert not region_contains(nb, RatePair(1.01 * p.r1, 1.01 * p.r2))


def test_noma_face_is_sum_rate(fig2_asym):
    nb = noma_boundary(fig2_asym, 50)
    for p in nb.samples[1:-1]:
        assert p.r1 + p.r2 == pytest.approx(nb.sum_rate, abs=1e-9)


def test_boundary_is_concave():
    rng = np.random.default_rng(3)
    for _ in range(20):
        ch = make_channels(10 ** rng.uniform(-12, -7, 2), 1.0, 1e-12)
        pts = np.array([(p.r1, p.r2) for p in oma_boundary(ch, 200).samples])
        # r2 as a function of r1 is decreasing and concave
        d = np.diff(pts, axis=0)
        slopes = d[:, 1] / d[:, 0]
        assert np.all(d[:, 0] > 0) and np.all(d[:, 1] < 0)
        assert np.all(np.diff(slopes) <= 1e-9 * np.abs(slopes[1:]))


def test_two_users_required():
    ch = make_channels([1.0, 2.0, 3.0], 1.0, 1.0)
    for fn in (noma_corners, oma_boundary):
        with pytest.raises(ValueError):
            fn(ch)
    with pytest.raises(ValueError):
        oma_point(ch, 0.5)


def test_rate_pair_nonnegative():
    with pytest.raises(ValueError):
        RatePair(-1.0, 0.0)
