"""Two-user uplink capacity-region boundaries for NOMA and OMA.

Rates are reported per *original* user: ``r1`` belongs to user id 0 and
``r2`` to user id 1, whichever of the two is stronger.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rates import NOMA, OMA, UserChannels, normalized_gains

_LN2 = math.log(2.0)
CONTAINMENT_TOL = 1e-9


@dataclass(frozen=True)
class RatePair:
    r1: float
    r2: float

    def __post_init__(self):
        if self.r1 < 0.0 or self.r2 < 0.0:
            raise ValueError(f"rates must be non-negative, got ({self.r1}, {self.r2})")


@dataclass(frozen=True)
class RegionBoundary:
    scheme: str
    corner_points: dict[str, RatePair]
    samples: tuple[RatePair, ...]
    single_user: tuple[float, float]
    sum_rate: float


def _check_pair(ch: UserChannels) -> None:
    if ch.n_users != 2:
        raise ValueError(f"capacity regions are built for two users, got {ch.n_users}")


def _single_user_rates(ch: UserChannels) -> tuple[float, float]:
    s = ch.to_original([math.log1p(snr) / _LN2 for snr in ch.snr])
    return s[0], s[1]


def noma_corners(ch: UserChannels) -> dict[str, RatePair]:
    """SIC corner points with both users at full power.

    ``A``: user 2 decoded first, user 1 interference-free.
    ``B``: user 1 decoded first, user 2 interference-free.
    """
    _check_pair(ch)
    s1, s2 = _single_user_rates(ch)
    total = math.log1p(normalized_gains(ch).gamma) / _LN2
    return {
        "A": RatePair(s1, max(total - s1, 0.0)),
        "B": RatePair(max(total - s2, 0.0), s2),
    }


def noma_boundary(ch: UserChannels, n_samples: int = 101) -> RegionBoundary:
    """Pentagon boundary: r2 axis, the time-sharing face between the two
    corners (``n_samples`` points), then down to the r1 axis."""
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    corners = noma_corners(ch)
    s1, s2 = _single_user_rates(ch)
    a, b = corners["A"], corners["B"]
    face = [
        RatePair(b.r1 + t * (a.r1 - b.r1), b.r2 + t * (a.r2 - b.r2))
        for t in np.linspace(0.0, 1.0, n_samples)
    ]
    samples = (RatePair(0.0, s2), *face, RatePair(s1, 0.0))
    total = math.log1p(normalized_gains(ch).gamma) / _LN2
    return RegionBoundary(NOMA, corners, samples, (s1, s2), total)


def _dof_rate(t: float, snr: float) -> float:
    # rate of a user holding fraction t of the DOF at full power: t log2(1 + snr/t)
    if t <= 0.0:
        return 0.0
    return t * math.log1p(snr / t) / _LN2


def oma_point(ch: UserChannels, t: float) -> RatePair:
    """OMA rate pair when user 1 gets DOF fraction ``t`` and user 2 ``1 - t``."""
    _check_pair(ch)
    snr1, snr2 = ch.to_original(ch.snr)
    return RatePair(_dof_rate(t, snr1), _dof_rate(1.0 - t, snr2))


def oma_boundary(ch: UserChannels, n_samples: int = 101) -> RegionBoundary:
    """OMA boundary on a uniform grid of the DOF split ``t`` in [0, 1].

    Corner points: the single-user endpoints and ``C``, the sum-rate
    optimal split ``t = alpha`` of user 1.
    """
    _check_pair(ch)
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    ctx = normalized_gains(ch)
    alpha_user1 = ch.to_original(ctx.alpha)[0]
    samples = tuple(oma_point(ch, float(t)) for t in np.linspace(0.0, 1.0, n_samples))
    corners = {
        "user2_only": samples[0],
        "C": oma_point(ch, alpha_user1),
        "user1_only": samples[-1],
    }
    total = math.log1p(ctx.gamma) / _LN2
    return RegionBoundary(OMA, corners, samples, _single_user_rates(ch), total)


def region_contains(noma: RegionBoundary, pt: RatePair, tol: float = CONTAINMENT_TOL) -> bool:
    """True if ``pt`` lies on or under the NOMA pentagon (within ``tol``)."""
    s1, s2 = noma.single_user
    return (
        -tol <= pt.r1 <= s1 + tol
        and -tol <= pt.r2 <= s2 + tol
        and pt.r1 + pt.r2 <= noma.sum_rate + tol
    )
