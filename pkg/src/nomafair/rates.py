"""Single-subcarrier uplink rate model for NOMA (with SIC) and OMA.

All rates are in bit/s/Hz, powers in linear milliwatts.  Users inside a
:class:`UserChannels` are stored weakest first; ``order`` maps each sorted
position back to the caller's user id so that results can be reported in the
original order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

NOMA = "NOMA"
OMA = "OMA"

_LN2 = math.log(2.0)


def dbm_to_mw(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0)


def mw_to_dbm(mw: float) -> float:
    return 10.0 * math.log10(mw)


def _log2_1p(x: float) -> float:
    return math.log1p(x) / _LN2


@dataclass(frozen=True)
class UserChannels:
    """Channel power gains of the users sharing one subcarrier.

    Use :func:`make_channels` to build one from unsorted gains.
    """

    gains: tuple[float, ...]
    p0: float
    noise: float
    order: tuple[int, ...]

    def __post_init__(self):
        k = len(self.gains)
        if k == 0:
            raise ValueError("at least one user is required")
        if any(not (g > 0.0 and math.isfinite(g)) for g in self.gains):
            raise ValueError(f"channel gains must be positive and finite, got {self.gains}")
        if not (self.p0 > 0.0 and math.isfinite(self.p0)):
            raise ValueError(f"p0 must be positive, got {self.p0}")
        if not (self.noise > 0.0 and math.isfinite(self.noise)):
            raise ValueError(f"noise must be positive, got {self.noise}")
        if any(a > b for a, b in zip(self.gains, self.gains[1:])):
            raise ValueError("gains must be sorted ascending")
        if sorted(self.order) != list(range(k)):
            raise ValueError(f"order is not a permutation of 0..{k - 1}: {self.order}")

    @property
    def n_users(self) -> int:
        return len(self.gains)

    @property
    def snr(self) -> tuple[float, ...]:
        """Per-user received SNR ``p0 * |h_k|^2 / noise`` in sorted order."""
        return tuple(self.p0 * g / self.noise for g in self.gains)

    def to_original(self, values: Sequence[float]) -> tuple[float, ...]:
        """Reorder a per-user sequence from sorted positions to user ids."""
        out = [0.0] * len(values)
        for pos, uid in enumerate(self.order):
            out[uid] = values[pos]
        return tuple(out)


def make_channels(gains: Sequence[float], p0: float, noise: float) -> UserChannels:
    """Sort ``gains`` ascending (stable, so ties keep user-id order)."""
    gains = [float(g) for g in gains]
    order = tuple(sorted(range(len(gains)), key=gains.__getitem__))
    return UserChannels(
        gains=tuple(gains[i] for i in order),
        p0=float(p0),
        noise=float(noise),
        order=order,
    )


@dataclass(frozen=True)
class FairnessContext:
    """Aggregate SNR ``gamma`` plus normalized gains ``alpha`` and their
    running sums ``phi`` (``phi[0] == 0``, ``phi[-1] == 1``), sorted order."""

    gamma: float
    alpha: tuple[float, ...]
    phi: tuple[float, ...]


@dataclass(frozen=True)
class RateAllocation:
    rates: tuple[float, ...]
    scheme: str
    sum_rate: float

    def __post_init__(self):
        if self.scheme not in (NOMA, OMA):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if any(not r > 0.0 for r in self.rates):
            raise ValueError(f"rates must be positive, got {self.rates}")
        if abs(math.fsum(self.rates) - self.sum_rate) > 1e-9 * self.sum_rate:
            raise ValueError("rates do not add up to sum_rate")


def normalized_gains(ch: UserChannels) -> FairnessContext:
    total = math.fsum(ch.gains)
    alpha = tuple(g / total for g in ch.gains)
    phi = [0.0]
    acc = 0.0
    for g in ch.gains[:-1]:
        acc += g
        phi.append(acc / total)
    phi.append(1.0)
    return FairnessContext(gamma=ch.p0 * total / ch.noise, alpha=alpha, phi=tuple(phi))


def sum_rate(ctx: FairnessContext) -> float:
    """Sum rate ``log2(1 + gamma)``, shared by NOMA and optimal-DOF OMA."""
    return _log2_1p(ctx.gamma)


def g_map(x: float, gamma: float) -> float:
    """Concave NOMA mapping ``log2(1 + gamma * x)`` on ``0 <= x <= 1``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return _log2_1p(gamma * x)


def f_map(x: float, gamma: float) -> float:
    """Linear OMA mapping ``x * log2(1 + gamma)`` on ``0 <= x <= 1``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return x * _log2_1p(gamma)


def noma_rates(ch: UserChannels) -> RateAllocation:
    """Uplink NOMA rates with SIC, p_k = P0 for every user.

    The strongest user is decoded first, so user ``k`` (sorted) is only
    interfered by the weaker users ``0..k-1``.  Rates are returned in the
    original user order.
    """
    rates = []
    interference = 0.0
    for g in ch.gains:
        rates.append(_log2_1p(ch.p0 * g / (ch.p0 * interference + ch.noise)))
        interference += g
    total = _log2_1p(ch.p0 * math.fsum(ch.gains) / ch.noise)
    return RateAllocation(ch.to_original(rates), NOMA, total)


def oma_rates(ch: UserChannels) -> RateAllocation:
    """OMA rates under the sum-rate-optimal DOF split ``alpha_k``."""
    ctx = normalized_gains(ch)
    total = sum_rate(ctx)
    return RateAllocation(ch.to_original([a * total for a in ctx.alpha]), OMA, total)
