"""Random single-cell network drops for the uplink fairness simulations.

Users are dropped uniformly by area in an annulus around a central base
station, with urban-macro path loss ``128.1 + 37.6 log10(d_km)`` and optional
Rayleigh block fading, then get paired at random onto subcarriers.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

import numpy as np

from .rates import UserChannels, dbm_to_mw, make_channels

FADING_MODES = ("rayleigh", "none")


@dataclass(frozen=True)
class SimConfig:
    cell_radius: float = 400.0
    n_subcarriers: int = 128
    users_per_subcarrier: int = 2
    noise_dbm: float = -90.0
    p0_dbm: float = 40.0
    fading: str = "rayleigh"
    min_distance: float = 35.0
    shadowing_db: float = 0.0
    trials: int | None = None
    seed: int = 20171101

    def __post_init__(self):
        if not self.cell_radius > self.min_distance > 0.0:
            raise ValueError("need cell_radius > min_distance > 0")
        if self.n_subcarriers < 1:
            raise ValueError("n_subcarriers must be >= 1")
        if self.users_per_subcarrier != 2:
            raise ValueError("only two users per subcarrier are supported")
        if self.fading not in FADING_MODES:
            raise ValueError(f"fading must be one of {FADING_MODES}, got {self.fading!r}")
        if self.shadowing_db < 0.0:
            raise ValueError("shadowing_db must be >= 0")
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def n_users(self) -> int:
        return self.users_per_subcarrier * self.n_subcarriers

    @property
    def p0_mw(self) -> float:
        return dbm_to_mw(self.p0_dbm)

    @property
    def noise_mw(self) -> float:
        return dbm_to_mw(self.noise_dbm)

    def with_(self, **changes) -> "SimConfig":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class NetworkDrop:
    """One network realization.

    ``pairs[s]`` holds the two user ids sharing subcarrier ``s``;
    ``channels[s]`` is the matching :class:`UserChannels`, whose local ids
    0/1 refer to ``pairs[s][0]`` and ``pairs[s][1]``.
    """

    positions: np.ndarray  # (n_users, 2) metres, BS at origin
    gains: np.ndarray  # (n_users,) linear
    pairs: np.ndarray  # (n_subcarriers, 2) user ids
    channels: tuple[UserChannels, ...]


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for the work unit named by ``key``.

    The stream depends only on ``(seed, key)``, never on execution order.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key)))


def drop_users(cfg: SimConfig, rng: np.random.Generator) -> np.ndarray:
    """Uniform-by-area positions in ``min_distance <= r <= cell_radius``."""
    n = cfg.n_users
    r0, big_r = cfg.min_distance, cfg.cell_radius
    u = rng.random(n)
    r = np.sqrt(u * (big_r**2 - r0**2) + r0**2)
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def path_loss_db(d, min_distance: float = 35.0):
    """Urban-macro path loss ``128.1 + 37.6 log10(d / 1000)`` with ``d`` in metres."""
    d_arr = np.asarray(d, dtype=float)
    # tiny slack so positions rebuilt from (x, y) at exactly min_distance pass
    if np.any(d_arr < min_distance * (1.0 - 1e-12)):
        raise ValueError(f"distance below the minimum of {min_distance} m")
    pl = 128.1 + 37.6 * np.log10(d_arr / 1000.0)
    return float(pl) if np.ndim(d) == 0 else pl


def channel_gain(d, fading: str, rng: np.random.Generator | None = None,
                 min_distance: float = 35.0, shadowing_db: float = 0.0):
    """Linear channel power gain: path loss times a unit-mean fading power.

    With ``fading="rayleigh"`` the fading power is ``|z|^2`` for standard
    circular complex Gaussian ``z``.  ``shadowing_db`` adds zero-mean
    log-normal shadowing (off by default).
    """
    if fading not in FADING_MODES:
        raise ValueError(f"fading must be one of {FADING_MODES}, got {fading!r}")
    pl = np.asarray(path_loss_db(d, min_distance), dtype=float)
    if shadowing_db > 0.0:
        pl = pl + shadowing_db * rng.standard_normal(pl.shape)
    gain = 10.0 ** (-pl / 10.0)
    if fading == "rayleigh":
        z = (rng.standard_normal(pl.shape) + 1j * rng.standard_normal(pl.shape)) / math.sqrt(2.0)
        gain = gain * np.abs(z) ** 2
    return float(gain) if np.ndim(d) == 0 else gain


def random_pairing(positions: np.ndarray, gains: np.ndarray, cfg: SimConfig,
                   rng: np.random.Generator) -> NetworkDrop:
    """Shuffle the users and put consecutive pairs on subcarriers 0..N_F-1."""
    n = len(gains)
    if n % 2:
        raise ValueError(f"random pairing needs an even number of users, got {n}")
    if n != cfg.n_users:
        raise ValueError(f"expected {cfg.n_users} users, got {n}")
    pairs = rng.permutation(n).reshape(-1, 2)
    p0, noise = cfg.p0_mw, cfg.noise_mw
    channels = tuple(make_channels((gains[a], gains[b]), p0, noise) for a, b in pairs)
    return NetworkDrop(positions=positions, gains=gains, pairs=pairs, channels=channels)


def generate_drop(cfg: SimConfig, rng: np.random.Generator) -> NetworkDrop:
    positions = drop_users(cfg, rng)
    d = np.hypot(positions[:, 0], positions[:, 1])
    gains = channel_gain(d, cfg.fading, rng, cfg.min_distance, cfg.shadowing_db)
    return random_pairing(positions, gains, cfg, rng)
