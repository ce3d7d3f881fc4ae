"""Jain's index and the two-user NOMA-vs-OMA fairness threshold.

For a pair with normalized weak-user gain ``alpha1`` both schemes deliver the
same sum rate, so the fairer one is the one with the smaller sum of squared
rates (SSR).  The SSR curves cross exactly once on ``(0, 0.5)``; the crossing
``beta`` has a closed form through the principal branch of the Lambert W
function, and NOMA is the fairer scheme iff ``alpha1 <= beta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .rates import UserChannels, normalized_gains

_LN2 = math.log(2.0)

#: above this value of ln(x) the Lambert W argument is handled in log domain
LOG_DOMAIN_THRESHOLD = 700.0

BISECT_LO = 1e-9
BISECT_HI = 0.5
ROOT_RESIDUAL_TOL = 1e-8


def jains_index(rates: Sequence[float]) -> float:
    """Jain's fairness index ``(sum r)^2 / (K * sum r^2)``, in ``[1/K, 1]``."""
    rates = [float(r) for r in rates]
    if not rates:
        raise ValueError("jains_index of an empty rate list")
    if any(r < 0.0 or math.isnan(r) for r in rates):
        raise ValueError(f"rates must be non-negative, got {rates}")
    top = max(rates)
    if top == 0.0:
        raise ValueError("jains_index is undefined when every rate is zero")
    # scale-free, so normalize first to keep tiny rates from underflowing
    x = [r / top for r in rates]
    s = math.fsum(x)
    return s * s / (len(x) * math.fsum(r * r for r in x))


# --------------------------------------------------------------------------
# Lambert W, principal branch, non-negative real arguments


def lambert_w0(x: float) -> float:
    """Principal-branch Lambert W for ``x >= 0``.

    Halley iteration from ``ln(1 + x)``.  Arguments so large that
    ``ln(x) > 700`` are delegated to :func:`lambert_w0_log`.
    """
    x = float(x)
    if math.isnan(x) or math.isinf(x) or x < 0.0:
        raise ValueError(f"lambert_w0 needs a finite x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    if math.log(x) > LOG_DOMAIN_THRESHOLD:
        return _w0_log_halley(math.log(x))
    w = math.log1p(x)
    for _ in range(100):
        # Halley step for w e^w - x, divided through by e^w to stay finite
        f = w - x * math.exp(-w)
        wp1 = w + 1.0
        dw = f / (wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 1e-14 * (1.0 + abs(w)):
            break
    return w


def lambert_w0_log(log_x: float) -> float:
    """Lambert W of ``exp(log_x)`` without forming ``exp(log_x)``.

    Needed when the argument itself would overflow a double.
    """
    log_x = float(log_x)
    if math.isnan(log_x) or log_x == math.inf:
        raise ValueError(f"lambert_w0_log needs a finite log argument, got {log_x}")
    if log_x > LOG_DOMAIN_THRESHOLD:
        return _w0_log_halley(log_x)
    return lambert_w0(math.exp(log_x))


def _w0_log_halley(log_x: float) -> float:
    # Solve h(w) = w + ln(w) - ln(x) = 0, valid for w > 0 (x > 0 not tiny).
    l1 = log_x
    l2 = math.log(l1)
    w = l1 - l2 + l2 / l1
    for _ in range(100):
        h = w + math.log(w) - log_x
        d1 = 1.0 + 1.0 / w
        d2 = -1.0 / (w * w)
        dw = h / (d1 - h * d2 / (2.0 * d1))
        w -= dw
        if abs(dw) <= 1e-15 * w:
            break
    return w


# --------------------------------------------------------------------------
# Sum of squared rates of a two-user pair (gamma-dependent, alpha1 on [0, .5])


def _check_pair_args(alpha1: float, gamma: float) -> None:
    if not 0.0 <= alpha1 <= 0.5:
        raise ValueError(f"alpha1 must lie in [0, 0.5], got {alpha1}")
    if not (gamma > 0.0 and math.isfinite(gamma)):
        raise ValueError(f"gamma must be positive and finite, got {gamma}")


def ssr_oma(alpha1: float, gamma: float) -> float:
    _check_pair_args(alpha1, gamma)
    total = math.log1p(gamma) / _LN2
    return total * total * (1.0 + 2.0 * alpha1 * alpha1 - 2.0 * alpha1)


def ssr_noma(alpha1: float, gamma: float) -> float:
    _check_pair_args(alpha1, gamma)
    total = math.log1p(gamma) / _LN2
    weak = math.log1p(gamma * alpha1) / _LN2
    return total * total + 2.0 * weak * weak - 2.0 * total * weak


def ssr_noma_minimizer(gamma: float) -> float:
    """``alpha1`` at which the NOMA SSR is smallest, ``(sqrt(1+gamma)-1)/gamma``."""
    # rationalized to avoid cancellation for small gamma
    return 1.0 / (math.sqrt(1.0 + gamma) + 1.0)


# --------------------------------------------------------------------------
# Fairness threshold


def beta_closed_form(gamma: float) -> float:
    """Closed-form SSR crossing point, natural logs throughout.

    The Lambert W argument ``(1+G)^(1+1/G) ln(1+G) / G`` is formed in log
    domain: ``ln(1+G)/G + log1p(1/G) + ln(ln(1+G))``.
    """
    if not (gamma > 0.0 and math.isfinite(gamma)):
        raise ValueError(f"gamma must be positive and finite, got {gamma}")
    ln1g = math.log1p(gamma)
    log_arg = ln1g / gamma + math.log1p(1.0 / gamma) + math.log(ln1g)
    return lambert_w0_log(log_arg) / ln1g - 1.0 / gamma


def ssr_gap_sign(alpha1: float, gamma: float) -> float:
    """Value with the sign of ``ssr_oma - ssr_noma`` on ``0 < alpha1 <= 0.5``.

    With ``y = ln(1+G a)/ln(1+G)`` the SSR difference is
    ``2 log2(1+G)^2 (y - a)(1 - a - y)`` and ``y > a`` there, so the sign is
    that of ``(1-a) ln(1+G) - ln(1+G a)``.  Unlike the raw difference this
    keeps its sign at tiny ``gamma``.
    """
    _check_pair_args(alpha1, gamma)
    return (1.0 - alpha1) * math.log1p(gamma) - math.log1p(gamma * alpha1)


def beta_bisection(gamma: float, lo: float = BISECT_LO, hi: float = BISECT_HI,
                   iterations: int = 200) -> float:
    """Crossing of the two SSR curves on ``(lo, hi)`` by plain bisection."""
    def diff(a):
        return ssr_gap_sign(a, gamma)

    f_lo = diff(lo)
    if f_lo <= 0.0 or diff(hi) >= 0.0:
        raise ArithmeticError(f"no sign change of the SSR difference on ({lo}, {hi}) for gamma={gamma}")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if diff(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def ssr_residual(beta: float, gamma: float) -> float:
    return abs(ssr_oma(beta, gamma) - ssr_noma(beta, gamma))


def beta_exact(gamma: float) -> float:
    """Fairness threshold on ``alpha1``; NOMA is fairer iff ``alpha1 <= beta``.

    Uses the closed form and falls back to bisection when the closed form
    leaves an SSR residual above ``1e-8 * log2(1+gamma)^2`` (tiny gamma,
    where ``W/ln(1+G)`` and ``1/G`` cancel).
    """
    beta = beta_closed_form(gamma)
    scale = (math.log1p(gamma) / _LN2) ** 2
    if not (0.0 < beta < 0.5) or ssr_residual(beta, gamma) > ROOT_RESIDUAL_TOL * scale:
        beta = beta_bisection(gamma)
    return beta


def beta_high_snr(gamma: float) -> float:
    """High-SNR approximation ``W(ln(1+G)) / ln(1+G)``."""
    if not (gamma > 0.0 and math.isfinite(gamma)):
        raise ValueError(f"gamma must be positive and finite, got {gamma}")
    ln1g = math.log1p(gamma)
    return lambert_w0(ln1g) / ln1g


@dataclass(frozen=True)
class FairnessDecision:
    gamma: float
    beta: float
    beta_high_snr: float
    ratio_threshold: float
    gain_ratio: float | None = None
    noma_more_fair: bool | None = None

    @property
    def scheme(self) -> str | None:
        if self.noma_more_fair is None:
            return None
        return "NOMA" if self.noma_more_fair else "OMA"


def fairness_threshold(gamma: float) -> FairnessDecision:
    """Threshold quantities for a given aggregate SNR, no verdict."""
    beta = beta_exact(gamma)
    return FairnessDecision(
        gamma=gamma,
        beta=beta,
        beta_high_snr=beta_high_snr(gamma),
        ratio_threshold=beta / (1.0 - beta),
    )


def noma_more_fair(ch: UserChannels) -> FairnessDecision:
    """Decide whether NOMA beats OMA on Jain's index for a two-user pair.

    True iff ``|h_1|^2 / |h_2|^2 <= beta / (1 - beta)``.
    """
    if ch.n_users != 2:
        raise ValueError(f"the fairness threshold is defined for two users, got {ch.n_users}")
    gamma = normalized_gains(ch).gamma
    beta = beta_exact(gamma)
    threshold = beta / (1.0 - beta)
    ratio = ch.gains[0] / ch.gains[1]
    return FairnessDecision(
        gamma=gamma,
        beta=beta,
        beta_high_snr=beta_high_snr(gamma),
        ratio_threshold=threshold,
        gain_ratio=ratio,
        noma_more_fair=ratio <= threshold,
    )
