"""
Two-user rates and the fairness threshold
=========================================

Compare SIC uplink rates with the DOF-split orthogonal rates for one pair,
then see how the gain-ratio threshold moves with the total SNR.
"""
import numpy as np

from nomafair import (
    fairness_threshold,
    jains_index,
    make_channels,
    noma_more_fair,
    noma_rates,
    oma_rates,
)

# A weak and a strong user sharing one subcarrier at 20 dBm transmit power.
p0 = 10 ** (20 / 10)       # mW
noise = 10 ** (-90 / 10)   # mW
ch = make_channels([10**1.8 * 1e-9, 10**2.8 * 1e-9], p0, noise)

n, o = noma_rates(ch), oma_rates(ch)
print("NOMA rates:", np.round(n.rates, 4), "J =", round(jains_index(n.rates), 4))
print("OMA rates: ", np.round(o.rates, 4), "J =", round(jains_index(o.rates), 4))
print("both sum to", round(n.sum_rate, 6), "bit/s/Hz")

d = noma_more_fair(ch)
print(f"gain ratio {d.gain_ratio:.3f} vs threshold {d.ratio_threshold:.3f} -> {d.scheme}")

# The threshold shrinks as SNR grows: at high SNR only lopsided pairs favour NOMA.
for gamma in np.logspace(-2, 12, 8):
    t = fairness_threshold(gamma)
    print(f"Gamma={gamma:9.2e}  beta={t.beta:.5f}  high-SNR beta={t.beta_high_snr:.5f}  "
          f"ratio threshold={t.ratio_threshold:.5f}")
